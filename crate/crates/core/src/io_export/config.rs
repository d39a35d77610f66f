use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{format_rational, parse_rational, Rational, Scalar};
use crate::bennett::{BennettDesign, BennettError, Design, PlanarCase, PlanarDesign, DEFAULT_TOL};
use crate::families::{family_b, family_c, line_symmetric, BiBennett, Branch, Family, FamilyError, MuSet};
use crate::limits::{
    prismatic_limit_ab, prismatic_limit_c, pyramidal_limit, LimitError, LimitKind, LimitStructure, PrismSolution,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Exact number read from `"p/q"`, a decimal string or a JSON number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Num(pub Rational);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\", a decimal string or a number")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                parse_rational(v).map(Num).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(Rational::from_i64(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(Rational::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                // shortest round-trip text, read back as an exact decimal
                parse_rational(&format!("{v:?}")).map(Num).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    A,
    B,
    C,
    #[serde(rename = "single")]
    Single,
    #[serde(rename = "prismatic_anti")]
    PrismaticAnti,
    #[serde(rename = "prismatic_para")]
    PrismaticPara,
    #[serde(rename = "pyramidal")]
    Pyramidal,
}

/// Family a limit is taken from: `AB` for the line-symmetric prisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    A,
    B,
    AB,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    #[default]
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchChoice {
    Neg,
    Pos,
    #[default]
    Both,
}

impl BranchChoice {
    pub fn branches(self) -> Vec<Branch> {
        match self {
            BranchChoice::Neg => vec![Branch::Neg],
            BranchChoice::Pos => vec![Branch::Pos],
            BranchChoice::Both => Branch::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauRange {
    pub from: Num,
    pub to: Num,
    pub steps: u32,
}

/// One structure plus the parameter values to evaluate it at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "schema_default")]
    pub schema: u32,
    pub family: FamilyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<PlanarCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu14: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu12: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu23: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu34: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<PrismSolution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taus: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_range: Option<TauRange>,
    #[serde(default)]
    pub branch: BranchChoice,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patch_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ribbon_width: Option<Num>,
}

fn schema_default() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    Schema(u32),
    #[error("family {family:?} needs the field {field:?}")]
    MissingField { family: FamilyKind, field: &'static str },
    #[error("field {field:?}: {message}")]
    Invalid { field: &'static str, message: String },
    #[error("design rejected: {0}")]
    Design(#[from] BennettError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Limit(#[from] LimitError),
}

/// Parses and validates a JSON configuration.
pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let cfg: Config = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if cfg.schema != SCHEMA_VERSION {
        return Err(ConfigError::Schema(cfg.schema));
    }
    cfg.build()?;
    cfg.tau_values()?;
    Ok(cfg)
}

/// What a configuration describes.
#[derive(Debug, Clone, PartialEq)]
pub enum Structure<S> {
    Single(Design<S>),
    Coupled(BiBennett<S>),
    Limit(LimitStructure<S>),
}

impl<S: Scalar> Structure<S> {
    pub fn to_f64(&self) -> Structure<f64> {
        match self {
            Structure::Single(d) => Structure::Single(d.map(|v| v.to_f64())),
            Structure::Coupled(b) => Structure::Coupled(b.to_f64()),
            Structure::Limit(l) => Structure::Limit(l.to_f64()),
        }
    }

    pub fn bibennett(&self) -> Option<&BiBennett<S>> {
        match self {
            Structure::Single(_) => None,
            Structure::Coupled(b) => Some(b),
            Structure::Limit(l) => Some(&l.bibennett),
        }
    }

    pub fn design(&self) -> &Design<S> {
        match self {
            Structure::Single(d) => d,
            Structure::Coupled(b) => &b.design,
            Structure::Limit(l) => &l.bibennett.design,
        }
    }
}

impl Config {
    pub fn tolerance(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }

    fn need(&self, field: &'static str, v: &Option<Num>) -> Result<Rational, ConfigError> {
        v.as_ref().map(|n| n.0.clone()).ok_or(ConfigError::MissingField { family: self.family, field })
    }

    fn spatial(&self) -> Result<Design<Rational>, ConfigError> {
        let (a1, a2) = (self.need("a1", &self.a1)?, self.need("a2", &self.a2)?);
        let k = self.k.as_ref().map(|n| n.0.clone()).unwrap_or_else(Rational::one);
        Ok(Design::Spatial(BennettDesign::validate(a1, a2, k)?))
    }

    fn planar(&self, case: PlanarCase) -> Result<Design<Rational>, ConfigError> {
        let (d1, d2) = (self.need("d1", &self.d1)?, self.need("d2", &self.d2)?);
        Ok(Design::Planar(PlanarDesign::validate(d1, d2, case)?))
    }

    /// Spatial unless planar lengths are given.
    fn any_design(&self) -> Result<Design<Rational>, ConfigError> {
        match (&self.d1, self.case) {
            (Some(_), Some(case)) => self.planar(case),
            (Some(_), None) => Err(ConfigError::MissingField { family: self.family, field: "case" }),
            _ => self.spatial(),
        }
    }

    fn sign(&self) -> Result<i64, ConfigError> {
        self.s.ok_or(ConfigError::MissingField { family: self.family, field: "s" })
    }

    fn coupled(&self, design: Design<Rational>, source: Source) -> Result<BiBennett<Rational>, ConfigError> {
        let tol = self.tolerance();
        match source {
            Source::A | Source::AB => {
                let mu = MuSet::new(
                    self.need("mu14", &self.mu14)?,
                    self.need("mu12", &self.mu12)?,
                    self.need("mu23", &self.mu23)?,
                    self.need("mu34", &self.mu34)?,
                );
                let bb = line_symmetric(design, mu, tol)?;
                if bb.family != Family::A {
                    return Err(ConfigError::Invalid {
                        field: "mu14",
                        message: format!("offsets describe {:?}, not family A", bb.family),
                    });
                }
                Ok(bb)
            }
            Source::B => {
                let mu = family_b(self.need("mu23", &self.mu23)?, self.need("mu34", &self.mu34)?, &design)?;
                Ok(line_symmetric(design, mu, tol)?)
            }
            Source::C => Ok(family_c(design, self.need("mu14", &self.mu14)?, self.need("mu12", &self.mu12)?, self.sign()?)?),
        }
    }

    /// Builds the exact structure.
    pub fn build(&self) -> Result<Structure<Rational>, ConfigError> {
        let tol = self.tolerance();
        Ok(match self.family {
            FamilyKind::Single => Structure::Single(self.any_design()?),
            FamilyKind::A => Structure::Coupled(self.coupled(self.spatial()?, Source::A)?),
            FamilyKind::B => Structure::Coupled(self.coupled(self.spatial()?, Source::B)?),
            FamilyKind::C => Structure::Coupled(self.coupled(self.any_design()?, Source::C)?),
            FamilyKind::PrismaticAnti | FamilyKind::PrismaticPara => {
                let kind =
                    if self.family == FamilyKind::PrismaticAnti { LimitKind::PrismaticAnti } else { LimitKind::PrismaticPara };
                let (d1, d2) = (self.need("d1", &self.d1)?, self.need("d2", &self.d2)?);
                match self.source.ok_or(ConfigError::MissingField { family: self.family, field: "source" })? {
                    Source::C => Structure::Limit(prismatic_limit_c(
                        kind,
                        d1,
                        d2,
                        self.need("mu14", &self.mu14)?,
                        self.need("mu12", &self.mu12)?,
                        self.sign()?,
                    )?),
                    _ => Structure::Limit(prismatic_limit_ab(
                        kind,
                        d1,
                        d2,
                        self.need("mu12", &self.mu12)?,
                        self.need("mu23", &self.mu23)?,
                        self.need("mu34", &self.mu34)?,
                        self.solution.ok_or(ConfigError::MissingField { family: self.family, field: "solution" })?,
                        tol,
                    )?),
                }
            }
            FamilyKind::Pyramidal => {
                let source = self.source.ok_or(ConfigError::MissingField { family: self.family, field: "source" })?;
                let design = self.spatial()?;
                Structure::Limit(pyramidal_limit(self.coupled(design, source)?)?)
            }
        })
    }

    /// The parameter values to evaluate at, in order.
    pub fn tau_values(&self) -> Result<Vec<Rational>, ConfigError> {
        let mut out: Vec<Rational> = Vec::new();
        if let Some(t) = &self.tau {
            out.push(t.0.clone());
        }
        if let Some(ts) = &self.taus {
            out.extend(ts.iter().map(|t| t.0.clone()));
        }
        if let Some(r) = &self.tau_range {
            if r.steps < 1 {
                return Err(ConfigError::Invalid { field: "tau_range", message: "steps must be at least 1".into() });
            }
            let n = Rational::from_i64(r.steps as i64);
            for i in 0..=r.steps {
                let w = Rational::from_i64(i as i64) / n.clone();
                out.push(r.from.0.clone() + (r.to.0.clone() - r.from.0.clone()) * w);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
