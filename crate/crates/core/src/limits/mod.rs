//! Prismatic (planar cross-section) and pyramidal (k = 0) limits of the
//! coupled families, labelled with the known classes of flexible biprisms
//! and bipyramids. Every label is re-derived from the geometry.

mod predicates;

use std::fmt;

use crate::algebra::Scalar;
use crate::bennett::{Design, PlanarCase, PlanarDesign};
use crate::families::{family_b, family_c, line_symmetric, BiBennett, Branch, Family, FamilyError, MuSet};
use crate::properties::CertificateReport;

pub use predicates::{quad_halfturn, verify_labels};

/// Known classes of flexible quadrilateral bipyramids (I) and biprisms (III).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum ClassLabel {
    I1,
    I2,
    I3,
    III1,
    III2i,
    III2ii,
    III3,
    III4i,
    III4ii,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    /// Cross-sections are anti-parallelograms (planar case 2a).
    PrismaticAnti,
    /// Cross-sections are parallelograms (planar case 2b).
    PrismaticPara,
    Pyramidal,
}

impl LimitKind {
    fn planar_case(self) -> Option<PlanarCase> {
        match self {
            LimitKind::PrismaticAnti => Some(PlanarCase::C2a),
            LimitKind::PrismaticPara => Some(PlanarCase::C2b),
            LimitKind::Pyramidal => None,
        }
    }
}

/// Which factor of the simplified isogram conditions a prismatic A/B limit
/// lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrismSolution {
    /// `mu14 = mu23, mu12 = mu34` for anti-parallelograms (family B);
    /// `mu14 = -mu23, mu12 = -mu34` for parallelograms (trivial).
    First,
    /// `mu14 = mu12 - mu23 + mu34` (anti) or `mu14 = mu12 + mu23 - mu34` (para).
    Second,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LimitError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{0:?} is not a prismatic limit")]
    NotPrismatic(LimitKind),
    #[error("pyramidal limits need k = 0 on a spatial design")]
    NotPyramidal,
    #[error("the family B branch needs mu12 = mu34")]
    InconsistentOffsets,
    #[error("mu14 = -mu23, mu12 = -mu34 maps the prism onto itself, which is the trivial coupling")]
    Trivial,
}

/// A limit configuration with its class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitStructure<S> {
    pub kind: LimitKind,
    pub source: Family,
    pub bibennett: BiBennett<S>,
    pub labels: Vec<ClassLabel>,
    /// For the general prismatic A/B branch: whether the extra condition for
    /// isogonal vertex loops holds. `None` elsewhere.
    pub isogonal_compatible: Option<bool>,
}

impl<S: Scalar> LimitStructure<S> {
    pub fn to_f64(&self) -> LimitStructure<f64> {
        LimitStructure {
            kind: self.kind,
            source: self.source,
            bibennett: self.bibennett.to_f64(),
            labels: self.labels.clone(),
            isogonal_compatible: self.isogonal_compatible,
        }
    }

    /// Checks every label and the limit shape on the coupled pose at `tau`.
    pub fn verify(&self, tau: &S, branch: Branch, tol: f64) -> Result<CertificateReport, FamilyError> {
        verify_labels(self, tau, branch, tol)
    }
}

/// `(d1 mu12 - d1 mu23 - d2 mu23 + d2 mu34)(d1 mu12 - d1 mu23 + d2 mu23 - d2 mu34)`
pub fn anti_isogonal_condition<S: Scalar>(d1: &S, d2: &S, mu: &MuSet<S>) -> S {
    let (m12, m23, m34) = (mu.mu12.clone(), mu.mu23.clone(), mu.mu34.clone());
    let a = d1.clone() * (m12.clone() - m23.clone());
    let b = d2.clone() * (m34 - m23);
    (a.clone() + b.clone()) * (a - b)
}

/// `(d1 mu12 + d1 mu23 + d2 mu23 - d2 mu34)(d1 mu12 + d1 mu23 - d2 mu23 + d2 mu34)`
pub fn para_isogonal_condition<S: Scalar>(d1: &S, d2: &S, mu: &MuSet<S>) -> S {
    let (m12, m23, m34) = (mu.mu12.clone(), mu.mu23.clone(), mu.mu34.clone());
    let a = d1.clone() * (m12 + m23.clone());
    let b = d2.clone() * (m23 - m34);
    (a.clone() + b.clone()) * (a - b)
}

fn planar<S: Scalar>(kind: LimitKind, d1: S, d2: S) -> Result<Design<S>, LimitError> {
    let case = kind.planar_case().ok_or(LimitError::NotPrismatic(kind))?;
    Ok(Design::Planar(PlanarDesign::validate(d1, d2, case).map_err(FamilyError::from)?))
}

/// Prismatic limit of the line-symmetric families. `mu14` is solved from
/// the chosen factor; the other offsets are given.
pub fn prismatic_limit_ab<S: Scalar>(
    kind: LimitKind,
    d1: S,
    d2: S,
    mu12: S,
    mu23: S,
    mu34: S,
    solution: PrismSolution,
    tol: f64,
) -> Result<LimitStructure<S>, LimitError> {
    let design = planar(kind, d1.clone(), d2.clone())?;
    let anti = kind == LimitKind::PrismaticAnti;
    let mut labels = vec![ClassLabel::III1];
    let mut isogonal_compatible = None;
    let mu = match (anti, solution) {
        (true, PrismSolution::First) => {
            if !(mu12.clone() - mu34.clone()).negligible(tol) {
                return Err(LimitError::InconsistentOffsets);
            }
            labels.push(ClassLabel::III2ii);
            family_b(mu23, mu34, &design)?
        }
        (false, PrismSolution::First) => return Err(LimitError::Trivial),
        (true, PrismSolution::Second) => {
            let mu = MuSet::new(mu12.clone() - mu23.clone() + mu34.clone(), mu12, mu23, mu34);
            let ok = anti_isogonal_condition(&d1, &d2, &mu).negligible(tol);
            if ok {
                labels.push(ClassLabel::III3);
            }
            isogonal_compatible = Some(ok);
            mu
        }
        (false, PrismSolution::Second) => {
            let mu = MuSet::new(mu12.clone() + mu23.clone() - mu34.clone(), mu12, mu23, mu34);
            labels.push(ClassLabel::III4ii);
            isogonal_compatible = Some(para_isogonal_condition(&d1, &d2, &mu).negligible(tol));
            mu
        }
    };
    let bb = line_symmetric(design, mu, tol)?;
    if bb.family == Family::TrivialLineSym {
        return Err(LimitError::Trivial);
    }
    let source = if solution == PrismSolution::First { Family::B } else { Family::A };
    labels.sort();
    Ok(LimitStructure { kind, source, bibennett: bb, labels, isogonal_compatible })
}

/// Prismatic limit of family C: both loops share `d1, d2`.
pub fn prismatic_limit_c<S: Scalar>(
    kind: LimitKind,
    d1: S,
    d2: S,
    mu14: S,
    mu12: S,
    s: i64,
) -> Result<LimitStructure<S>, LimitError> {
    let design = planar(kind, d1, d2)?;
    let label = if kind == LimitKind::PrismaticAnti { ClassLabel::III2ii } else { ClassLabel::III4ii };
    let bb = family_c(design, mu14, mu12, s)?;
    Ok(LimitStructure { kind, source: Family::C, bibennett: bb, labels: vec![label], isogonal_compatible: None })
}

/// Pyramidal limit of a coupling built on a `k = 0` design.
pub fn pyramidal_limit<S: Scalar>(bb: BiBennett<S>) -> Result<LimitStructure<S>, LimitError> {
    match &bb.design {
        Design::Spatial(d) if d.k().is_zero() => {}
        _ => return Err(LimitError::NotPyramidal),
    }
    let labels = match bb.family {
        Family::A => vec![ClassLabel::I1, ClassLabel::I3],
        Family::B => vec![ClassLabel::I1, ClassLabel::I2],
        Family::C => vec![ClassLabel::I2],
        Family::TrivialLineSym => return Err(LimitError::Trivial),
    };
    Ok(LimitStructure { kind: LimitKind::Pyramidal, source: bb.family, bibennett: bb, labels, isogonal_compatible: None })
}
