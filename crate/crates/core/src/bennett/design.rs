use crate::algebra::Scalar;

use super::BennettError;

/// Intrinsic parameters of a Bennett loop: half-tangents of the two twist
/// angles and the scale `k` with `d_i = k sin(alpha_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BennettDesign<S> {
    a1: S,
    a2: S,
    k: S,
}

impl<S: Scalar> BennettDesign<S> {
    /// Checks the orientation convention (`a_i > 0`), non-degenerate
    /// transmission (`a1 != a2`) and a nonnegative scale.
    pub fn validate(a1: S, a2: S, k: S) -> Result<Self, BennettError> {
        for (name, v) in [("a1", &a1), ("a2", &a2)] {
            if !v.positive() {
                return Err(BennettError::Convention { param: name, value: v.to_f64() });
            }
        }
        if a1 == a2 {
            return Err(BennettError::DegenerateTransmission);
        }
        if k.negative() || k.sign().is_none() {
            return Err(BennettError::InvalidScale(k.to_f64()));
        }
        Ok(BennettDesign { a1, a2, k })
    }

    /// Skips validation. Used for symbolic parameters, whose sign is unknown.
    pub fn unchecked(a1: S, a2: S, k: S) -> Self {
        BennettDesign { a1, a2, k }
    }

    pub fn a1(&self) -> &S {
        &self.a1
    }
    pub fn a2(&self) -> &S {
        &self.a2
    }
    pub fn k(&self) -> &S {
        &self.k
    }

    /// Same twist parameters with another scale.
    pub fn with_k(&self, k: S) -> Self {
        BennettDesign { a1: self.a1.clone(), a2: self.a2.clone(), k }
    }

    pub fn alpha1(&self) -> f64 {
        2.0 * self.a1.to_f64().atan()
    }
    pub fn alpha2(&self) -> f64 {
        2.0 * self.a2.to_f64().atan()
    }

    /// `sin(alpha)` from the half-tangent, exactly.
    pub fn sin_of(a: &S) -> S {
        S::from_i64(2) * a.clone() / (S::one() + a.square())
    }

    /// `cos(alpha)` from the half-tangent, exactly.
    pub fn cos_of(a: &S) -> S {
        (S::one() - a.square()) / (S::one() + a.square())
    }

    pub fn d1(&self) -> S {
        self.k.clone() * Self::sin_of(&self.a1)
    }
    pub fn d2(&self) -> S {
        self.k.clone() * Self::sin_of(&self.a2)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BennettDesign<T> {
        BennettDesign { a1: f(&self.a1), a2: f(&self.a2), k: f(&self.k) }
    }

    pub fn to_f64(&self) -> BennettDesign<f64> {
        self.map(|v| v.to_f64())
    }
}

/// Transmission relation `K = (a1 + a2) / (a1 - a2)` with `t12 t23 = K`.
pub fn transmission_k<S: Scalar>(d: &BennettDesign<S>) -> S {
    (d.a1.clone() + d.a2.clone()) / (d.a1.clone() - d.a2.clone())
}

/// Transmission relation for the alternative axis orientation,
/// `K = (1 - a1 a2) / (1 + a1 a2)`, i.e. `a2 -> -1/a2` in [`transmission_k`].
pub fn transmission_k_alt<S: Scalar>(d: &BennettDesign<S>) -> S {
    let p = d.a1.clone() * d.a2.clone();
    (S::one() - p.clone()) / (S::one() + p)
}

/// Which planar limit: twist angles pinned to 0 or pi.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum PlanarCase {
    /// alpha1 = pi, alpha2 = pi (anti-parallelogram)
    #[serde(rename = "1a")]
    C1a,
    /// alpha1 = pi, alpha2 = 0 (parallelogram)
    #[serde(rename = "1b")]
    C1b,
    /// alpha1 = 0, alpha2 = 0 (anti-parallelogram)
    #[serde(rename = "2a")]
    C2a,
    /// alpha1 = 0, alpha2 = pi (parallelogram)
    #[serde(rename = "2b")]
    C2b,
}

impl PlanarCase {
    pub const ALL: [PlanarCase; 4] = [PlanarCase::C1a, PlanarCase::C1b, PlanarCase::C2a, PlanarCase::C2b];

    /// `cos(alpha1), cos(alpha2)`, each +1 or -1.
    pub fn cosines(self) -> (i64, i64) {
        match self {
            PlanarCase::C1a => (-1, -1),
            PlanarCase::C1b => (-1, 1),
            PlanarCase::C2a => (1, 1),
            PlanarCase::C2b => (1, -1),
        }
    }

    pub fn is_anti_parallelogram(self) -> bool {
        matches!(self, PlanarCase::C1a | PlanarCase::C2a)
    }

    /// The case with two opposite axes reversed.
    pub fn partner(self) -> PlanarCase {
        match self {
            PlanarCase::C1a => PlanarCase::C2a,
            PlanarCase::C2a => PlanarCase::C1a,
            PlanarCase::C1b => PlanarCase::C2b,
            PlanarCase::C2b => PlanarCase::C1b,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PlanarCase::C1a => "1a",
            PlanarCase::C1b => "1b",
            PlanarCase::C2a => "2a",
            PlanarCase::C2b => "2b",
        }
    }
}

impl std::str::FromStr for PlanarCase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1a" => Ok(PlanarCase::C1a),
            "1b" => Ok(PlanarCase::C1b),
            "2a" => Ok(PlanarCase::C2a),
            "2b" => Ok(PlanarCase::C2b),
            _ => Err(format!("unknown planar case {s:?}, expected 1a, 1b, 2a or 2b")),
        }
    }
}

/// Planar 4R loop with parallel axes: link lengths and the case.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarDesign<S> {
    d1: S,
    d2: S,
    case: PlanarCase,
}

impl<S: Scalar> PlanarDesign<S> {
    pub fn validate(d1: S, d2: S, case: PlanarCase) -> Result<Self, BennettError> {
        for (name, v) in [("d1", &d1), ("d2", &d2)] {
            if !v.positive() {
                return Err(BennettError::Convention { param: name, value: v.to_f64() });
            }
        }
        if case.is_anti_parallelogram() && d1 == d2 {
            return Err(BennettError::PlanarPole(case.label()));
        }
        Ok(PlanarDesign { d1, d2, case })
    }

    pub fn unchecked(d1: S, d2: S, case: PlanarCase) -> Self {
        PlanarDesign { d1, d2, case }
    }

    pub fn d1(&self) -> &S {
        &self.d1
    }
    pub fn d2(&self) -> &S {
        &self.d2
    }
    pub fn case(&self) -> PlanarCase {
        self.case
    }

    pub fn with_case(&self, case: PlanarCase) -> Self {
        PlanarDesign { d1: self.d1.clone(), d2: self.d2.clone(), case }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PlanarDesign<T> {
        PlanarDesign { d1: f(&self.d1), d2: f(&self.d2), case: self.case }
    }
}

/// Limit of the transmission relation for each planar case.
pub fn planar_k<S: Scalar>(pd: &PlanarDesign<S>) -> Result<S, BennettError> {
    let (d1, d2) = (pd.d1.clone(), pd.d2.clone());
    match pd.case {
        PlanarCase::C1a | PlanarCase::C2a if d1 == d2 => Err(BennettError::PlanarPole(pd.case.label())),
        PlanarCase::C1a => Ok((d1.clone() + d2.clone()) / (d2 - d1)),
        PlanarCase::C2a => Ok((d1.clone() + d2.clone()) / (d1 - d2)),
        PlanarCase::C1b => Ok(S::one()),
        PlanarCase::C2b => Ok(-S::one()),
    }
}

/// Either kind of loop, as consumed by the pose constructors.
#[derive(Debug, Clone, PartialEq)]
pub enum Design<S> {
    Spatial(BennettDesign<S>),
    Planar(PlanarDesign<S>),
}

impl<S: Scalar> Design<S> {
    pub fn transmission(&self) -> Result<S, BennettError> {
        match self {
            Design::Spatial(d) => Ok(transmission_k(d)),
            Design::Planar(p) => planar_k(p),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Design<T> {
        match self {
            Design::Spatial(d) => Design::Spatial(d.map(f)),
            Design::Planar(p) => Design::Planar(p.map(f)),
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(self, Design::Planar(_))
    }
}

impl<S: Scalar> From<BennettDesign<S>> for Design<S> {
    fn from(d: BennettDesign<S>) -> Self {
        Design::Spatial(d)
    }
}

impl<S: Scalar> From<PlanarDesign<S>> for Design<S> {
    fn from(d: PlanarDesign<S>) -> Self {
        Design::Planar(d)
    }
}
