//! Flexible couplings of two Bennett loops: the line-symmetric families A
//! and B, the non-symmetric family C, the companion parameter, the coupling
//! isometry and the necessary-condition oracle.

mod coupled;
mod necessary;
mod nonsym;
mod symmetric;

use std::fmt;

use crate::algebra::{AlgebraError, Scalar, Vec3};
use crate::bennett::{BennettError, Pose};

pub use crate::algebra::RigidMotion;
pub use coupled::{align_quads, extract_6r_loops, CoupledPose, Joint, JointKind, Orientation};
pub use necessary::{diagonal_forms, necessary_conditions, NecessaryReport};
pub use nonsym::{coupling_quartic, family_c, solve_bar_tau, CouplingQuartic};
pub use symmetric::{
    detect_trivial, family_a, family_a_design, family_a_from_parts, family_a_squares, family_b, halfturn_partner, line_symmetric,
};

/// Which family a coupling belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    B,
    C,
    /// `B` mapped onto itself by its own symmetry line.
    #[serde(rename = "trivial")]
    TrivialLineSym,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::TrivialLineSym => "trivial",
        })
    }
}

/// Sign choice for the companion parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Neg,
    Pos,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Neg, Branch::Pos];

    pub fn sign(self) -> i64 {
        match self {
            Branch::Neg => -1,
            Branch::Pos => 1,
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "neg" | "-" | "-1" => Ok(Branch::Neg),
            "pos" | "+" | "+1" | "1" => Ok(Branch::Pos),
            _ => Err(format!("unknown branch {s:?}, expected neg or pos")),
        }
    }
}

/// Signed offsets of the quad vertices along the four axes.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MuSet<S> {
    pub mu14: S,
    pub mu12: S,
    pub mu23: S,
    pub mu34: S,
}

impl<S: Scalar> MuSet<S> {
    pub fn new(mu14: S, mu12: S, mu23: S, mu34: S) -> Self {
        MuSet { mu14, mu12, mu23, mu34 }
    }

    /// Values in axis order 14, 12, 23, 34.
    pub fn as_array(&self) -> [S; 4] {
        [self.mu14.clone(), self.mu12.clone(), self.mu23.clone(), self.mu34.clone()]
    }

    pub fn from_array([mu14, mu12, mu23, mu34]: [S; 4]) -> Self {
        MuSet { mu14, mu12, mu23, mu34 }
    }

    pub fn is_zero(&self) -> bool {
        self.as_array().iter().all(|m| m.is_zero())
    }

    /// Offsets seen from the loop relabeled by two steps (14 <-> 23, 12 <-> 34).
    pub fn shifted(&self) -> Self {
        MuSet::new(self.mu23.clone(), self.mu34.clone(), self.mu14.clone(), self.mu12.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MuSet<T> {
        MuSet::new(f(&self.mu14), f(&self.mu12), f(&self.mu23), f(&self.mu34))
    }
}

/// Vertex quadrilateral `P14 P12 P23 P34`, stored in axis order.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewQuad<S> {
    pub p: [Vec3<S>; 4],
}

impl<S: Scalar> SkewQuad<S> {
    pub fn new(p: [Vec3<S>; 4]) -> Self {
        SkewQuad { p }
    }

    /// Squared length of side `i` (from vertex `i` to `i + 1`).
    pub fn side2(&self, i: usize) -> S {
        self.p[i % 4].dist2(&self.p[(i + 1) % 4])
    }

    /// Squared diagonals `P14 P23` and `P12 P34`.
    pub fn diag2(&self) -> [S; 2] {
        [self.p[0].dist2(&self.p[2]), self.p[1].dist2(&self.p[3])]
    }

    /// All six squared distances: four sides, then the two diagonals.
    pub fn distances2(&self) -> [S; 6] {
        let [d0, d1] = self.diag2();
        [self.side2(0), self.side2(1), self.side2(2), self.side2(3), d0, d1]
    }

    /// Signed volume form `det(P12 - P14, P23 - P14, P34 - P14)`.
    pub fn orientation_det(&self) -> S {
        let o = &self.p[0];
        crate::algebra::det3(&(&self.p[1] - o), &(&self.p[2] - o), &(&self.p[3] - o))
    }

    pub fn to_f64(&self) -> SkewQuad<f64> {
        SkewQuad { p: std::array::from_fn(|i| self.p[i].to_f64()) }
    }
}

/// `P_ij = F_ij + mu_ij r_ij` on each axis.
pub fn points_on_axes<S: Scalar>(pose: &Pose<S>, mu: &MuSet<S>) -> SkewQuad<S> {
    let m = mu.as_array();
    SkewQuad { p: std::array::from_fn(|i| pose.axes[i].at(&m[i])) }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    #[error(transparent)]
    Bennett(#[from] BennettError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the squared half-tangent {which} = {value} is not positive, no real family A member")]
    NoRealFamily { which: &'static str, value: f64 },
    #[error("offsets lie on an excluded branch ({0}); solve with family B or detect the trivial case instead")]
    ExcludedBranch(&'static str),
    #[error("{which}^2 = {value} is not a rational square; rerun in floating mode")]
    IrrationalRoot { which: &'static str, value: String },
    #[error("all offsets vanish, the quad is the trivial isogram of F-points")]
    TrivialQuad,
    #[error("quad is not a skew isogram (residual {0:e})")]
    NotIsogram(f64),
    #[error("A tau^2 + C vanishes at tau = {0}, the companion parameter is at a pole")]
    QuarticPole(f64),
    #[error("no real companion parameter at tau = {tau} (tau_bar^2 = {tau_bar_sq})")]
    NoRealCompanion { tau: f64, tau_bar_sq: f64 },
    #[error("sign s must be +1 or -1, got {0}")]
    InvalidSign(i64),
    #[error("quads are not isometric (distance mismatch {0:e})")]
    NotIsometric(f64),
    #[error("quad vertices are collinear, no coupling isometry is determined")]
    DegenerateTetrahedron,
    #[error("the coupling forms are not of bidegree (2, 2) (check residual {0:e})")]
    DegreeAssumption(f64),
}

/// Two Bennett loops whose quads are coupled. The partner loop is described
/// by its own design and offsets; it is moved into place by the coupling
/// isometry at each pose.
#[derive(Debug, Clone, PartialEq)]
pub struct BiBennett<S> {
    pub family: Family,
    pub design: crate::bennett::Design<S>,
    pub mu: MuSet<S>,
    pub bar_design: crate::bennett::Design<S>,
    pub bar_mu: MuSet<S>,
    /// Sign choice of family C.
    pub s: Option<i64>,
}

impl<S: Scalar> BiBennett<S> {
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiBennett<T> {
        BiBennett {
            family: self.family,
            design: self.design.map(&f),
            mu: self.mu.map(&f),
            bar_design: self.bar_design.map(&f),
            bar_mu: self.bar_mu.map(&f),
            s: self.s,
        }
    }

    pub fn to_f64(&self) -> BiBennett<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.family, Family::A | Family::B | Family::TrivialLineSym)
    }
}
