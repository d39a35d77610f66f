//! Exact and floating scalars, small dense linear algebra, polynomials,
//! resultants and interpolation-complete identity testing.

mod identity;
mod linalg;
mod motion;
mod poly;
mod ratfn;
mod resultant;
mod scalar;
mod surd;
mod unipoly;

pub use identity::{blackbox_identity_zero, grid_node, poly_identity_zero};
pub use linalg::{det, det3, mat_mul, Mat3, Mat4, Vec3};
pub use motion::{align_isometry, RigidMotion};
pub use poly::{Monomial, Poly};
pub use ratfn::RatFn;
pub use resultant::{resultant_tau_bar, sylvester_resultant, Quadratic2};
pub use scalar::{
    f64_to_rational, format_rational, int, parse_rational, rat, rational_to_f64, ParseRationalError, Rational, Scalar,
};
pub use surd::Surd;
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("both leading tau_bar^2 coefficients vanish identically; the resultant is degenerate")]
    DegenerateResultant,
    #[error("degree bound {bound} for variable {var} is below the observed degree {observed}")]
    DegreeBound { var: usize, bound: u32, observed: u32 },
    #[error("identity grid hits a pole at {0:?}")]
    PoleOnGrid(Vec<String>),
}
