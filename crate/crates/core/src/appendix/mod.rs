//! Exact verification that no bi-Bennett can be plane-symmetric: the four
//! vertices cannot stay coplanar over the whole motion.
//!
//! The coplanarity determinant `C(tau)` of the vertex quad (with `k = 1`)
//! is, up to a known positive denominator,
//! `(a1-a2)^2 c4 tau^4 - a1a2(a1-a2) c3 tau^3 + c2 tau^2 - a1a2(a1+a2) c1 tau + (a1+a2)^2 c0`,
//! and the case analysis shows that `c0 = .. = c4 = 0` has no admissible
//! real solution.

mod cases;

use crate::algebra::{det3, Poly, RatFn, Scalar, UniPoly, Vec3};
use crate::bennett::{pose, BennettDesign, BennettError, Design};
use crate::families::MuSet;

pub use cases::{
    case3_numerators, case4_numerators, printed_resultant, symbolic_coefficients, verify_nonexistence, NonexistenceOptions,
    SymbolicCoefficients,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AppendixError {
    #[error("a1 a2 (a1 - a2)(a1 + a2) must not vanish")]
    Structure,
    #[error(transparent)]
    Bennett(#[from] BennettError),
    #[error("the cleared determinant is not a quartic in tau (residual {0})")]
    NotQuartic(f64),
    #[error("a coefficient did not reduce to a polynomial")]
    NotPolynomial,
}

/// Coefficients of the coplanarity quartic with the structural factors
/// divided out.
#[derive(Debug, Clone, PartialEq)]
pub struct CoplanarityExpansion<S> {
    /// `c[i]` multiplies `structure[i] * tau^i`.
    pub c: [S; 5],
    /// `(a1+a2)^2, -a1a2(a1+a2), 1, -a1a2(a1-a2), (a1-a2)^2`.
    pub structure: [S; 5],
}

impl<S: Scalar> CoplanarityExpansion<S> {
    pub fn eval(&self, tau: &S) -> S {
        let mut acc = S::zero();
        for i in (0..5).rev() {
            acc = acc * tau.clone() + self.c[i].clone() * self.structure[i].clone();
        }
        acc
    }
}

pub fn structure_factors<S: Scalar>(a1: &S, a2: &S) -> [S; 5] {
    let (s, d) = (a1.clone() + a2.clone(), a1.clone() - a2.clone());
    let p = a1.clone() * a2.clone();
    [s.square(), -(p.clone() * s), S::one(), -(p * d.clone()), d.square()]
}

fn one_plus_sq<S: Scalar>(x: &S) -> S {
    S::one() + x.square()
}

/// `det [1 1 1 1; P14 P12 P23 P34]` at `tau` for `k = 1`.
pub fn coplanarity_det<S: Scalar>(a1: &S, a2: &S, mu: &MuSet<S>, tau: &S) -> Result<S, AppendixError> {
    let design = Design::Spatial(BennettDesign::unchecked(a1.clone(), a2.clone(), S::one()));
    let p = pose(&design, tau)?;
    let m = mu.as_array();
    let pts: [Vec3<S>; 4] = std::array::from_fn(|i| &p.axes[i].f + &p.axes[i].r.scale(&m[i]));
    // subtracting the first column leaves a 3x3 determinant; no division,
    // which keeps symbolic evaluation small
    Ok(det3(&(&pts[1] - &pts[0]), &(&pts[2] - &pts[0]), &(&pts[3] - &pts[0])))
}

/// The determinant times `-(1+a1^2)^2(1+a2^2)^2 ((a1-a2)^2 tau^2 + (a1+a2)^2)(1+tau^2)`,
/// a polynomial of degree four in `tau`.
pub fn cleared_det<S: Scalar>(a1: &S, a2: &S, mu: &MuSet<S>, tau: &S) -> Result<S, AppendixError> {
    let c = coplanarity_det(a1, a2, mu, tau)?;
    let d1 = (a1.clone() - a2.clone()).square() * tau.square() + (a1.clone() + a2.clone()).square();
    Ok(-(c * one_plus_sq(a1).square() * one_plus_sq(a2).square() * d1 * one_plus_sq(tau)))
}

fn nodes<S: Scalar>(n: usize) -> Vec<S> {
    (1..=n as i64).map(S::from_i64).collect()
}

/// Interpolates the cleared determinant at five `tau` nodes, confirms it on
/// a sixth and divides out the structural factors.
pub fn coplanarity_coeffs<S: Scalar>(a1: &S, a2: &S, mu: &MuSet<S>) -> Result<CoplanarityExpansion<S>, AppendixError> {
    let guard = a1.clone() * a2.clone() * (a1.clone() - a2.clone()) * (a1.clone() + a2.clone());
    if guard.is_zero() {
        return Err(AppendixError::Structure);
    }
    let xs = nodes::<S>(6);
    let ys = xs.iter().map(|t| cleared_det(a1, a2, mu, t)).collect::<Result<Vec<_>, _>>()?;
    let q = UniPoly::interpolate(&xs[..5], &ys[..5]);
    let miss = q.eval(&xs[5]) - ys[5].clone();
    if !miss.negligible(1e-9 * (1.0 + ys[5].to_f64().abs())) {
        return Err(AppendixError::NotQuartic(miss.to_f64()));
    }
    let structure = structure_factors(a1, a2);
    let c = std::array::from_fn(|i| q.coeff(i) / structure[i].clone());
    Ok(CoplanarityExpansion { c, structure })
}

/// Variable order of every symbolic polynomial in this module.
pub const VARS: [&str; 6] = ["a1", "a2", "m14", "m12", "m23", "m34"];

pub(crate) fn vars() -> Vec<Poly> {
    Poly::vars(&VARS)
}

pub(crate) fn ratfn_vars() -> Vec<RatFn> {
    RatFn::vars(&VARS)
}

/// `a1^2a2^2 m14m23 + a1^2a2^2 + a1^2 m14m23 + a2^2 m14m23 + 3a1^2 - a2^2 + m14m23 + 1`
pub fn f1<S: Scalar>(a1: &S, a2: &S, m14: &S, m23: &S) -> S {
    f_common(a1, a2, m14, m23) + S::from_i64(3) * a1.square() - a2.square()
}

/// `f1` with the roles of `a1` and `a2` exchanged in the last terms.
pub fn f2<S: Scalar>(a1: &S, a2: &S, m14: &S, m23: &S) -> S {
    f_common(a1, a2, m14, m23) + S::from_i64(3) * a2.square() - a1.square()
}

fn f_common<S: Scalar>(a1: &S, a2: &S, m14: &S, m23: &S) -> S {
    let p = m14.clone() * m23.clone();
    one_plus_sq(a1) * one_plus_sq(a2) * p + a1.square() * a2.square() + S::one()
}

/// `a1^2a2^2 + 2a2^2 + 1`
pub fn g1<S: Scalar>(a1: &S, a2: &S) -> S {
    a1.square() * a2.square() + S::from_i64(2) * a2.square() + S::one()
}

/// `a1^2a2^2 - a1^2 + 2a2^2`
pub fn g2<S: Scalar>(a1: &S, a2: &S) -> S {
    a1.square() * a2.square() - a1.square() + S::from_i64(2) * a2.square()
}

/// `a1^2a2^2 - a1^2 + 3a2^2 + 1`
pub fn g3<S: Scalar>(a1: &S, a2: &S) -> S {
    a1.square() * a2.square() - a1.square() + S::from_i64(3) * a2.square() + S::one()
}
