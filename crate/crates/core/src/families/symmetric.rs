use crate::algebra::{RigidMotion, Scalar};
use crate::bennett::{quad_symmetry_line, Axis, BennettDesign, Design, Pose, DEFAULT_TOL};

use super::{points_on_axes, BiBennett, Family, FamilyError, MuSet, SkewQuad};

fn near<S: Scalar>(a: &S, b: &S) -> bool {
    (a.clone() - b.clone()).negligible(DEFAULT_TOL)
}

/// Offsets `mu14 = -mu23`, `mu12 = -mu34`: the quad shares the symmetry line
/// of the F-points and the partner coincides with the loop itself.
pub fn detect_trivial<S: Scalar>(mu: &MuSet<S>) -> bool {
    near(&mu.mu14, &-mu.mu23.clone()) && near(&mu.mu12, &-mu.mu34.clone())
}

fn is_family_b<S: Scalar>(mu: &MuSet<S>) -> bool {
    near(&mu.mu14, &mu.mu23) && near(&mu.mu12, &mu.mu34)
}

/// Linear forms in the offsets that appear in the family A solution.
fn forms<S: Scalar>(mu: &MuSet<S>) -> [S; 4] {
    let [m14, m12, m23, m34] = mu.as_array();
    [
        m14.clone() - m12.clone() + m23.clone() - m34.clone(),
        m14.clone() - m12.clone() - m23.clone() + m34.clone(),
        m14.clone() + m12.clone() + m23.clone() + m34.clone(),
        m14 + m12 - m23 - m34,
    ]
}

/// `(a1^2, a2^2)` making the quad a skew isogram for every pose.
pub fn family_a_squares<S: Scalar>(mu: &MuSet<S>) -> Result<(S, S), FamilyError> {
    if mu.is_zero() {
        return Err(FamilyError::TrivialQuad);
    }
    if detect_trivial(mu) {
        return Err(FamilyError::ExcludedBranch("mu14 = -mu23, mu12 = -mu34 is the trivial coupling"));
    }
    if is_family_b(mu) {
        return Err(FamilyError::ExcludedBranch("mu14 = mu23, mu12 = mu34 is family B"));
    }
    let [a, b, c, d] = forms(mu);
    let z = S::zero();
    if near(&b, &z) || near(&c, &z) || near(&d, &z) {
        return Err(FamilyError::ExcludedBranch("a denominator of the half-tangent formula vanishes"));
    }
    let a1 = -(a.clone() * b.clone()) / (c.clone() * d.clone());
    let a2 = -(d * a) / (c * b);
    for (which, v) in [("a1^2", &a1), ("a2^2", &a2)] {
        if !v.positive() {
            return Err(FamilyError::NoRealFamily { which, value: v.to_f64() });
        }
    }
    Ok((a1, a2))
}

/// Positive half-tangents `(a1, a2)` of the family A loop carrying `mu`.
pub fn family_a<S: Scalar>(mu: &MuSet<S>) -> Result<(S, S), FamilyError> {
    let (q1, q2) = family_a_squares(mu)?;
    let root = |which, q: S| q.sqrt_opt().ok_or_else(|| FamilyError::IrrationalRoot { which, value: format!("{q:?}") });
    Ok((root("a1", q1)?, root("a2", q2)?))
}

/// Family A design at scale `k`. The isogram condition does not involve `k`.
pub fn family_a_design<S: Scalar>(mu: &MuSet<S>, k: S) -> Result<BennettDesign<S>, FamilyError> {
    let (a1, a2) = family_a(mu)?;
    Ok(BennettDesign::validate(a1, a2, k)?)
}

/// Rational parametrization of family A: offsets for prescribed `a1, a2`,
/// two free linear forms `c = sum mu`, `d = mu14 + mu12 - mu23 - mu34` and a
/// sign `sigma`.
pub fn family_a_from_parts<S: Scalar>(a1: &S, a2: &S, c: &S, d: &S, sigma: i64) -> MuSet<S> {
    let sg = S::from_i64(sigma.signum());
    let fa = sg.clone() * a1.clone() * a2.clone() * c.clone();
    let fb = -(sg * a1.clone() / a2.clone() * d.clone());
    let q = S::from_ratio(1, 4);
    let (c, d) = (c.clone(), d.clone());
    MuSet::new(
        (fa.clone() + fb.clone() + c.clone() + d.clone()) * q.clone(),
        (-fa.clone() - fb.clone() + c.clone() + d.clone()) * q.clone(),
        (fa.clone() - fb.clone() + c.clone() - d.clone()) * q.clone(),
        (-fa + fb + c - d) * q,
    )
}

/// Family B offsets `(mu23, mu34, mu23, mu34)`, valid for every design.
pub fn family_b<S: Scalar>(mu23: S, mu34: S, _design: &Design<S>) -> Result<MuSet<S>, FamilyError> {
    if mu23.is_zero() && mu34.is_zero() {
        return Err(FamilyError::TrivialQuad);
    }
    Ok(MuSet::new(mu23.clone(), mu34.clone(), mu23, mu34))
}

pub(crate) fn isogram_defect<S: Scalar>(q: &SkewQuad<S>) -> [S; 2] {
    [q.side2(0) - q.side2(2), q.side2(3) - q.side2(1)]
}

fn check_isogram<S: Scalar>(q: &SkewQuad<S>, tol: f64) -> Result<(), FamilyError> {
    let scale = q.p.iter().map(|p| p.max_abs()).fold(1.0, f64::max);
    let worst = isogram_defect(q).iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    let ok = if S::EXACT { isogram_defect(q).iter().all(|v| v.is_zero()) } else { worst <= tol * scale * scale };
    if ok {
        Ok(())
    } else {
        Err(FamilyError::NotIsogram(worst))
    }
}

/// Line-symmetric coupling: the partner is the half-turn image of the loop
/// about the symmetry line of its quad. The family is read off the offsets
/// and the isogram property is checked at two poses.
pub fn line_symmetric<S: Scalar>(design: Design<S>, mu: MuSet<S>, tol: f64) -> Result<BiBennett<S>, FamilyError> {
    let family = if detect_trivial(&mu) {
        Family::TrivialLineSym
    } else if is_family_b(&mu) {
        Family::B
    } else {
        Family::A
    };
    for t in [S::one(), S::from_i64(2)] {
        let pose = crate::bennett::pose(&design, &t)?;
        check_isogram(&points_on_axes(&pose, &mu), tol)?;
    }
    Ok(BiBennett { family, bar_design: design.clone(), bar_mu: mu.shifted(), design, mu, s: None })
}

/// Axes of the partner loop obtained by the half-turn about the symmetry
/// line of `quad`. Entry `i` passes through vertex `i` and is the image of
/// axis `i + 2`.
pub fn halfturn_partner<S: Scalar>(
    pose: &Pose<S>,
    quad: &SkewQuad<S>,
    tol: f64,
) -> Result<([Axis<S>; 4], RigidMotion<S>), FamilyError> {
    check_isogram(quad, tol)?;
    let rho = quad_symmetry_line(&quad.p, tol)?.half_turn();
    let axes = std::array::from_fn(|i| {
        let src = &pose.axes[(i + 2) % 4];
        Axis { label: pose.axes[i].label, f: rho.apply_point(&src.f), r: rho.apply_dir(&src.r) }
    });
    Ok((axes, rho))
}
