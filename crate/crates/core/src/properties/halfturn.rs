use crate::algebra::{align_isometry, det3, Mat3, RigidMotion, Scalar, Vec3};
use crate::families::{CoupledPose, SkewQuad};

use super::{CertificateReport, PropertyError};

/// Basis used to express a partner foot point in the barred quad, for the
/// adjacent vertex pair `(i, j = i + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HatScheme {
    /// `P_i + xi (P_j - P_i) + eta (P_{i-1} - P_i) + zeta (P_{j+1} - P_j)`
    First,
    /// `P_i + xi (P_i - P_j) + eta (P_{j+1} - P_j) + zeta (P_{i-1} - P_i)`
    Second,
}

fn basis<S: Scalar>(q: &SkewQuad<S>, i: usize, scheme: HatScheme) -> Mat3<S> {
    let p = |k: usize| &q.p[k % 4];
    let j = i + 1;
    let (a, b, c) = match scheme {
        HatScheme::First => (p(j) - p(i), p(i + 3) - p(i), p(j + 1) - p(j)),
        HatScheme::Second => (p(i) - p(j), p(j + 1) - p(j), p(i + 3) - p(i)),
    };
    Mat3::from_cols(&a, &b, &c)
}

/// Moves `f_bar` from the barred quad to the quad by reusing its
/// coordinates in the chosen vertex basis.
pub fn hat_points<S: Scalar>(
    quad: &SkewQuad<S>,
    bar_quad: &SkewQuad<S>,
    f_bar: &Vec3<S>,
    i: usize,
    scheme: HatScheme,
) -> Result<Vec3<S>, PropertyError> {
    let i = i % 4;
    let coeffs = basis(bar_quad, i, scheme).solve(&(f_bar - &bar_quad.p[i]), 1e-12).ok_or(PropertyError::DegenerateQuad)?;
    Ok(&quad.p[i] + &basis(quad, i, scheme).mul_vec(&coeffs))
}

/// The half-turn exchanging two adjacent vertices together with the axis
/// line it turns about (in floating point, for reporting).
#[derive(Debug, Clone, PartialEq)]
pub struct HalfTurn<S> {
    pub motion: RigidMotion<S>,
    pub axis_point: Vec3<f64>,
    pub axis_dir: Vec3<f64>,
}

fn axis_of<S: Scalar>(m: &RigidMotion<S>, a: &Vec3<S>, b: &Vec3<S>) -> (Vec3<f64>, Vec3<f64>) {
    // the fixed directions of a half-turn span the columns of L + I
    let l = m.linear();
    let l = Mat3(std::array::from_fn(|i| std::array::from_fn(|j| l.0[i][j].to_f64())));
    let dir = (0..3)
        .map(|j| {
            let mut col = l.col(j);
            col.0[j] += 1.0;
            col
        })
        .fold(Vec3::zero(), |best: Vec3<f64>, c| if c.norm2() > best.norm2() { c } else { best });
    let mid = (a.to_f64() + b.to_f64()).scale(&0.5);
    (mid, dir.normalized())
}

/// Half-turn certificate for the adjacent vertices `i` and `j = i + 1`.
///
/// Four angle equalities between the loop and the partner in its own frame,
/// the equality of the angles between the two axes at each vertex, equal
/// orientation of the two vertex tetrahedra, the half-turn itself, and the
/// check that it does not carry the remaining vertices onto each other but
/// onto mirror images across the plane of the axes at `j`.
pub fn halfturn_certificate<S: Scalar>(c: &CoupledPose<S>, i: usize, tol: f64) -> (CertificateReport, Option<HalfTurn<S>>) {
    let i = i % 4;
    let j = (i + 1) % 4;
    let v = |k: usize| c.vertex(k).clone();
    let bp = |k: usize| c.bar_quad.p[k % 4].clone();
    let bf = |k: usize| c.bar_pose.axes[k % 4].f.clone();
    let (vi, vj, vp, vn) = (v(i), v(j), v(i + 3), v(j + 1));
    let (fi, fj, hi, hj) = (c.f(i).clone(), c.f(j).clone(), c.f_hat(i).clone(), c.f_hat(j).clone());

    let scale = c.quad.p.iter().chain([&fi, &fj, &hi, &hj]).map(|p| p.max_abs()).fold(1.0, f64::max);
    let s2 = scale * scale;
    let tag = format!("{}-{}", c.pose.axes[i].label, c.pose.axes[j].label);
    let mut rep = CertificateReport::new(format!("halfturn[{tag}]"));

    let g1 = (&vj - &vi).dot(&(&fi - &vi)) - (bp(i) - bp(j)).dot(&(bf(j) - bp(j)));
    let g2 = (&vp - &vi).dot(&(&fi - &vi)) - (bp(j + 1) - bp(j)).dot(&(bf(j) - bp(j)));
    let g3 = (&vi - &vj).dot(&(&fj - &vj)) - (bp(j) - bp(i)).dot(&(bf(i) - bp(i)));
    let g4 = (&vn - &vj).dot(&(&fj - &vj)) - (bp(i + 3) - bp(i)).dot(&(bf(i) - bp(i)));
    rep.zero("step1.a", &g1, s2, tol);
    rep.zero("step1.b", &g2, s2, tol);
    rep.zero("step1.c", &g3, s2, tol);
    rep.zero("step1.d", &g4, s2, tol);

    let diag = (&fi - &vi).dot(&(&hi - &vi)) - (&fj - &vj).dot(&(&hj - &vj));
    rep.zero("step2.axes_angle", &diag, s2, tol);
    let ori = det3(&(&vj - &vi), &(&fi - &vi), &(&hi - &vi)) - det3(&(&vi - &vj), &(&hj - &vj), &(&fj - &vj));
    rep.zero("step3.orientation", &ori, s2 * scale, tol);

    let gap = (&vp - &vi).dot(&(&vj - &vi)) - (&vn - &vj).dot(&(&vi - &vj));
    rep.nonzero("angle_gap", &gap, s2, tol);

    let src = [vi.clone(), vj.clone(), fi.clone(), hi.clone()];
    let dst = [vj.clone(), vi.clone(), hj.clone(), fj.clone()];
    let Some(rho) = align_isometry(&src, &dst, 1e-12) else {
        rep.push("rho.exists", f64::NAN, tol, false);
        rep.notes.push("vertex tetrahedron is flat, the half-turn is not determined".into());
        return (rep, None);
    };

    let lin = rho.linear();
    let gram = lin.transpose().mul(&lin);
    let orth_pass = if S::EXACT { gram == Mat3::identity() } else { rho.orthogonality_defect() <= tol };
    rep.push("rho.orthogonal", rho.orthogonality_defect(), tol, orth_pass);
    // the affine fit carries rounding amplified by a thin tetrahedron
    let rho = rho.orthonormalized(&src, &dst);
    let fit = (0..4).map(|k| (rho.apply_point(&src[k]) - dst[k].clone()).to_f64().max_abs()).fold(0.0, f64::max) / scale;
    let fit_pass = if S::EXACT { (0..4).all(|k| rho.apply_point(&src[k]) == dst[k]) } else { fit <= tol };
    rep.push("rho.fit", fit, tol, fit_pass);
    let lin = rho.linear();
    rep.zero("rho.direct", &(lin.det() - S::one()), 1.0, tol);
    rep.zero("rho.trace", &(rho.trace() + S::one()), 1.0, tol);
    let twice = rho.compose(&rho);
    let inv_pass =
        if S::EXACT { twice.matrix.is_identity() } else { twice.max_abs_diff(&RigidMotion::identity()) <= 1e-12 * scale };
    rep.push("rho.involution", twice.max_abs_diff(&RigidMotion::identity()), 1e-12, inv_pass);

    let image = rho.apply_point(&vp);
    rep.nonzero("rho.misses_opposite", &image.dist2(&vn), s2, tol);
    let n = (&fj - &vj).cross(&(&hj - &vj));
    if n.is_zero() || (!S::EXACT && n.to_f64().max_abs() <= tol * s2) {
        rep.notes.push("axes at the second vertex are parallel, no mirror plane".into());
    } else {
        let k = S::from_i64(2) * (&image - &vj).dot(&n) / n.norm2();
        let mirrored = &image - &n.scale(&k);
        let diff = &mirrored - &vn;
        let value = diff.max_abs() / scale;
        let pass = if S::EXACT { diff.is_zero() } else { value <= tol };
        rep.push("rho.mirror_relation", value, tol, pass);
    }

    let (axis_point, axis_dir) = axis_of(&rho, &vi, &vj);
    (rep, Some(HalfTurn { motion: rho, axis_point, axis_dir }))
}
