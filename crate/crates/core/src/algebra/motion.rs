use super::{Mat3, Mat4, Scalar, Vec3};

/// Isometry of 3-space as a homogeneous transform. May reverse orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidMotion<S> {
    pub matrix: Mat4<S>,
}

impl<S: Scalar> RigidMotion<S> {
    pub fn identity() -> Self {
        RigidMotion { matrix: Mat4::identity() }
    }

    pub fn new(rot: &Mat3<S>, trans: &Vec3<S>) -> Self {
        RigidMotion { matrix: Mat4::from_rotation_translation(rot, trans) }
    }

    /// Half-turn about the line through `p` with direction `u`:
    /// `x -> 2p + 2 <u, x - p> u / <u, u> - x`.
    pub fn half_turn(p: &Vec3<S>, u: &Vec3<S>) -> Self {
        let uu = u.norm2();
        let two = S::from_i64(2);
        let lin = Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let outer = two.clone() * u.0[i].clone() * u.0[j].clone() / uu.clone();
                if i == j {
                    outer - S::one()
                } else {
                    outer
                }
            })
        }));
        let t = p - &lin.mul_vec(p);
        RigidMotion::new(&lin, &t)
    }

    pub fn linear(&self) -> Mat3<S> {
        self.matrix.rotation()
    }

    pub fn translation(&self) -> Vec3<S> {
        self.matrix.translation()
    }

    pub fn apply_point(&self, p: &Vec3<S>) -> Vec3<S> {
        self.matrix.apply_point(p)
    }

    pub fn apply_dir(&self, v: &Vec3<S>) -> Vec3<S> {
        self.matrix.apply_dir(v)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        RigidMotion { matrix: self.matrix.mul(&other.matrix) }
    }

    /// Inverse using the transpose of the linear part.
    pub fn inverse(&self) -> Self {
        let lt = self.linear().transpose();
        let t = -lt.mul_vec(&self.translation());
        RigidMotion::new(&lt, &t)
    }

    /// Sign of the determinant of the linear part.
    pub fn preserves_orientation(&self) -> bool {
        self.linear().det().positive()
    }

    /// Max deviation of `L^T L` from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        self.linear().transpose().mul(&self.linear()).max_abs_diff(&Mat3::identity())
    }

    pub fn trace(&self) -> S {
        let l = self.linear();
        l.0[0][0].clone() + l.0[1][1].clone() + l.0[2][2].clone()
    }

    pub fn to_f64(&self) -> RigidMotion<f64> {
        RigidMotion { matrix: self.matrix.to_f64() }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.matrix.max_abs_diff(&o.matrix)
    }

    /// Replaces the linear part by the nearest orthogonal matrix (polar
    /// iteration `R <- (R + R^-T) / 2`) and refits the translation to the
    /// centroids of `src` and `dst`. Meant for floating-point fits; exact
    /// motions are returned unchanged.
    pub fn orthonormalized(&self, src: &[Vec3<S>; 4], dst: &[Vec3<S>; 4]) -> Self {
        if S::EXACT {
            return self.clone();
        }
        let half = S::one() / S::from_i64(2);
        let mut r = self.linear();
        for _ in 0..30 {
            let Some(inv) = r.inverse(0.0) else { return self.clone() };
            let it = inv.transpose();
            let next =
                Mat3(std::array::from_fn(|i| std::array::from_fn(|j| (r.0[i][j].clone() + it.0[i][j].clone()) * half.clone())));
            let step = next.max_abs_diff(&r);
            r = next;
            if step <= 1e-16 {
                break;
            }
        }
        let quarter = S::one() / S::from_i64(4);
        let centroid = |pts: &[Vec3<S>; 4]| (&(&pts[0] + &pts[1]) + &(&pts[2] + &pts[3])).scale(&quarter);
        let t = &centroid(dst) - &r.mul_vec(&centroid(src));
        RigidMotion::new(&r, &t)
    }
}

/// The affine map sending four points to four points,
/// `L = [f1 f2 f3] [e1 e2 e3]^-1` with `e_i = src_i - src_0` and likewise `f_i`.
///
/// When the two tetrahedra are congruent this is the unique isometry between
/// them, of either orientation. Callers check [`RigidMotion::orthogonality_defect`].
/// Returns `None` when the source points are coplanar.
pub fn align_isometry<S: Scalar>(src: &[Vec3<S>; 4], dst: &[Vec3<S>; 4], tol: f64) -> Option<RigidMotion<S>> {
    let e = Mat3::from_cols(&(&src[1] - &src[0]), &(&src[2] - &src[0]), &(&src[3] - &src[0]));
    let f = Mat3::from_cols(&(&dst[1] - &dst[0]), &(&dst[2] - &dst[0]), &(&dst[3] - &dst[0]));
    let l = f.mul(&e.inverse(tol)?);
    let t = &dst[0] - &l.mul_vec(&src[0]);
    Some(RigidMotion::new(&l, &t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Rational};

    fn v(x: i64, y: i64, z: i64) -> Vec3<Rational> {
        Vec3::new(rat(x, 1), rat(y, 1), rat(z, 1))
    }

    #[test]
    fn half_turn_is_an_involution() {
        let h = RigidMotion::half_turn(&v(1, 2, 3), &v(1, -1, 2));
        assert!(h.compose(&h).matrix.is_identity());
        assert!(h.preserves_orientation());
        assert_eq!(h.trace(), rat(-1, 1));
        assert_eq!(h.apply_point(&v(1, 2, 3)), v(1, 2, 3));
        assert_eq!(h.apply_point(&v(2, 1, 5)), v(2, 1, 5));
    }

    #[test]
    fn orthonormalizing_removes_fit_noise() {
        let h = RigidMotion::half_turn(&Vec3::new(0.3, -1.0, 2.0), &Vec3::new(1.0, 2.0, -0.5));
        let src = [Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 0.0, 1e-4)];
        let dst = src.clone().map(|p| h.apply_point(&p));
        let mut noisy = align_isometry(&src, &dst, 0.0).unwrap();
        noisy.matrix.0[0][1] += 1e-9;
        let fixed = noisy.orthonormalized(&src, &dst);
        assert!(fixed.orthogonality_defect() < 1e-15);
        assert!(fixed.max_abs_diff(&h) < 1e-9);
        let exact = RigidMotion::half_turn(&v(1, 2, 3), &v(1, -1, 2));
        let pts = std::array::from_fn(|i| v(i as i64, 0, 0));
        assert_eq!(exact.orthonormalized(&pts, &pts), exact);
    }

    #[test]
    fn align_recovers_reflections() {
        let refl = RigidMotion::new(
            &Mat3([[rat(-1, 1), rat(0, 1), rat(0, 1)], [rat(0, 1), rat(1, 1), rat(0, 1)], [rat(0, 1), rat(0, 1), rat(1, 1)]]),
            &v(1, 0, 0),
        );
        let src = [v(0, 0, 0), v(1, 2, 0), v(0, 1, 3), v(2, -1, 1)];
        let dst = src.clone().map(|p| refl.apply_point(&p));
        let m = align_isometry(&src, &dst, 0.0).unwrap();
        assert_eq!(m, refl);
        assert!(!m.preserves_orientation());
        assert_eq!(m.inverse().compose(&m), RigidMotion::identity());
    }
}
