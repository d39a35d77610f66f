use crate::algebra::{Mat3, Scalar, Vec3};
use crate::families::CoupledPose;

use super::CertificateReport;

/// Unit directions of the four joints around vertex `i` in cyclic order:
/// previous vertex, own axis, next vertex, partner axis.
fn unit_rays<S: Scalar>(c: &CoupledPose<S>, i: usize) -> [Vec3<f64>; 4] {
    c.vertex_rays(i).map(|v| v.to_f64().normalized())
}

/// Spherical side lengths of the loop through four unit vectors.
pub fn spherical_sides(u: &[Vec3<f64>; 4]) -> [f64; 4] {
    std::array::from_fn(|k| u[k].dot(&u[(k + 1) % 4]).clamp(-1.0, 1.0).acos())
}

/// The eight relabelings of a 4-cycle.
fn dihedral() -> [[usize; 4]; 8] {
    std::array::from_fn(|m| {
        let (shift, flip) = (m % 4, m >= 4);
        std::array::from_fn(|k| if flip { (shift + 4 - k) % 4 } else { (k + shift) % 4 })
    })
}

/// Smallest misfit of a rotation sending `src[k]` to `sign * dst[perm[k]]`,
/// over the eight relabelings, with the relabeling that attains it.
fn best_rotation(src: &[Vec3<f64>; 4], dst: &[Vec3<f64>; 4], sign: f64) -> (f64, [usize; 4]) {
    let mut best = (f64::INFINITY, [0, 1, 2, 3]);
    let Some(inv) = Mat3::from_cols(&src[0], &src[1], &src[2]).inverse(1e-12) else { return best };
    for perm in dihedral() {
        let d = |k: usize| dst[perm[k]].scale(&sign);
        let l = Mat3::from_cols(&d(0), &d(1), &d(2)).mul(&inv);
        let defect = l.transpose().mul(&l).max_abs_diff(&Mat3::identity());
        let miss = (l.mul_vec(&src[3]) - d(3)).max_abs();
        let r = if l.det() > 0.0 { defect.max(miss) } else { f64::INFINITY };
        if r < best.0 {
            best = (r, perm);
        }
    }
    best
}

/// Relations between the spherical loops at the four vertices: opposite
/// vertices differ by a rotation, adjacent ones share the side lengths.
///
/// Axis orientations are a convention and reversing all four joints of a
/// loop replaces it by its antipodal image, so the opposite-vertex test
/// accepts a rotation onto either the loop or its antipode and says which.
/// Whether adjacent loops are congruent (same mode) is recorded as a note.
pub fn indicatrix_relation<S: Scalar>(c: &CoupledPose<S>, tol: f64) -> CertificateReport {
    let mut rep = CertificateReport::new("indicatrix");
    let rays: Vec<_> = (0..4).map(|i| unit_rays(c, i)).collect();
    let label = |i: usize| c.pose.axes[i].label;
    for i in 0..2 {
        let plain = best_rotation(&rays[i], &rays[i + 2], 1.0);
        let anti = best_rotation(&rays[i], &rays[i + 2], -1.0);
        let (r, perm, how) =
            if plain.0 <= anti.0 { (plain.0, plain.1, "as oriented") } else { (anti.0, anti.1, "after reversing all joints") };
        rep.push(format!("opposite[{}:{}]", label(i), label(i + 2)), r, tol, r <= tol);
        if r.is_finite() {
            rep.notes.push(format!(
                "opposite {}:{} rotate onto each other {how}, correspondence {perm:?}",
                label(i),
                label(i + 2)
            ));
        }
    }
    for i in 0..4 {
        let j = (i + 1) % 4;
        let mut a = spherical_sides(&rays[i]);
        let mut b = spherical_sides(&rays[j]);
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        let r = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        rep.push(format!("adjacent_sides[{}:{}]", label(i), label(j)), r, tol, r <= tol);
        let (congruent, _) = best_rotation(&rays[i], &rays[j], 1.0);
        let mode = if congruent <= tol { "same" } else { "different" };
        rep.notes.push(format!("adjacent {}:{} vertex loops are in {mode} modes", label(i), label(j)));
    }
    rep
}
