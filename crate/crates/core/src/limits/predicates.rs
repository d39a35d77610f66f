use crate::algebra::{RigidMotion, Scalar, Vec3};
use crate::bennett::{vertex_indicatrix, IndicatrixClass};
use crate::families::{Branch, CoupledPose, FamilyError, SkewQuad};
use crate::properties::{isogonal_certificate, isogram_residuals, CertificateReport};

use super::{ClassLabel, LimitKind, LimitStructure};

/// Half-turn exchanging opposite vertices of a quadrilateral. Its axis joins
/// the diagonal midpoints; for a parallelogram they coincide and the axis is
/// the plane normal through the centre.
pub fn quad_halfturn<S: Scalar>(q: &[Vec3<S>; 4], tol: f64) -> Option<RigidMotion<S>> {
    let half = S::from_ratio(1, 2);
    let m1 = (&q[0] + &q[2]).scale(&half);
    let m2 = (&q[1] + &q[3]).scale(&half);
    let dir = &m2 - &m1;
    if !dir.norm2().negligible(tol * tol) {
        return Some(RigidMotion::half_turn(&m1, &dir));
    }
    let n = (&q[1] - &q[0]).cross(&(&q[2] - &q[0]));
    if n.norm2().negligible(tol * tol) {
        return None;
    }
    Some(RigidMotion::half_turn(&m1, &n))
}

fn sin_between(u: &Vec3<f64>, v: &Vec3<f64>) -> f64 {
    u.cross(v).norm() / (u.norm() * v.norm()).max(f64::MIN_POSITIVE)
}

fn reflect(p: &Vec3<f64>, origin: &Vec3<f64>, n: &Vec3<f64>) -> Vec3<f64> {
    let k = 2.0 * (p - origin).dot(n) / n.norm2();
    p - &n.scale(&k)
}

fn scale_of(c: &CoupledPose<f64>) -> f64 {
    c.quad.p.iter().chain(c.pose.f_points().iter()).map(|v| v.max_abs()).fold(1.0, f64::max)
}

fn kind_checks(r: &mut CertificateReport, c: &CoupledPose<f64>, kind: LimitKind, tol: f64) {
    let l = scale_of(c);
    match kind {
        LimitKind::PrismaticAnti | LimitKind::PrismaticPara => {
            for (name, axes) in [("prism.edges", &c.pose.axes), ("prism.hat_edges", &c.hat_axes)] {
                for i in 1..4 {
                    r.zero(format!("{name}[{i}]"), &sin_between(&axes[0].r, &axes[i].r), 1.0, tol);
                }
            }
        }
        LimitKind::Pyramidal => {
            for i in 1..4 {
                r.zero(format!("pyramid.apex[{i}]"), &(c.f(i) - c.f(0)).max_abs(), l, tol);
                r.zero(format!("pyramid.hat_apex[{i}]"), &(c.f_hat(i) - c.f_hat(0)).max_abs(), l, tol);
            }
        }
    }
}

fn coplanarity(q: &SkewQuad<f64>) -> f64 {
    let p = &q.p;
    let n = (&p[1] - &p[0]).cross(&(&p[2] - &p[0]));
    let n2 = (&p[2] - &p[1]).cross(&(&p[3] - &p[1]));
    let m = if n.norm2() >= n2.norm2() { n } else { n2 };
    (&p[3] - &p[0]).dot(&m).abs().max((&p[2] - &p[0]).dot(&m).abs()) / m.norm().max(f64::MIN_POSITIVE)
}

fn check_label(r: &mut CertificateReport, c: &CoupledPose<f64>, label: ClassLabel, tol: f64) {
    let l = scale_of(c);
    let p = &c.quad.p;
    let tag = |s: &str| format!("{label}.{s}");
    match label {
        ClassLabel::III1 => {
            let Some(rho) = quad_halfturn(p, tol) else {
                r.push(tag("halfturn"), f64::NAN, tol, false);
                return;
            };
            for i in 0..4 {
                let (own, hat) = (&c.pose.axes[i], &c.hat_axes[(i + 2) % 4]);
                let d = rho.apply_dir(&own.r);
                r.zero(tag(&format!("dir[{i}]")), &sin_between(&d, &hat.r), 1.0, tol);
                let f = rho.apply_point(&own.f);
                let off = (&f - &hat.f).cross(&hat.r).norm() / hat.r.norm();
                r.zero(tag(&format!("line[{i}]")), &off, l, tol);
            }
        }
        ClassLabel::III2ii | ClassLabel::III2i => {
            r.zero(tag("coplanar"), &coplanarity(&c.quad), l, tol);
            let [i1, i2] = isogram_residuals(&c.quad);
            r.zero(tag("isogram1"), &i1, l * l, tol);
            r.zero(tag("isogram2"), &i2, l * l, tol);
            let gap = (&(&p[0] + &p[2]) - &(&p[1] + &p[3])).max_abs();
            r.nonzero(tag("not_parallelogram"), &gap, l, tol);
            let (g0, g1) = (&p[2] - &p[0], &p[3] - &p[1]);
            r.zero(tag("diagonals_parallel"), &sin_between(&g0, &g1), 1.0, tol);
            for (name, e) in [("edges", &c.pose.axes[0].r), ("hat_edges", &c.hat_axes[0].r)] {
                r.zero(tag(&format!("symmetry_plane_parallel_{name}")), &(g0.dot(e) / (g0.norm() * e.norm())), 1.0, tol);
            }
        }
        ClassLabel::III4ii | ClassLabel::III4i => {
            r.zero(tag("coplanar"), &coplanarity(&c.quad), l, tol);
            let gap = (&(&p[0] + &p[2]) - &(&p[1] + &p[3])).max_abs();
            r.zero(tag("parallelogram"), &gap, l, tol);
        }
        ClassLabel::III3 => {
            let iso = isogonal_certificate(c, tol);
            r.push(tag("isogonal"), iso.max_abs(), tol, iso.verdict());
        }
        ClassLabel::I1 => match quad_halfturn(p, tol) {
            Some(rho) => {
                let o = rho.apply_point(c.f(0));
                r.zero(tag("apex_swap"), &(&o - c.f_hat(0)).max_abs(), l, tol);
            }
            None => r.push(tag("halfturn"), f64::NAN, tol, false),
        },
        ClassLabel::I2 => {
            let pairs = octahedron_pairs(c);
            let best = (0..3).map(|keep| plane_symmetry_residual(&pairs, keep)).fold(f64::INFINITY, f64::min);
            r.zero(tag("plane_symmetry"), &best, l, tol);
        }
        ClassLabel::I3 => {
            let classes = octahedron_classes(c, tol);
            let pair_class: Vec<_> = (0..3).map(|k| if classes[k] == classes[k + 3] { Some(classes[k]) } else { None }).collect();
            let v = pair_class.iter().filter(|x| **x == Some(IndicatrixClass::VHedral)).count();
            let a = pair_class.iter().filter(|x| **x == Some(IndicatrixClass::AntiVHedral)).count();
            let ok = v == 2 && a == 1;
            r.push(tag("vertex_types"), (v * 10 + a) as f64, 0.0, ok);
            r.notes.push(format!("I3 vertex classes (P14 P12 apex / P23 P34 apex'): {classes:?}"));
        }
    }
}

/// Opposite vertex pairs of the octahedron formed by the quad and both apexes.
fn octahedron_pairs(c: &CoupledPose<f64>) -> [[Vec3<f64>; 2]; 3] {
    let p = &c.quad.p;
    [[p[0].clone(), p[2].clone()], [p[1].clone(), p[3].clone()], [c.f(0).clone(), c.f_hat(0).clone()]]
}

/// Two pairs mirrored in a common plane that carries the pair `keep`.
fn plane_symmetry_residual(pairs: &[[Vec3<f64>; 2]; 3], keep: usize) -> f64 {
    let swapped: Vec<usize> = (0..3).filter(|&k| k != keep).collect();
    let [a, b] = &pairs[swapped[0]];
    let n = b - a;
    if n.norm() < 1e-300 {
        return f64::INFINITY;
    }
    let mid = (a + b).scale(&0.5);
    let [c0, c1] = &pairs[swapped[1]];
    let mut res = (&reflect(c0, &mid, &n) - c1).max_abs();
    let unit = n.scale(&(1.0 / n.norm()));
    for v in &pairs[keep] {
        res = res.max((v - &mid).dot(&unit).abs());
    }
    res
}

fn octahedron_classes(c: &CoupledPose<f64>, tol: f64) -> [IndicatrixClass; 6] {
    let p = &c.quad.p;
    let apex = |o: &Vec3<f64>| -> [Vec3<f64>; 4] { std::array::from_fn(|i| &p[i] - o) };
    let class = |d: &[Vec3<f64>; 4]| {
        let u: [Vec3<f64>; 4] = std::array::from_fn(|i| d[i].normalized());
        vertex_indicatrix(&u, tol).class
    };
    [
        class(&c.vertex_rays(0)),
        class(&c.vertex_rays(1)),
        class(&apex(c.f(0))),
        class(&c.vertex_rays(2)),
        class(&c.vertex_rays(3)),
        class(&apex(c.f_hat(0))),
    ]
}

/// Checks the limit shape and every class label of `s` on the coupled pose
/// at `tau` (evaluated in floating point).
pub fn verify_labels<S: Scalar>(
    s: &LimitStructure<S>,
    tau: &S,
    branch: Branch,
    tol: f64,
) -> Result<CertificateReport, FamilyError> {
    let c = s.bibennett.to_f64().couple(&tau.to_f64(), branch, tol.max(1e-9))?;
    let mut r = CertificateReport::new(format!("limit[{:?}]", s.kind));
    kind_checks(&mut r, &c, s.kind, tol);
    for &label in &s.labels {
        check_label(&mut r, &c, label, tol);
    }
    Ok(r)
}
