use crate::algebra::{align_isometry, Rational, RigidMotion, Scalar, Surd, Vec3};
use crate::bennett::{pose, Axis, AxisLabel, Pose};

use super::{points_on_axes, BiBennett, Branch, Family, FamilyError, MuSet, SkewQuad};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Direct,
    Reversing,
}

fn dist_mismatch<S: Scalar>(a: &SkewQuad<S>, b: &SkewQuad<S>) -> (bool, f64) {
    let (da, db) = (a.distances2(), b.distances2());
    let worst = da.iter().zip(&db).map(|(x, y)| (x.clone() - y.clone()).to_f64().abs()).fold(0.0, f64::max);
    let exact_ok = da.iter().zip(&db).all(|(x, y)| x == y);
    (exact_ok, worst)
}

/// Isometry sending `src` onto `dst` vertex by vertex.
///
/// Fails when the six distances disagree. Coplanar quads determine the map
/// only up to a reflection; then the direct one is returned.
pub fn align_quads<S: Scalar>(
    src: &SkewQuad<S>,
    dst: &SkewQuad<S>,
    tol: f64,
) -> Result<(RigidMotion<S>, Orientation), FamilyError> {
    let (exact_ok, worst) = dist_mismatch(src, dst);
    let scale = src.p.iter().chain(&dst.p).map(|p| p.max_abs()).fold(1.0, f64::max);
    let ok = if S::EXACT { exact_ok } else { worst <= tol * scale * scale };
    if !ok {
        return Err(FamilyError::NotIsometric(worst));
    }
    let m = match align_isometry(&src.p, &dst.p, tol) {
        Some(m) => m,
        None => planar_align(src, dst, tol)?,
    };
    let defect = m.orthogonality_defect();
    let orthogonal =
        if S::EXACT { m.linear().transpose().mul(&m.linear()) == crate::algebra::Mat3::identity() } else { defect <= tol.sqrt() };
    if !orthogonal {
        return Err(FamilyError::NotIsometric(defect));
    }
    let m = m.orthonormalized(&src.p, &dst.p);
    let o = if m.preserves_orientation() { Orientation::Direct } else { Orientation::Reversing };
    Ok((m, o))
}

fn planar_align<S: Scalar>(src: &SkewQuad<S>, dst: &SkewQuad<S>, tol: f64) -> Result<RigidMotion<S>, FamilyError> {
    for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        let ns = (&src.p[j] - &src.p[i]).cross(&(&src.p[k] - &src.p[i]));
        let nd = (&dst.p[j] - &dst.p[i]).cross(&(&dst.p[k] - &dst.p[i]));
        if ns.to_f64().max_abs() <= tol {
            continue;
        }
        // |ns| = |nd| for congruent triangles, so these frames are congruent too
        let s4 = [src.p[i].clone(), src.p[j].clone(), src.p[k].clone(), &src.p[i] + &ns];
        let d4 = [dst.p[i].clone(), dst.p[j].clone(), dst.p[k].clone(), &dst.p[i] + &nd];
        if let Some(m) = align_isometry(&s4, &d4, tol) {
            return Ok(m);
        }
    }
    Err(FamilyError::DegenerateTetrahedron)
}

/// A coupled configuration: the loop, the partner loop in its own frame,
/// the isometry moving the partner onto the shared quad and the moved axes.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledPose<S> {
    pub family: Family,
    pub tau: S,
    pub tau_bar: S,
    pub pose: Pose<S>,
    pub quad: SkewQuad<S>,
    pub mu: MuSet<S>,
    pub bar_pose: Pose<S>,
    pub bar_quad: SkewQuad<S>,
    pub bar_mu: MuSet<S>,
    pub delta: RigidMotion<S>,
    pub orientation: Orientation,
    /// Partner axes after the coupling isometry, entry `i` through vertex `i`.
    pub hat_axes: [Axis<S>; 4],
}

fn unit_ray<S: Scalar>(r: &Vec3<S>, mu: &S) -> Vec3<S> {
    if mu.negative() || mu.is_zero() {
        r.clone()
    } else {
        -r.clone()
    }
}

impl<S: Scalar> CoupledPose<S> {
    pub fn build(bb: &BiBennett<S>, tau: S, tau_bar: S, tol: f64) -> Result<Self, FamilyError> {
        let p = pose(&bb.design, &tau)?;
        let bp = pose(&bb.bar_design, &tau_bar)?;
        let quad = points_on_axes(&p, &bb.mu);
        let bar_quad = points_on_axes(&bp, &bb.bar_mu);
        let (delta, orientation) = align_quads(&bar_quad, &quad, tol)?;
        let hat_axes = std::array::from_fn(|i| {
            let a = &bp.axes[i];
            Axis { label: a.label, f: delta.apply_point(&a.f), r: delta.apply_dir(&a.r) }
        });
        Ok(CoupledPose {
            family: bb.family,
            tau,
            tau_bar,
            pose: p,
            quad,
            mu: bb.mu.clone(),
            bar_pose: bp,
            bar_quad,
            bar_mu: bb.bar_mu.clone(),
            delta,
            orientation,
            hat_axes,
        })
    }

    pub fn vertex(&self, i: usize) -> &Vec3<S> {
        &self.quad.p[i % 4]
    }

    pub fn f(&self, i: usize) -> &Vec3<S> {
        &self.pose.axes[i % 4].f
    }

    /// Foot point of the moved partner axis at vertex `i`.
    pub fn f_hat(&self, i: usize) -> &Vec3<S> {
        &self.hat_axes[i % 4].f
    }

    /// Unit direction at vertex `i` pointing from the vertex towards the
    /// foot point of its own axis (along the axis when the offset is zero).
    pub fn own_ray(&self, i: usize) -> Vec3<S> {
        let m = self.mu.as_array();
        unit_ray(&self.pose.axes[i % 4].r, &m[i % 4])
    }

    /// The same for the moved partner axis.
    pub fn hat_ray(&self, i: usize) -> Vec3<S> {
        let m = self.bar_mu.as_array();
        unit_ray(&self.hat_axes[i % 4].r, &m[i % 4])
    }

    /// The four rays around vertex `i` in cyclic order: towards the previous
    /// vertex, own axis, towards the next vertex, partner axis. Edge rays are
    /// not normalized.
    pub fn vertex_rays(&self, i: usize) -> [Vec3<S>; 4] {
        let v = self.vertex(i);
        [self.vertex(i + 3) - v, self.own_ray(i), self.vertex(i + 1) - v, self.hat_ray(i)]
    }

    /// Whether every partner axis lies on the own axis through the same
    /// vertex, i.e. the partner tube is the loop itself.
    pub fn coincides(&self, tol: f64) -> bool {
        (0..4).all(|i| {
            let (o, h) = (&self.pose.axes[i], &self.hat_axes[i]);
            let scale = o.r.norm2().to_f64() * h.r.norm2().to_f64();
            o.r.cross(&h.r).norm2().negligible(tol * tol * scale)
                && (&h.f - &o.f).cross(&o.r).norm2().negligible(tol * tol * o.r.norm2().to_f64())
        })
    }

    pub fn to_f64(&self) -> CoupledPose<f64> {
        CoupledPose {
            family: self.family,
            tau: self.tau.to_f64(),
            tau_bar: self.tau_bar.to_f64(),
            pose: self.pose.to_f64(),
            quad: self.quad.to_f64(),
            mu: self.mu.map(|v| v.to_f64()),
            bar_pose: self.bar_pose.to_f64(),
            bar_quad: self.bar_quad.to_f64(),
            bar_mu: self.bar_mu.map(|v| v.to_f64()),
            delta: self.delta.to_f64(),
            orientation: self.orientation,
            hat_axes: std::array::from_fn(|i| self.hat_axes[i].to_f64()),
        }
    }
}

impl<S: Scalar> BiBennett<S> {
    /// Coupled configuration at `tau` on `branch` (ignored by the symmetric
    /// families).
    pub fn couple(&self, tau: &S, branch: Branch, tol: f64) -> Result<CoupledPose<S>, FamilyError> {
        let tb = self.companion(tau, branch)?;
        CoupledPose::build(self, tau.clone(), tb, tol)
    }
}

impl BiBennett<Rational> {
    /// Exact coupled configuration over the quadratic field of the companion.
    pub fn couple_exact(&self, tau: &Rational, branch: Branch) -> Result<CoupledPose<Surd>, FamilyError> {
        let tb = self.companion_exact(tau, branch)?;
        let lifted = self.map(|v| Surd::rational(v.clone()));
        CoupledPose::build(&lifted, Surd::rational(tau.clone()), tb, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum JointKind {
    /// Axis of the first loop.
    Axis,
    /// Axis of the moved partner loop.
    HatAxis,
    /// Side of the shared quad, the hinge between two faces that meet there.
    Edge,
}

/// A revolute joint of a 6R loop, as a line.
#[derive(Debug, Clone, PartialEq)]
pub struct Joint<S> {
    pub kind: JointKind,
    /// Vertex the joint passes through (start vertex for edges).
    pub vertex: usize,
    pub label: AxisLabel,
    pub point: Vec3<S>,
    pub dir: Vec3<S>,
}

/// The four 6R loops of a coupled configuration.
///
/// Bodies are the eight faces: face `b_k` of the first tube joins axes `k`
/// and `k+1`, face `h_k` of the partner joins moved axes `k` and `k+1`, and
/// `b_k`, `h_k` hinge along quad side `k`. These faces form a cube graph;
/// its four induced hexagons are the 6R loops. Loop `m` omits `b_m` and
/// `h_{m+2}` and visits axes `m+2, m+3`, side `m+3`, moved axes `m, m+1`
/// and side `m+1`.
pub fn extract_6r_loops<S: Scalar>(c: &CoupledPose<S>) -> [[Joint<S>; 6]; 4] {
    let axis = |i: usize| {
        let a = &c.pose.axes[i % 4];
        Joint { kind: JointKind::Axis, vertex: i % 4, label: a.label, point: a.f.clone(), dir: a.r.clone() }
    };
    let hat = |i: usize| {
        let a = &c.hat_axes[i % 4];
        Joint { kind: JointKind::HatAxis, vertex: i % 4, label: a.label, point: a.f.clone(), dir: a.r.clone() }
    };
    let edge = |i: usize| Joint {
        kind: JointKind::Edge,
        vertex: i % 4,
        label: AxisLabel::ALL[i % 4],
        point: c.vertex(i).clone(),
        dir: c.vertex(i + 1) - c.vertex(i),
    };
    std::array::from_fn(|m| [axis(m + 2), axis(m + 3), edge(m + 3), hat(m), hat(m + 1), edge(m + 1)])
}
