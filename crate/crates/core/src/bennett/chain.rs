use std::fmt;

use crate::algebra::{Mat4, Scalar, Vec3};

use super::design::{planar_k, transmission_k, BennettDesign, Design, PlanarCase, PlanarDesign};
use super::BennettError;

/// Joint rotation about the x-axis by the angle with half-tangent `t`.
pub fn rot<S: Scalar>(t: &S) -> Mat4<S> {
    let den = S::one() + t.square();
    let c = (S::one() - t.square()) / den.clone();
    let s = S::from_i64(2) * t.clone() / den;
    let (z, o) = (S::zero(), S::one());
    Mat4([
        [o.clone(), z.clone(), z.clone(), z.clone()],
        [z.clone(), o, z.clone(), z.clone()],
        [z.clone(), z.clone(), c.clone(), s.clone()],
        [z.clone(), z, -s, c],
    ])
}

/// Link transform: rotation about z by the twist (`c`, `s`) and offset `d` along z.
pub fn twist_planar<S: Scalar>(c: S, s: S, d: S) -> Mat4<S> {
    let (z, o) = (S::zero(), S::one());
    Mat4([
        [o.clone(), z.clone(), z.clone(), z.clone()],
        [z.clone(), c.clone(), -s.clone(), z.clone()],
        [z.clone(), s, c, z.clone()],
        [d, z.clone(), z, o],
    ])
}

/// Link transform for twist half-tangent `a` and scale `k` (`d = k sin`).
pub fn twist<S: Scalar>(a: &S, k: &S) -> Mat4<S> {
    let s = BennettDesign::sin_of(a);
    twist_planar(BennettDesign::cos_of(a), s.clone(), k.clone() * s)
}

fn chain_from<S: Scalar>(t1: &Mat4<S>, t2: &Mat4<S>, big_k: &S, tau: &S) -> Result<[Mat4<S>; 3], BennettError> {
    if tau.is_zero() {
        return Err(BennettError::TauPole);
    }
    let t12 = big_k.clone() / tau.clone();
    let m12 = t1.clone();
    let m23 = m12.mul(&rot(&t12)).mul(t2);
    let m34 = m23.mul(&rot(tau)).mul(t1);
    Ok([m12, m23, m34])
}

fn closure_from<S: Scalar>(t1: &Mat4<S>, t2: &Mat4<S>, big_k: &S, tau: &S) -> Result<Mat4<S>, BennettError> {
    if tau.is_zero() {
        return Err(BennettError::TauPole);
    }
    let t12 = big_k.clone() / tau.clone();
    Ok(t1.mul(&rot(&t12)).mul(t2).mul(&rot(tau)).mul(t1).mul(&rot(&-t12)).mul(t2).mul(&rot(&-tau.clone())))
}

fn spatial_twists<S: Scalar>(d: &BennettDesign<S>) -> (Mat4<S>, Mat4<S>) {
    (twist(d.a1(), d.k()), twist(d.a2(), d.k()))
}

fn planar_twists<S: Scalar>(pd: &PlanarDesign<S>) -> (Mat4<S>, Mat4<S>) {
    let (c1, c2) = pd.case().cosines();
    (twist_planar(S::from_i64(c1), S::zero(), pd.d1().clone()), twist_planar(S::from_i64(c2), S::zero(), pd.d2().clone()))
}

/// The three chain matrices `M12, M23, M34` at parameter `tau`.
pub fn dh_chain<S: Scalar>(d: &BennettDesign<S>, tau: &S) -> Result<[Mat4<S>; 3], BennettError> {
    let (t1, t2) = spatial_twists(d);
    chain_from(&t1, &t2, &transmission_k(d), tau)
}

/// Chain of a planar loop, built from its own pinned twists.
pub fn planar_chain<S: Scalar>(pd: &PlanarDesign<S>, tau: &S) -> Result<[Mat4<S>; 3], BennettError> {
    let (t1, t2) = planar_twists(pd);
    chain_from(&t1, &t2, &planar_k(pd)?, tau)
}

/// Full eight-factor loop product. It is the identity for every valid design.
pub fn loop_closure_product<S: Scalar>(design: &Design<S>, tau: &S) -> Result<Mat4<S>, BennettError> {
    let (t1, t2) = match design {
        Design::Spatial(d) => spatial_twists(d),
        Design::Planar(p) => planar_twists(p),
    };
    closure_from(&t1, &t2, &design.transmission()?, tau)
}

/// Max-abs entry of the loop product minus the identity.
pub fn loop_closure_residual<S: Scalar>(design: &Design<S>, tau: &S) -> Result<f64, BennettError> {
    let m = loop_closure_product(design, tau)?;
    if S::EXACT && m.is_identity() {
        return Ok(0.0);
    }
    Ok(m.max_abs_diff(&Mat4::identity()))
}

/// Joint axes in loop order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum AxisLabel {
    A14,
    A12,
    A23,
    A34,
}

impl AxisLabel {
    pub const ALL: [AxisLabel; 4] = [AxisLabel::A14, AxisLabel::A12, AxisLabel::A23, AxisLabel::A34];

    pub fn indices(self) -> (u8, u8) {
        match self {
            AxisLabel::A14 => (1, 4),
            AxisLabel::A12 => (1, 2),
            AxisLabel::A23 => (2, 3),
            AxisLabel::A34 => (3, 4),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for AxisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.indices();
        write!(f, "{i}{j}")
    }
}

/// An oriented joint axis: anchor point `f` on the common normal and unit direction `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis<S> {
    pub label: AxisLabel,
    pub f: Vec3<S>,
    pub r: Vec3<S>,
}

impl<S: Scalar> Axis<S> {
    pub fn to_f64(&self) -> Axis<f64> {
        Axis { label: self.label, f: self.f.to_f64(), r: self.r.to_f64() }
    }

    /// The point `f + t r`.
    pub fn at(&self, t: &S) -> Vec3<S> {
        &self.f + &self.r.scale(t)
    }
}

/// Configured loop. Axes are ordered 14, 12, 23, 34 with axis 14 at the
/// origin pointing along +x.
#[derive(Debug, Clone, PartialEq)]
pub struct Pose<S> {
    pub design: Design<S>,
    pub tau: S,
    pub axes: [Axis<S>; 4],
}

impl<S: Scalar> Pose<S> {
    pub fn axis(&self, l: AxisLabel) -> &Axis<S> {
        &self.axes[l.index()]
    }

    pub fn f_points(&self) -> [Vec3<S>; 4] {
        std::array::from_fn(|i| self.axes[i].f.clone())
    }

    pub fn directions(&self) -> [Vec3<S>; 4] {
        std::array::from_fn(|i| self.axes[i].r.clone())
    }

    pub fn to_f64(&self) -> Pose<f64> {
        Pose {
            design: self.design.map(|v| v.to_f64()),
            tau: self.tau.to_f64(),
            axes: std::array::from_fn(|i| self.axes[i].to_f64()),
        }
    }
}

fn pose_from_chain<S: Scalar>(design: Design<S>, tau: &S, ms: &[Mat4<S>; 3]) -> Pose<S> {
    let base = Axis { label: AxisLabel::A14, f: Vec3::zero(), r: Vec3::unit_x() };
    let rest: [Axis<S>; 3] = std::array::from_fn(|i| Axis {
        label: AxisLabel::ALL[i + 1],
        f: ms[i].translation(),
        r: ms[i].apply_dir(&Vec3::unit_x()),
    });
    let [a, b, c] = rest;
    Pose { design, tau: tau.clone(), axes: [base, a, b, c] }
}

/// Axis frame of a spatial loop at `tau`.
pub fn frame<S: Scalar>(d: &BennettDesign<S>, tau: &S) -> Result<Pose<S>, BennettError> {
    let ms = dh_chain(d, tau)?;
    Ok(pose_from_chain(Design::Spatial(d.clone()), tau, &ms))
}

/// Axis frame of a planar loop. Cases 1a and 1b reuse the chain of 2a and 2b
/// and reverse the axes 12 and 34.
pub fn planar_frame<S: Scalar>(pd: &PlanarDesign<S>, tau: &S) -> Result<Pose<S>, BennettError> {
    let base_case = match pd.case() {
        PlanarCase::C1a => PlanarCase::C2a,
        PlanarCase::C1b => PlanarCase::C2b,
        c => c,
    };
    let base = pd.with_case(base_case);
    let ms = planar_chain(&base, tau)?;
    let mut p = pose_from_chain(Design::Planar(pd.clone()), tau, &ms);
    if base_case != pd.case() {
        for l in [AxisLabel::A12, AxisLabel::A34] {
            let r = p.axes[l.index()].r.clone();
            p.axes[l.index()].r = -r;
        }
    }
    Ok(p)
}

/// Dispatches to [`frame`] or [`planar_frame`].
pub fn pose<S: Scalar>(design: &Design<S>, tau: &S) -> Result<Pose<S>, BennettError> {
    match design {
        Design::Spatial(d) => frame(d, tau),
        Design::Planar(p) => planar_frame(p, tau),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum IndicatrixClass {
    /// Opposite arcs equal.
    #[serde(rename = "V-hedral")]
    VHedral,
    /// Opposite arcs supplementary.
    #[serde(rename = "anti-V-hedral")]
    AntiVHedral,
    #[serde(rename = "other")]
    Other,
}

impl fmt::Display for IndicatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndicatrixClass::VHedral => "V-hedral",
            IndicatrixClass::AntiVHedral => "anti-V-hedral",
            IndicatrixClass::Other => "other",
        })
    }
}

/// Spherical four-gon given by four unit directions in cyclic order.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatrixReport<S> {
    /// Cosines of the four sides; side `i` joins directions `i` and `i + 1`.
    pub cosines: [S; 4],
    /// Side lengths in radians.
    pub arcs: [f64; 4],
    pub class: IndicatrixClass,
}

fn classify<S: Scalar>(cos: &[S; 4], tol: f64) -> IndicatrixClass {
    let eq = |a: &S, b: &S| (a.clone() - b.clone()).negligible(tol);
    let sup = |a: &S, b: &S| (a.clone() + b.clone()).negligible(tol);
    if eq(&cos[0], &cos[2]) && eq(&cos[1], &cos[3]) {
        IndicatrixClass::VHedral
    } else if sup(&cos[0], &cos[2]) && sup(&cos[1], &cos[3]) {
        IndicatrixClass::AntiVHedral
    } else {
        IndicatrixClass::Other
    }
}

fn report<S: Scalar>(dirs: &[Vec3<S>; 4], tol: f64) -> IndicatrixReport<S> {
    let norm = |v: &Vec3<S>| v.to_f64().norm();
    let cosines: [S; 4] = std::array::from_fn(|i| {
        let (u, v) = (&dirs[i], &dirs[(i + 1) % 4]);
        let c = u.dot(v);
        match (u.norm2() * v.norm2()).sqrt_opt() {
            Some(n) if !n.is_zero() => c / n,
            _ => crate::algebra::f64_to_rational(c.to_f64() / (norm(u) * norm(v)))
                .map(|q| S::from_rational(&q))
                .unwrap_or_else(S::zero),
        }
    });
    let arcs = std::array::from_fn(|i| cosines[i].to_f64().clamp(-1.0, 1.0).acos());
    let class = classify(&cosines, tol);
    IndicatrixReport { cosines, arcs, class }
}

/// Spherical image of the loop (the `k = 0` limit): sides are the angles
/// between consecutive axis directions, which follow the pattern
/// `alpha1, alpha2, alpha1, alpha2`.
pub fn indicatrix<S: Scalar>(d: &BennettDesign<S>, tol: f64) -> IndicatrixReport<S> {
    let sph = d.with_k(S::zero());
    let p = frame(&sph, &S::one()).expect("tau = 1 is regular");
    report(&p.directions(), tol)
}

/// Spherical image at a vertex: four ray directions in cyclic order.
pub fn vertex_indicatrix<S: Scalar>(dirs: &[Vec3<S>; 4], tol: f64) -> IndicatrixReport<S> {
    report(dirs, tol)
}
