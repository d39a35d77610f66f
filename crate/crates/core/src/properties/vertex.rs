use crate::algebra::{Scalar, Vec3};
use crate::families::{CoupledPose, MuSet, SkewQuad};

use super::CertificateReport;

/// Opposite side differences `|P14 P12|^2 - |P23 P34|^2` and
/// `|P14 P34|^2 - |P23 P12|^2`.
pub fn isogram_residuals<S: Scalar>(quad: &SkewQuad<S>) -> [S; 2] {
    let p = &quad.p;
    [p[0].dist2(&p[1]) - p[2].dist2(&p[3]), p[0].dist2(&p[3]) - p[2].dist2(&p[1])]
}

/// Everything the spherical loop around one quad vertex needs.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexContext<S> {
    pub index: usize,
    pub center: Vec3<S>,
    pub prev: Vec3<S>,
    pub next: Vec3<S>,
    /// Unit direction from the center towards the foot point of its own axis.
    pub own_ray: Vec3<S>,
    /// The same for the partner axis through the center.
    pub hat_ray: Vec3<S>,
}

impl<S: Scalar> VertexContext<S> {
    pub fn new(c: &CoupledPose<S>, i: usize) -> Self {
        VertexContext {
            index: i % 4,
            center: c.vertex(i).clone(),
            prev: c.vertex(i + 3).clone(),
            next: c.vertex(i + 1).clone(),
            own_ray: c.own_ray(i),
            hat_ray: c.hat_ray(i),
        }
    }

    fn edges(&self) -> (Vec3<S>, Vec3<S>) {
        (&self.prev - &self.center, &self.next - &self.center)
    }
}

/// Opposite angles of the vertex loop are equal. Per vertex: the two squared
/// cosine equalities and the sign condition `c1 c2 = c1' c2'` that rules out
/// one pair being supplementary, with the edge lengths cleared.
pub fn isogonal_certificate<S: Scalar>(c: &CoupledPose<S>, tol: f64) -> CertificateReport {
    let mut rep = CertificateReport::new("isogonal");
    for i in 0..4 {
        let v = VertexContext::new(c, i);
        let (ep, en) = v.edges();
        let (np, nn) = (ep.norm2(), en.norm2());
        let (po, no) = (ep.dot(&v.own_ray), en.dot(&v.own_ray));
        let (ph, nh) = (ep.dot(&v.hat_ray), en.dot(&v.hat_ray));
        let iso1 = po.square() / np.clone() - nh.square() / nn.clone();
        let iso2 = no.square() / nn.clone() - ph.square() / np.clone();
        let iso3 = po * no - nh * ph;
        let norm = (np.to_f64() * nn.to_f64()).sqrt();
        let tag = c.pose.axes[i].label;
        rep.zero(format!("iso1@{tag}"), &iso1, 1.0, tol);
        rep.zero(format!("iso2@{tag}"), &iso2, 1.0, tol);
        rep.zero(format!("iso3@{tag}"), &iso3, norm, tol);
    }
    rep
}

/// Adjacent angles of the vertex loop are equal in pairs:
/// `<e_prev, own> = <e_prev, hat>` and `<e_next, own> = <e_next, hat>`.
pub fn deltoidal_certificate<S: Scalar>(c: &CoupledPose<S>, tol: f64) -> CertificateReport {
    let mut rep = CertificateReport::new("deltoidal");
    for i in 0..4 {
        let v = VertexContext::new(c, i);
        let (ep, en) = v.edges();
        let diff = &v.own_ray - &v.hat_ray;
        let tag = c.pose.axes[i].label;
        rep.zero(format!("delto1@{tag}"), &ep.dot(&diff), ep.to_f64().norm(), tol);
        rep.zero(format!("delto2@{tag}"), &en.dot(&diff), en.to_f64().norm(), tol);
    }
    rep
}

/// Numerators of the two adjacent-angle conditions at the vertex on axis 23,
/// once the isogram equalities are used. Both vanish identically when
/// `mu14 = mu23` and `mu12 = mu34`.
pub fn deltoid_numerators<S: Scalar>(a1: &S, a2: &S, mu: &MuSet<S>) -> [S; 2] {
    let [m14, m12, m23, m34] = mu.as_array();
    [
        (m14.clone() - m12.clone() - m23.clone() + m34.clone()) * a2.square() + m14.clone() + m12.clone()
            - m23.clone()
            - m34.clone(),
        (m14.clone() + m12.clone() - m23.clone() - m34.clone()) * a1.square() + m14 - m12 - m23 + m34,
    ]
}
