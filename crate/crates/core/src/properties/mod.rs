//! Certificates for the angle properties of coupled loops: isogonal and
//! deltoidal vertex loops of the symmetric families, and the half-turn
//! relating adjacent vertices of family C.

mod halfturn;
mod indicatrix;
mod vertex;

use crate::algebra::Scalar;
use crate::families::FamilyError;

pub use halfturn::{halfturn_certificate, hat_points, HalfTurn, HatScheme};
pub use indicatrix::{indicatrix_relation, spherical_sides};
pub use vertex::{deltoid_numerators, deltoidal_certificate, isogonal_certificate, isogram_residuals, VertexContext};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PropertyError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("the barred quad is coplanar, the transfer coefficients are not determined")]
    DegenerateQuad,
}

/// One named residual with its threshold.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Residual {
    pub label: String,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Outcome of a certificate. Failing residuals are data, not errors.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CertificateReport {
    pub name: String,
    pub entries: Vec<Residual>,
    /// Free-form observations that do not affect the verdict.
    pub notes: Vec<String>,
}

impl CertificateReport {
    pub fn new(name: impl Into<String>) -> Self {
        CertificateReport { name: name.into(), entries: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, label: impl Into<String>, value: f64, tol: f64, pass: bool) {
        self.entries.push(Residual { label: label.into(), value, tol, pass });
    }

    /// Records a residual that should vanish. In exact arithmetic only an
    /// exact zero passes; otherwise `|value| / scale <= tol`.
    pub fn zero<S: Scalar>(&mut self, label: impl Into<String>, value: &S, scale: f64, tol: f64) {
        let v = value.to_f64() / scale.max(f64::MIN_POSITIVE);
        let pass = if S::EXACT { value.is_zero() } else { v.abs() <= tol };
        self.push(label, v, tol, pass);
    }

    /// Records a quantity that must not vanish.
    pub fn nonzero<S: Scalar>(&mut self, label: impl Into<String>, value: &S, scale: f64, tol: f64) {
        let v = value.to_f64() / scale.max(f64::MIN_POSITIVE);
        let pass = if S::EXACT { !value.is_zero() } else { v.abs() > tol };
        self.push(label, v, tol, pass);
    }

    pub fn verdict(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.value.abs()).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Residual> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn extend(&mut self, other: CertificateReport) {
        let prefix = other.name;
        for mut e in other.entries {
            e.label = format!("{prefix}/{}", e.label);
            self.entries.push(e);
        }
        self.notes.extend(other.notes);
    }
}
