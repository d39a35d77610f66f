//! A single Bennett 4R loop: parameters, Denavit-Hartenberg chain, axis
//! frames, planar and spherical limits, and line geometry of the axes.

mod chain;
mod design;
mod lines;

pub use chain::{
    dh_chain, frame, indicatrix, loop_closure_product, loop_closure_residual, planar_chain, planar_frame, pose, rot, twist,
    twist_planar, vertex_indicatrix, Axis, AxisLabel, IndicatrixClass, IndicatrixReport, Pose,
};
pub use design::{planar_k, transmission_k, transmission_k_alt, BennettDesign, Design, PlanarCase, PlanarDesign};
pub use lines::{
    opposite_axes_intersect, opposite_side_products, plucker_side, quad_symmetry_line, regulus_residual, symmetry_line, Line,
};

/// Default tolerance for floating residual checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BennettError {
    #[error("{param} = {value} violates the orientation convention (must be > 0)")]
    Convention { param: &'static str, value: f64 },
    #[error("a1 = a2 makes the transmission factor (a1 + a2)/(a1 - a2) infinite")]
    DegenerateTransmission,
    #[error("scale k = {0} must be nonnegative")]
    InvalidScale(f64),
    #[error("planar case {0} has a pole at d1 = d2 (degenerate rhombus)")]
    PlanarPole(&'static str),
    #[error("tau = 0 is a pole of the substitution t12 = K / tau")]
    TauPole,
    #[error("axes {0} and {1} are not skew, the quadric through three axes is not unique (regulus splits into pencils)")]
    DegenerateRegulus(AxisLabel, AxisLabel),
    #[error("the midpoints of opposite F-points coincide, the symmetry line is undefined")]
    UndefinedSymmetryLine,
}
