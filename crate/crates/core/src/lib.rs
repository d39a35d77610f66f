//! Bennett 4R loops and flexible couplings of two Bennett tubes.
//!
//! Every geometric routine is generic over [`algebra::Scalar`], so the same
//! code runs in `f64`, exact rationals and symbolic rational functions.

pub mod algebra;
pub mod appendix;
pub mod bennett;
pub mod cli;
pub mod families;
pub mod io_export;
pub mod limits;
pub mod properties;
