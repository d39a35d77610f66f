//! Configuration files, OBJ export of the tubes and parameter sweeps.

mod config;
mod mesh;
mod sweep;

use std::path::Path;

use crate::algebra::{Rational, Scalar};
use crate::bennett::pose;
use crate::families::{Branch, FamilyError};

pub use config::{
    parse_config, BranchChoice, Config, ConfigError, FamilyKind, Mode, Num, Source, Structure, TauRange, SCHEMA_VERSION,
};
pub use mesh::{coupled_mesh, hp_patch, loop_mesh, sig12, RibbonOptions, TubeMesh};
pub use sweep::{rows_to_csv, rows_to_json, sweep_report, SweepRow, HEADER};

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("mesh lint failed: {0}")]
    Lint(String),
}

/// OBJ text of the structure at `tau`: four ribbons per loop.
pub fn export_obj(
    structure: &Structure<Rational>,
    tau: &Rational,
    branch: Branch,
    opts: &RibbonOptions,
    tol: f64,
) -> Result<String, ExportError> {
    let t = tau.to_f64();
    let mesh = match structure.bibennett() {
        None => loop_mesh(&pose(&structure.design().map(|v| v.to_f64()), &t).map_err(FamilyError::from)?, opts),
        Some(bb) => coupled_mesh(&bb.to_f64().couple(&t, branch, tol)?, opts),
    };
    mesh.lint().map_err(ExportError::Lint)?;
    Ok(mesh.to_obj())
}

pub fn write_text(path: &Path, text: &str) -> Result<(), ExportError> {
    std::fs::write(path, text).map_err(|source| ExportError::Io { path: path.display().to_string(), source })
}
