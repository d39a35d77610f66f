use serde::Serialize;

use crate::algebra::{format_rational, Rational, Scalar, Surd};
use crate::bennett::{loop_closure_residual, pose, Design};
use crate::families::{BiBennett, Branch, CoupledPose, Family, FamilyError};
use crate::limits::verify_labels;
use crate::properties::{deltoidal_certificate, halfturn_certificate, isogonal_certificate, isogram_residuals};

use super::config::{BranchChoice, Mode, Structure};

/// One evaluated parameter value on one branch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub tau: String,
    /// `neg`, `pos`, `sym` for line-symmetric partners, `-` for a single loop.
    pub branch: String,
    /// `ok`, `no_real_tau_bar`, `pole`, or `coincident` when the partner
    /// tube falls onto the loop itself.
    pub status: String,
    pub tau_bar: Option<f64>,
    pub closure: Option<f64>,
    pub closure_bar: Option<f64>,
    /// Larger of the two opposite-side differences (zero on line-symmetric quads).
    pub isogram: Option<f64>,
    /// Largest relative mismatch of the six vertex distances of the two loops.
    pub distance_gap: Option<f64>,
    pub isogonal: Option<bool>,
    pub deltoidal: Option<bool>,
    pub halfturn: Option<bool>,
    pub labels: Option<bool>,
    /// Every check relevant to the family passed.
    pub verdict: Option<bool>,
}

impl SweepRow {
    fn empty(tau: &Rational, branch: &str, status: &str) -> Self {
        SweepRow {
            tau: format_rational(tau),
            branch: branch.into(),
            status: status.into(),
            tau_bar: None,
            closure: None,
            closure_bar: None,
            isogram: None,
            distance_gap: None,
            isogonal: None,
            deltoidal: None,
            halfturn: None,
            labels: None,
            verdict: None,
        }
    }
}

fn branch_name(bb_symmetric: bool, b: Branch) -> &'static str {
    match (bb_symmetric, b) {
        (true, _) => "sym",
        (false, Branch::Neg) => "neg",
        (false, Branch::Pos) => "pos",
    }
}

fn fill<S: Scalar>(row: &mut SweepRow, bb: &BiBennett<S>, c: &CoupledPose<S>, tol: f64) -> Result<(), FamilyError> {
    if c.coincides(tol) {
        row.status = "coincident".into();
        row.tau_bar = Some(c.tau_bar.to_f64());
        return Ok(());
    }
    row.tau_bar = Some(c.tau_bar.to_f64());
    row.closure = Some(loop_closure_residual(&bb.design, &c.tau)?);
    row.closure_bar = Some(loop_closure_residual(&bb.bar_design, &c.tau_bar)?);
    let [i1, i2] = isogram_residuals(&c.quad);
    row.isogram = Some(i1.to_f64().abs().max(i2.to_f64().abs()));
    let (d, e) = (c.quad.distances2(), c.bar_quad.distances2());
    let scale = d.iter().map(|x| x.to_f64().abs()).fold(1.0, f64::max);
    let gap = d.iter().zip(&e).map(|(x, y)| (x.clone() - y.clone()).to_f64().abs()).fold(0.0, f64::max) / scale;
    row.distance_gap = Some(gap);
    row.isogonal = Some(isogonal_certificate(c, tol).verdict());
    row.deltoidal = Some(deltoidal_certificate(c, tol).verdict());
    row.halfturn = Some((0..4).all(|i| halfturn_certificate(c, i, tol).0.verdict()));
    let family_ok = match c.family {
        Family::A => row.isogonal,
        Family::B => row.deltoidal,
        Family::C => row.halfturn,
        Family::TrivialLineSym => Some(true),
    }
    .unwrap_or(false);
    let exact_zero = |v: Option<f64>| v.is_some_and(|x| if S::EXACT { x == 0.0 } else { x <= tol });
    row.verdict = Some(family_ok && exact_zero(row.closure) && exact_zero(row.closure_bar) && exact_zero(row.distance_gap));
    Ok(())
}

fn status_of(e: &FamilyError) -> Option<&'static str> {
    match e {
        FamilyError::NoRealCompanion { .. } | FamilyError::IrrationalRoot { .. } => Some("no_real_tau_bar"),
        FamilyError::QuarticPole(_) | FamilyError::Bennett(_) => Some("pole"),
        _ => None,
    }
}

/// Evaluates `structure` at every `tau` on the requested branches.
///
/// Parameter values where a loop or the companion is at a pole, or where no
/// real companion exists, produce a row with only `tau`, `branch` and
/// `status` filled in.
pub fn sweep_report(
    structure: &Structure<Rational>,
    taus: &[Rational],
    branches: BranchChoice,
    mode: Mode,
    tol: f64,
) -> Result<Vec<SweepRow>, FamilyError> {
    let mut rows = Vec::new();
    for tau in taus {
        let Some(bb) = structure.bibennett() else {
            rows.push(single_row(structure.design(), tau, tol));
            continue;
        };
        let symmetric = bb.is_symmetric();
        let list = if symmetric { vec![Branch::Neg] } else { branches.branches() };
        for b in list {
            let name = branch_name(symmetric, b);
            let mut row = SweepRow::empty(tau, name, "ok");
            let result = match mode {
                Mode::Exact => bb.couple_exact(tau, b).and_then(|c| {
                    let sb = bb.map(|x| Surd::rational(x.clone()));
                    fill(&mut row, &sb, &c, tol)
                }),
                Mode::Float => {
                    let fb = bb.to_f64();
                    fb.couple(&tau.to_f64(), b, tol).and_then(|c| fill(&mut row, &fb, &c, tol))
                }
            };
            match result {
                Ok(()) if row.status != "ok" => {}
                Ok(()) => {
                    if let Structure::Limit(l) = structure {
                        let ok = verify_labels(l, tau, b, tol).map(|r| r.verdict()).unwrap_or(false);
                        row.labels = Some(ok);
                        row.verdict = row.verdict.map(|v| v && ok);
                    }
                }
                Err(e) => match status_of(&e) {
                    Some(st) => row = SweepRow::empty(tau, name, st),
                    None => return Err(e),
                },
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

fn single_row(design: &Design<Rational>, tau: &Rational, tol: f64) -> SweepRow {
    match (pose(design, tau), loop_closure_residual(design, tau)) {
        (Ok(_), Ok(r)) => {
            let mut row = SweepRow::empty(tau, "-", "ok");
            row.closure = Some(r);
            row.verdict = Some(r <= tol);
            row
        }
        _ => SweepRow::empty(tau, "-", "pole"),
    }
}

/// RFC 4180 CSV with a fixed header row.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub const HEADER: [&str; 13] = [
    "tau",
    "branch",
    "status",
    "tau_bar",
    "closure",
    "closure_bar",
    "isogram",
    "distance_gap",
    "isogonal",
    "deltoidal",
    "halfturn",
    "labels",
    "verdict",
];

pub fn rows_to_json(rows: &[SweepRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}
