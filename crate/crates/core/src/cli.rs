//! Command-line front end. Exit codes: 0 success, 1 a certificate failed,
//! 2 the input could not be read or evaluated.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{format_rational, parse_rational, Rational};
use crate::appendix::{verify_nonexistence, NonexistenceOptions};
use crate::families::Branch;
use crate::io_export::{
    export_obj, parse_config, rows_to_csv, rows_to_json, sweep_report, write_text, BranchChoice, Config, Mode, Num,
    RibbonOptions, Structure, SweepRow,
};
use crate::limits::verify_labels;
use crate::properties::CertificateReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Overrides the default tolerance when neither `--tol` nor the config sets one.
pub const TOL_ENV: &str = "BIBENNETT_TOL";

#[derive(Debug, Parser)]
#[command(name = "bibennett", version, about = "Bennett loops and flexible bi-Bennett couplings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a configuration.
    Validate(Common),
    /// Build the structure and print its parameters as JSON.
    Construct(Common),
    /// Evaluate every parameter value and print a CSV or JSON table.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the certificates relevant to the family at every parameter value.
    Certify(Common),
    /// Check the class labels of a limit structure.
    Limits(Common),
    /// Run the case analysis for plane-symmetric couplings.
    Appendix {
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an OBJ mesh of the tubes at one parameter value.
    Export(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Neg,
    Pos,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Args)]
struct Common {
    /// JSON configuration file.
    #[arg(short, long)]
    config: PathBuf,
    /// Parameter value, replaces those in the config. May be repeated.
    #[arg(long, value_parser = parse_num)]
    tau: Vec<Rational>,
    #[arg(long, value_enum)]
    branch: Option<BranchArg>,
    /// Sign choice of family C.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    patch_n: Option<usize>,
    /// Output file instead of standard output.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn parse_num(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Certificate(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the command line and returns the process exit code.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let env_tol = std::env::var(TOL_ENV).ok();
    match std::panic::catch_unwind(|| run(cli, env_tol.as_deref())) {
        Ok(Ok(())) => EXIT_OK,
        Ok(Err(Failure::Certificate(msg))) => {
            eprintln!("certificate failed: {msg}");
            EXIT_CERTIFICATE
        }
        Ok(Err(Failure::Input(e))) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
        Err(_) => {
            eprintln!("error: internal failure");
            EXIT_INPUT
        }
    }
}

fn run(cli: Cli, env_tol: Option<&str>) -> Outcome {
    match cli.command {
        Command::Validate(c) => {
            let cfg = load(&c, env_tol)?;
            let n = cfg.tau_values()?.len();
            println!("ok: family {:?}, {n} parameter value(s), mode {:?}", cfg.family, cfg.mode);
            Ok(())
        }
        Command::Construct(c) => {
            let cfg = load(&c, env_tol)?;
            emit(&c.out, &construct_json(&cfg)?)
        }
        Command::Sweep { common, format } => {
            let cfg = load(&common, env_tol)?;
            let rows = rows_for(&cfg)?;
            let text = match format {
                Format::Csv => rows_to_csv(&rows),
                Format::Json => rows_to_json(&rows),
            };
            emit(&common.out, &text)
        }
        Command::Certify(c) => {
            let cfg = load(&c, env_tol)?;
            let rows = rows_for(&cfg)?;
            let mut text = String::new();
            for r in &rows {
                text.push_str(&row_line(r));
                text.push('\n');
            }
            emit(&c.out, &text)?;
            certify_verdict(&rows)
        }
        Command::Limits(c) => {
            let cfg = load(&c, env_tol)?;
            let structure = cfg.build()?;
            let Structure::Limit(l) = &structure else {
                return Err(anyhow::anyhow!("family {:?} is not a limit structure", cfg.family).into());
            };
            let tol = cfg.tolerance();
            let lf = l.to_f64();
            let mut text = format!("kind {:?}, source {:?}, labels {:?}\n", l.kind, l.source, l.labels);
            let mut failed = Vec::new();
            let mut checked = 0;
            for tau in cfg.tau_values()? {
                for b in cfg.branch.branches() {
                    let t = rational_f64(&tau);
                    if lf.bibennett.couple(&t, b, tol).is_ok_and(|c| c.coincides(tol)) {
                        text.push_str(&format!(
                            "skip tau={} branch={b:?}: partner coincides with the loop\n",
                            format_rational(&tau)
                        ));
                        continue;
                    }
                    let Ok(rep) = verify_labels(&lf, &rational_f64(&tau), b, tol) else {
                        text.push_str(&format!("tau={} branch={b:?}: not evaluable\n", format_rational(&tau)));
                        continue;
                    };
                    checked += 1;
                    text.push_str(&report_line(&format!("tau={} branch={b:?}", format_rational(&tau)), &rep));
                    if !rep.verdict() {
                        failed.push(format!("tau={} {b:?}", format_rational(&tau)));
                    }
                }
            }
            emit(&c.out, &text)?;
            if checked == 0 {
                return Err(Failure::Certificate("no parameter value could be evaluated".into()));
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Certificate(failed.join(", ")))
            }
        }
        Command::Appendix { grid, samples, out } => {
            let rep = verify_nonexistence(&NonexistenceOptions { grid, samples })?;
            let mut text = String::new();
            for e in &rep.entries {
                text.push_str(&format!("{} {} {:e}\n", if e.pass { "pass" } else { "FAIL" }, e.label, e.value));
            }
            for n in &rep.notes {
                text.push_str(&format!("note: {n}\n"));
            }
            emit(&out, &text)?;
            if rep.verdict() {
                Ok(())
            } else {
                Err(Failure::Certificate(rep.failures().map(|e| e.label.clone()).collect::<Vec<_>>().join(", ")))
            }
        }
        Command::Export(c) => {
            let cfg = load(&c, env_tol)?;
            let structure = cfg.build()?;
            let tau =
                cfg.tau_values()?.into_iter().next().ok_or_else(|| anyhow::anyhow!("export needs a parameter value (tau)"))?;
            let mut opts = RibbonOptions::default();
            if let Some(n) = cfg.patch_n {
                opts.patch_n = n;
            }
            opts.width = cfg.ribbon_width.as_ref().map(|w| rational_f64(&w.0));
            let mut last = None;
            for b in cfg.branch.branches() {
                match export_obj(&structure, &tau, b, &opts, cfg.tolerance()) {
                    Ok(obj) => return emit(&c.out, &obj),
                    Err(e) => last = Some(e),
                }
            }
            Err(last.map(anyhow::Error::from).unwrap_or_else(|| anyhow::anyhow!("nothing to export")).into())
        }
    }
}

/// Reads the config and applies the command-line overrides.
fn load(c: &Common, env_tol: Option<&str>) -> Result<Config, Failure> {
    let text = std::fs::read_to_string(&c.config).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", c.config.display()))?;
    let mut cfg = parse_config(&text).map_err(|e| anyhow::anyhow!("{}: {e}", c.config.display()))?;
    if !c.tau.is_empty() {
        cfg.tau = None;
        cfg.tau_range = None;
        cfg.taus = Some(c.tau.iter().cloned().map(Num).collect());
    }
    if let Some(b) = c.branch {
        cfg.branch = match b {
            BranchArg::Neg => BranchChoice::Neg,
            BranchArg::Pos => BranchChoice::Pos,
            BranchArg::Both => BranchChoice::Both,
        };
    }
    if c.s.is_some() {
        cfg.s = c.s;
    }
    if let Some(m) = c.mode {
        cfg.mode = if m == ModeArg::Exact { Mode::Exact } else { Mode::Float };
    }
    if c.patch_n.is_some() {
        cfg.patch_n = c.patch_n;
    }
    match (c.tol, env_tol) {
        (Some(t), _) => cfg.tol = Some(t),
        (None, Some(e)) if cfg.tol.is_none() => {
            let t: f64 = e.trim().parse().map_err(|_| anyhow::anyhow!("{TOL_ENV}={e:?} is not a number"))?;
            cfg.tol = Some(t);
        }
        _ => {}
    }
    if let Some(t) = cfg.tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(anyhow::anyhow!("tolerance must be finite and non-negative, got {t}").into());
        }
    }
    if cfg.patch_n == Some(0) {
        return Err(anyhow::anyhow!("patch_n must be at least 1").into());
    }
    // overrides can invalidate the structure, e.g. a bad sign choice
    cfg.build()?;
    Ok(cfg)
}

fn rows_for(cfg: &Config) -> Result<Vec<SweepRow>, Failure> {
    let taus = cfg.tau_values()?;
    if taus.is_empty() {
        return Err(anyhow::anyhow!("the config lists no parameter values").into());
    }
    Ok(sweep_report(&cfg.build()?, &taus, cfg.branch, cfg.mode, cfg.tolerance())?)
}

fn certify_verdict(rows: &[SweepRow]) -> Outcome {
    let evaluated: Vec<_> = rows.iter().filter(|r| r.status == "ok").collect();
    if evaluated.is_empty() {
        return Err(Failure::Certificate("no parameter value could be evaluated".into()));
    }
    let failed: Vec<_> =
        evaluated.iter().filter(|r| r.verdict != Some(true)).map(|r| format!("tau={} {}", r.tau, r.branch)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Certificate(failed.join(", ")))
    }
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".into(), |x| x.to_string())
}

fn num(v: &Option<f64>) -> String {
    v.map_or("-".into(), |x| format!("{x:.6e}"))
}

fn row_line(r: &SweepRow) -> String {
    let verdict = match r.verdict {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "skip",
    };
    format!(
        "{verdict} tau={} branch={} status={} tau_bar={} closure={} isogram={} isogonal={} deltoidal={} halfturn={} labels={}",
        r.tau,
        r.branch,
        r.status,
        num(&r.tau_bar),
        num(&r.closure),
        num(&r.isogram),
        opt(&r.isogonal),
        opt(&r.deltoidal),
        opt(&r.halfturn),
        opt(&r.labels),
    )
}

fn report_line(head: &str, rep: &CertificateReport) -> String {
    let mut s = format!("{} {head} max_residual={:e}\n", if rep.verdict() { "pass" } else { "FAIL" }, rep.max_abs());
    for e in rep.failures() {
        s.push_str(&format!("  {} = {:e} (tol {:e})\n", e.label, e.value, e.tol));
    }
    s
}

fn construct_json(cfg: &Config) -> Result<String, Failure> {
    use serde_json::{json, Value};
    let structure = cfg.build()?;
    let mu = |m: &crate::families::MuSet<Rational>| -> Value {
        json!({
            "mu14": format_rational(&m.mu14),
            "mu12": format_rational(&m.mu12),
            "mu23": format_rational(&m.mu23),
            "mu34": format_rational(&m.mu34),
        })
    };
    let design = |d: &crate::bennett::Design<Rational>| -> Value {
        match d {
            crate::bennett::Design::Spatial(b) => json!({
                "a1": format_rational(b.a1()),
                "a2": format_rational(b.a2()),
                "k": format_rational(b.k()),
            }),
            crate::bennett::Design::Planar(p) => json!({
                "d1": format_rational(p.d1()),
                "d2": format_rational(p.d2()),
                "case": p.case(),
            }),
        }
    };
    let mut out = json!({ "family": cfg.family, "mode": cfg.mode, "tol": cfg.tolerance() });
    let bb = match &structure {
        Structure::Single(d) => {
            out["design"] = design(d);
            None
        }
        Structure::Coupled(bb) => Some(bb),
        Structure::Limit(l) => {
            out["limit"] = json!({
                "kind": l.kind,
                "source": l.source,
                "labels": l.labels.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>(),
                "isogonal_compatible": l.isogonal_compatible,
            });
            Some(&l.bibennett)
        }
    };
    if let Some(bb) = bb {
        out["coupled_family"] = json!(bb.family);
        out["design"] = design(&bb.design);
        out["mu"] = mu(&bb.mu);
        out["bar_design"] = design(&bb.bar_design);
        out["bar_mu"] = mu(&bb.bar_mu);
        out["s"] = json!(bb.s);
    }
    let mut comps = Vec::new();
    for tau in cfg.tau_values()? {
        let entry = match &bb {
            None => json!({ "tau": format_rational(&tau) }),
            Some(bb) => {
                let t = rational_f64(&tau);
                let found: Vec<Value> = Branch::BOTH
                    .iter()
                    .filter_map(|&b| {
                        bb.to_f64()
                            .couple(&t, b, cfg.tolerance())
                            .ok()
                            .map(|c| json!({ "branch": format!("{b:?}"), "tau_bar": c.tau_bar }))
                    })
                    .collect();
                json!({ "tau": format_rational(&tau), "companions": found })
            }
        };
        comps.push(entry);
    }
    out["parameters"] = Value::Array(comps);
    Ok(serde_json::to_string_pretty(&out)? + "\n")
}

fn rational_f64(q: &Rational) -> f64 {
    use crate::algebra::Scalar;
    q.to_f64()
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(p) => Ok(write_text(Path::new(p), text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
