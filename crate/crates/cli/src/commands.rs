use std::path::{Path, PathBuf};

use accretive::harness::{self, Campaign, CellReport, Mode, TrialReport};
use accretive::linalg::spectral_norm;
use accretive::matfun::fractional_power;
use accretive::means::{geometric_mean, harmonic_mean, heinz_mean, logarithmic_mean};
use accretive::numrange::{numerical_radius, sectorial_index};
use accretive::tol::Tolerances;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::{Failure, MatrixFile};

#[derive(Debug, Parser)]
#[command(name = "accretive", version, about = "Numerical radii, sectors and means of accretive matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity on a matrix file.
    Compute {
        input: PathBuf,
        /// radius | norm | sector | power:<t> | mean:<geometric|harmonic|heinz>:<t> | mean:logarithmic
        op: String,
        /// Second operand for means.
        #[arg(long)]
        second: Option<PathBuf>,
    },
    /// Run a randomized verification campaign.
    Check {
        /// Comma-separated check ids; all checks when omitted.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 5, 8])]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.1, 0.3, 0.6, 0.9, 1.2])]
        alphas: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "certified")]
        mode: Mode,
        /// Report path; the CSV table goes next to it unless --csv is given.
        #[arg(long, default_value = "report.json")]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Suppress per-cell progress on stderr.
        #[arg(long)]
        quiet: bool,
    },
    /// Regenerate and re-evaluate the worst trial stored in one report row.
    Replay {
        report: PathBuf,
        check_id: String,
        /// 0-based cell index, as in the CSV table.
        row: usize,
        #[arg(long)]
        atol: Option<f64>,
        #[arg(long)]
        rtol: Option<f64>,
    },
}

/// Runs a parsed command and returns the JSON to print on stdout.
pub fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Compute { input, op, second } => compute(&input, &op, second.as_deref()),
        Command::Check { checks, dims, alphas, trials, seed, mode, out, csv, quiet } => {
            let mut campaign = Campaign::default_full();
            if !checks.is_empty() {
                campaign.checks = checks;
            }
            campaign.dims = dims;
            campaign.alphas = alphas;
            campaign.trials_per_cell = trials;
            campaign.seed = seed;
            campaign.mode = mode;
            let csv = csv.unwrap_or_else(|| out.with_extension("csv"));
            check(&campaign, &out, &csv, quiet)
        }
        Command::Replay { report, check_id, row, atol, rtol } => replay(&report, &check_id, row, atol, rtol),
    }
}

fn parse_real(s: &str, what: &str) -> Result<f64, Failure> {
    s.parse().map_err(|_| Failure::Input(format!("{what}: cannot parse {s:?} as a number")))
}

pub fn compute(input: &Path, op: &str, second: Option<&Path>) -> Result<String, Failure> {
    let a = MatrixFile::read(input)?;
    let parts: Vec<&str> = op.split(':').collect();
    let value = match parts.as_slice() {
        ["radius"] => json!({ "value": numerical_radius(&a) }),
        ["norm"] => json!({ "value": spectral_norm(&a) }),
        ["sector"] => json!({ "alpha": sectorial_index(&a)? }),
        ["power", t] => matrix_json(&fractional_power(&a, parse_real(t, "power exponent")?)?),
        ["mean", kind, rest @ ..] => {
            let path = second.ok_or_else(|| Failure::Input("means need --second".into()))?;
            let b = MatrixFile::read(path)?;
            let t = match rest {
                [] => None,
                [t] => Some(parse_real(t, "mean parameter")?),
                _ => return Err(Failure::Input(format!("unknown op {op:?}"))),
            };
            let need_t = || t.ok_or_else(|| Failure::Input(format!("mean:{kind} needs a parameter")));
            let m = match *kind {
                "geometric" => geometric_mean(&a, &b, need_t()?)?,
                "harmonic" => harmonic_mean(&a, &b, need_t()?)?,
                "heinz" => heinz_mean(&a, &b, need_t()?)?,
                "logarithmic" if t.is_none() => logarithmic_mean(&a, &b)?,
                _ => return Err(Failure::Input(format!("unknown op {op:?}"))),
            };
            matrix_json(&m)
        }
        _ => return Err(Failure::Input(format!("unknown op {op:?}"))),
    };
    Ok(value.to_string())
}

fn matrix_json(m: &accretive::CMatrix) -> serde_json::Value {
    serde_json::to_value(MatrixFile::from_matrix(m)).expect("matrix file serializes")
}

/// One CSV row per cell.
#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    row: usize,
    check: &'a str,
    dim: usize,
    alpha: f64,
    trials: usize,
    passes: usize,
    violations: usize,
    errors: usize,
    worst_margin: Option<f64>,
    worst_slack: Option<f64>,
    worst_lhs: Option<f64>,
    worst_rhs: Option<f64>,
    worst_side: Option<&'a str>,
    worst_seed: Option<u64>,
}

fn write_csv(path: &Path, cells: &[CellReport]) -> Result<(), Failure> {
    let io = |e: csv::Error| Failure::Input(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    for (row, c) in cells.iter().enumerate() {
        w.serialize(CsvRow {
            row,
            check: &c.check,
            dim: c.dim,
            alpha: c.alpha,
            trials: c.trials,
            passes: c.passes,
            violations: c.violations,
            errors: c.errors,
            worst_margin: c.worst_margin,
            worst_slack: c.worst_slack,
            worst_lhs: c.worst.as_ref().map(|r| r.lhs),
            worst_rhs: c.worst.as_ref().map(|r| r.rhs),
            worst_side: c.worst.as_ref().map(|r| r.side.as_str()),
            worst_seed: c.worst_seed,
        })
        .map_err(io)?;
    }
    w.flush().map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

/// Serialized report text; identical campaigns give identical bytes.
pub fn report_json(report: &TrialReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

pub fn check(campaign: &Campaign, out: &Path, csv: &Path, quiet: bool) -> Result<String, Failure> {
    campaign.validate().map_err(|e| Failure::Input(e.to_string()))?;
    let report = harness::run_trials_with_progress(campaign, |c| {
        if !quiet {
            eprintln!(
                "{:5} n={} α={:<4} {}/{} pass{}",
                c.check,
                c.dim,
                c.alpha,
                c.passes,
                c.trials,
                c.first_error.as_deref().map(|e| format!("  error: {e}")).unwrap_or_default()
            );
        }
    })?;
    std::fs::write(out, report_json(&report))
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", out.display())))?;
    write_csv(csv, &report.cells)?;
    let summary = json!({
        "campaign": report.campaign.id,
        "verdict": report.verdict,
        "no_data": report.no_data,
        "trials": report.total_trials,
        "violations": report.total_violations,
        "errors": report.total_errors,
        "report": out,
        "csv": csv,
    })
    .to_string();
    if report.is_green() {
        Ok(summary)
    } else {
        Err(Failure::Violation(summary))
    }
}

pub fn replay(path: &Path, check_id: &str, row: usize, atol: Option<f64>, rtol: Option<f64>) -> Result<String, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let report: TrialReport =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed report: {e}")))?;
    let cell = report
        .cells
        .get(row)
        .ok_or_else(|| Failure::Input(format!("report has {} rows, no row {row}", report.cells.len())))?;
    if cell.check != check_id {
        return Err(Failure::Input(format!("row {row} belongs to {}, not {check_id}", cell.check)));
    }
    let stored = cell.worst.as_ref().ok_or_else(|| Failure::Input(format!("row {row} has no stored digest")))?;
    let base = report.campaign.config.tol;
    let tol = Tolerances::new(atol.unwrap_or(base.atol), rtol.unwrap_or(base.rtol));
    let (inputs, again) = harness::replay(stored, &tol)?;
    let identical = again.lhs.to_bits() == stored.lhs.to_bits() && again.rhs.to_bits() == stored.rhs.to_bits();
    Ok(json!({
        "check_id": check_id,
        "row": row,
        "bit_identical": identical,
        "stored": { "lhs": stored.lhs, "rhs": stored.rhs, "margin": stored.margin,
                    "tol_effective": stored.tol_effective, "pass": stored.pass, "side": stored.side },
        "recomputed": { "lhs": again.lhs, "rhs": again.rhs, "margin": again.margin,
                        "tol_effective": again.tol_effective, "pass": again.pass, "side": again.side },
        "digest": stored.digest,
        "inputs": inputs.iter().map(MatrixFile::from_matrix).collect::<Vec<_>>(),
    })
    .to_string())
}
