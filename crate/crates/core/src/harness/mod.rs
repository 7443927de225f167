//! Randomized verification campaigns over the check registry.
//!
//! A campaign is a grid of cells `(check, dim, α)`; each cell runs a fixed
//! number of trials. Trial `k` of a cell draws its inputs and parameters from
//! the key `derive_seed(seed, [tag(check), dim, bits(α), k])`, so every
//! trial can be regenerated on its own from the digest stored with it and
//! the aggregate does not depend on evaluation order.

pub mod checks;

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genprop::{
    derive_seed, random_matrix, random_positive_definite, random_psd_increment, random_sectorial, rng_for, tag,
    GenSpec, DEFAULT_CONDITION_CAP,
};
use crate::linalg::{hermitian_eigenvalues, loewner_margin};
use crate::matfun::{builtin_reps, rep_by_name, MonotoneRep};
use crate::matrix::CMatrix;
use crate::numrange::{is_accretive, sectorial_index};
use crate::tol::{Tolerances, HERMITIAN_TOL};

pub use checks::{find_check, registry, CheckDefinition, Ctx, InputKind, ParamRange, Relation, Side};

const TAG_INPUT: u64 = 0x494e;
const TAG_PARAMS: u64 = 0x5041;
const TAG_INCREMENT: u64 = 0x494e43;

/// Fixed parameter values sampled half of the time; the rest are uniform on `[0.05, 0.95]`.
pub const PARAM_GRID: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];

/// Which α the inequalities are evaluated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// The generator's target angle, which the inputs provably respect.
    #[default]
    Certified,
    /// The largest computed sectorial index among the inputs.
    Tight,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "certified" => Ok(Mode::Certified),
            "tight" => Ok(Mode::Tight),
            _ => Err(Error::DomainError(format!("unknown mode {s:?}"))),
        }
    }
}

/// Scalar parameters of one evaluation. `f = None` on a check that needs one
/// means "every builtin representation, keep the worst".
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Params {
    pub t: Option<f64>,
    pub lambda: Option<f64>,
    pub f: Option<String>,
}

/// Everything needed to regenerate and re-evaluate a trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputsDigest {
    /// Generator key; `None` for explicitly supplied inputs.
    pub seed: Option<u64>,
    pub dim: usize,
    pub alpha_target: f64,
    pub condition_cap: f64,
    pub mode: Mode,
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub pass: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tol_effective: f64,
    /// Which inequality of the chain is closest to violation.
    pub side: String,
    pub relation: Relation,
    /// The α the inequality was evaluated with.
    pub alpha: f64,
    pub digest: InputsDigest,
}

impl CheckResult {
    /// `margin + tol_effective`; negative exactly when the check fails.
    pub fn slack(&self) -> f64 {
        self.margin + self.tol_effective
    }
}

fn validate_inputs(def: &CheckDefinition, inputs: &[CMatrix], tol: &Tolerances) -> Result<()> {
    if inputs.len() != def.arity {
        return Err(Error::DomainError(format!("{} expects {} inputs, got {}", def.id, def.arity, inputs.len())));
    }
    let n = inputs[0].dim();
    for m in inputs {
        if m.dim() != n {
            return Err(Error::DimensionMismatch { left: n, right: m.dim() });
        }
        if !m.is_finite() {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
    }
    let positive = |m: &CMatrix| -> Result<()> {
        let defect = m.hermitian_defect();
        if defect > HERMITIAN_TOL * m.max_abs().max(1.0) {
            return Err(Error::NotHermitian { asymmetry: defect });
        }
        let lo = hermitian_eigenvalues(&m.hermitian_part())?[0];
        if lo > 0.0 {
            Ok(())
        } else {
            Err(Error::NotAccretive { min_real_part: lo })
        }
    };
    match def.input {
        InputKind::Sectorial => {
            for m in inputs {
                if !is_accretive(m) {
                    return Err(Error::NotAccretive { min_real_part: crate::numrange::min_real_part(m) });
                }
            }
        }
        InputKind::Positive => inputs.iter().try_for_each(positive)?,
        InputKind::PositiveOrdered => {
            inputs.iter().try_for_each(positive)?;
            for (lo, hi) in [(0, 2), (1, 3)] {
                let x = inputs[lo].hermitian_part();
                let y = inputs[hi].hermitian_part();
                let m = loewner_margin(&x, &y)?;
                if m < -tol.effective(crate::linalg::spectral_norm(&y)) {
                    return Err(Error::DomainError(format!("inputs {lo} ≤ {hi} violated by {m:e}")));
                }
            }
        }
        InputKind::General => {}
    }
    Ok(())
}

fn validate_params(def: &CheckDefinition, alpha: f64, params: &Params) -> Result<()> {
    if !(0.0..FRAC_PI_2).contains(&alpha) {
        return Err(Error::DomainError(format!("alpha {alpha} outside [0, π/2)")));
    }
    if def.needs_t() {
        let t = params.t.ok_or_else(|| Error::DomainError(format!("{} needs t", def.id)))?;
        let ok = match def.t_range {
            ParamRange::Unit => t > 0.0 && t < 1.0,
            ParamRange::Signed => t > -1.0 && t < 1.0 && t != 0.0,
            ParamRange::NegativeUnit => (-1.0..0.0).contains(&t),
            ParamRange::None => true,
        };
        if !ok {
            return Err(Error::DomainError(format!("t = {t} outside the range of {}", def.id)));
        }
    }
    if def.needs_lambda {
        let l = params.lambda.ok_or_else(|| Error::DomainError(format!("{} needs lambda", def.id)))?;
        if !(l > 0.0 && l < 1.0) {
            return Err(Error::DomainError(format!("lambda = {l} outside (0, 1)")));
        }
    }
    Ok(())
}

fn evaluate_one(
    def: &CheckDefinition,
    inputs: &[CMatrix],
    alpha: f64,
    params: &Params,
    f: Option<&MonotoneRep>,
    tol: &Tolerances,
) -> Result<CheckResult> {
    let ctx = Ctx { inputs, alpha, t: params.t.unwrap_or(f64::NAN), lambda: params.lambda.unwrap_or(f64::NAN), f };
    let sides = (def.evaluate)(&ctx)?;
    let mut best: Option<(f64, Side, f64)> = None;
    for side in sides {
        if !(side.lhs.is_finite() && side.rhs.is_finite() && side.margin.is_finite()) {
            return Err(Error::NonFinite(format!("{} side {:?}: lhs {} rhs {}", def.id, side.name, side.lhs, side.rhs)));
        }
        let tol_eff = tol.effective(side.lhs.abs().max(side.rhs.abs()));
        let slack = side.margin + tol_eff;
        if best.as_ref().is_none_or(|b| slack < b.0) {
            best = Some((slack, side, tol_eff));
        }
    }
    let (slack, side, tol_eff) = best.ok_or_else(|| Error::DomainError(format!("{} produced no sides", def.id)))?;
    Ok(CheckResult {
        check_id: def.id.to_string(),
        pass: slack >= 0.0,
        lhs: side.lhs,
        rhs: side.rhs,
        margin: side.margin,
        tol_effective: tol_eff,
        side: side.name,
        relation: side.relation,
        alpha,
        digest: InputsDigest {
            seed: None,
            dim: inputs[0].dim(),
            alpha_target: alpha,
            condition_cap: DEFAULT_CONDITION_CAP,
            mode: Mode::Certified,
            params: Params { f: f.map(|r| r.name().to_string()), ..params.clone() },
        },
    })
}

/// Evaluates one check on explicit inputs with the supplied α.
///
/// When the check needs `f` and `params.f` is `None`, every builtin
/// representation is tried and the one closest to violation is reported.
pub fn evaluate_check(
    def: &CheckDefinition,
    inputs: &[CMatrix],
    alpha: f64,
    params: &Params,
    tol: &Tolerances,
) -> Result<CheckResult> {
    validate_inputs(def, inputs, tol)?;
    evaluate_validated(def, inputs, alpha, params, tol, &builtin_reps())
}

fn evaluate_validated(
    def: &CheckDefinition,
    inputs: &[CMatrix],
    alpha: f64,
    params: &Params,
    tol: &Tolerances,
    reps: &[MonotoneRep],
) -> Result<CheckResult> {
    validate_params(def, alpha, params)?;
    if !def.needs_f {
        return evaluate_one(def, inputs, alpha, &Params { f: None, ..params.clone() }, None, tol);
    }
    if let Some(name) = &params.f {
        let rep = rep_by_name(name)?;
        return evaluate_one(def, inputs, alpha, params, Some(&rep), tol);
    }
    let mut worst: Option<CheckResult> = None;
    for rep in reps {
        let r = evaluate_one(def, inputs, alpha, params, Some(rep), tol)?;
        if worst.as_ref().is_none_or(|w| r.slack() < w.slack()) {
            worst = Some(r);
        }
    }
    worst.ok_or_else(|| Error::DomainError("no representations to iterate".into()))
}

/// Regenerates the inputs of a trial from its generator key.
pub fn generate_inputs(
    def: &CheckDefinition,
    dim: usize,
    alpha_target: f64,
    seed: u64,
    condition_cap: f64,
) -> Result<Vec<CMatrix>> {
    let spec = |i: usize, alpha: f64| {
        GenSpec::new(dim, alpha, derive_seed(seed, &[TAG_INPUT, i as u64])).with_condition_cap(condition_cap)
    };
    match def.input {
        InputKind::Sectorial => (0..def.arity).map(|i| random_sectorial(&spec(i, alpha_target))).collect(),
        InputKind::Positive => (0..def.arity).map(|i| random_positive_definite(&spec(i, 0.0))).collect(),
        InputKind::General => {
            Ok((0..def.arity).map(|i| random_matrix(derive_seed(seed, &[TAG_INPUT, i as u64]), dim)).collect())
        }
        InputKind::PositiveOrdered => {
            let a = random_positive_definite(&spec(0, 0.0))?;
            let b = random_positive_definite(&spec(1, 0.0))?;
            let mut rng = rng_for(derive_seed(seed, &[TAG_INCREMENT]));
            let mut bump = |m: &CMatrix| {
                let rank = rng.random_range(1..=dim);
                let scale = rng.random_range(0.1..=2.0);
                m + &random_psd_increment(&mut rng, dim, rank, scale)
            };
            let c = bump(&a);
            let d = bump(&b);
            Ok(vec![a, b, c, d])
        }
    }
}

fn sample_unit<R: Rng>(rng: &mut R) -> f64 {
    if rng.random_bool(0.5) {
        PARAM_GRID[rng.random_range(0..PARAM_GRID.len())]
    } else {
        rng.random_range(0.05..=0.95)
    }
}

/// Draws the scalar parameters of a trial.
pub fn sample_params(def: &CheckDefinition, seed: u64) -> Params {
    let mut rng = rng_for(derive_seed(seed, &[TAG_PARAMS]));
    let t = match def.t_range {
        ParamRange::None => None,
        ParamRange::Unit => Some(sample_unit(&mut rng)),
        ParamRange::NegativeUnit => Some(-sample_unit(&mut rng)),
        ParamRange::Signed => {
            let magnitude = sample_unit(&mut rng);
            Some(if rng.random_bool(0.5) { magnitude } else { -magnitude })
        }
    };
    let lambda = def.needs_lambda.then(|| sample_unit(&mut rng));
    Params { t, lambda, f: None }
}

/// α the check is evaluated with: the target or the computed index for
/// sectorial inputs, 0 for inputs where α plays no role.
fn evaluation_alpha(def: &CheckDefinition, inputs: &[CMatrix], alpha_target: f64, mode: Mode) -> Result<f64> {
    if def.input != InputKind::Sectorial {
        return Ok(0.0);
    }
    match mode {
        Mode::Certified => Ok(alpha_target),
        Mode::Tight => inputs.iter().try_fold(0.0f64, |acc, m| Ok(acc.max(sectorial_index(m)?))),
    }
}

/// Key of trial `k` in cell `(check, dim, α)`.
pub fn trial_seed(seed: u64, check_id: &str, dim: usize, alpha: f64, k: usize) -> u64 {
    derive_seed(seed, &[tag(check_id), dim as u64, alpha.to_bits(), k as u64])
}

/// Generates and evaluates the trial described by `key`; the returned digest
/// is `key` with the representation that was closest to violation filled in.
fn run_trial(def: &CheckDefinition, key: &InputsDigest, tol: &Tolerances, reps: &[MonotoneRep]) -> Result<CheckResult> {
    let seed = key.seed.ok_or_else(|| Error::DomainError("digest has no generator seed".into()))?;
    let inputs = generate_inputs(def, key.dim, key.alpha_target, seed, key.condition_cap)?;
    let alpha = evaluation_alpha(def, &inputs, key.alpha_target, key.mode)?;
    let mut r = evaluate_validated(def, &inputs, alpha, &key.params, tol, reps)?;
    let chosen = r.digest.params.f.take();
    r.digest = key.clone();
    r.digest.params.f = chosen;
    Ok(r)
}

/// Re-evaluates a stored trial from its digest with the given tolerances.
pub fn replay(result: &CheckResult, tol: &Tolerances) -> Result<(Vec<CMatrix>, CheckResult)> {
    let def = find_check(&result.check_id)
        .ok_or_else(|| Error::DomainError(format!("unknown check {:?}", result.check_id)))?;
    let d = &result.digest;
    let seed = d.seed.ok_or_else(|| Error::DomainError("digest has no generator seed".into()))?;
    let inputs = generate_inputs(&def, d.dim, d.alpha_target, seed, d.condition_cap)?;
    let r = run_trial(&def, d, tol, &builtin_reps())?;
    Ok((inputs, r))
}

/// A verification campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Campaign {
    pub checks: Vec<String>,
    pub dims: Vec<usize>,
    pub alphas: Vec<f64>,
    pub trials_per_cell: usize,
    pub seed: u64,
    pub tol: Tolerances,
    pub mode: Mode,
    pub condition_cap: f64,
}

impl Campaign {
    /// Every check, dims {2, 3, 5, 8}, α ∈ {0, 0.1, 0.3, 0.6, 0.9, 1.2}, 200 trials, seed 1.
    pub fn default_full() -> Self {
        Self {
            checks: registry().iter().map(|c| c.id.to_string()).collect(),
            dims: vec![2, 3, 5, 8],
            alphas: vec![0.0, 0.1, 0.3, 0.6, 0.9, 1.2],
            trials_per_cell: 200,
            seed: 1,
            tol: Tolerances::harness(),
            mode: Mode::Certified,
            condition_cap: DEFAULT_CONDITION_CAP,
        }
    }

    pub fn validate(&self) -> Result<Vec<CheckDefinition>> {
        if self.checks.is_empty() || self.dims.is_empty() || self.alphas.is_empty() {
            return Err(Error::DomainError("campaign needs at least one check, dim and alpha".into()));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d == 0) {
            return Err(Error::DomainError(format!("invalid dimension {d}")));
        }
        if let Some(a) = self.alphas.iter().find(|a| !(0.0..FRAC_PI_2).contains(*a)) {
            return Err(Error::DomainError(format!("alpha {a} outside [0, π/2)")));
        }
        if !(self.condition_cap >= 1.0 && self.condition_cap.is_finite()) {
            return Err(Error::DomainError(format!("condition cap {} must be ≥ 1", self.condition_cap)));
        }
        self.checks
            .iter()
            .map(|id| find_check(id).ok_or_else(|| Error::DomainError(format!("unknown check {id:?}"))))
            .collect()
    }

    /// Content hash of the configuration.
    pub fn id(&self) -> String {
        let text = serde_json::to_string(self).expect("campaign serializes");
        format!("{:016x}", tag(&text))
    }
}

/// Aggregate of one `(check, dim, α)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub check: String,
    pub dim: usize,
    pub alpha: f64,
    pub trials: usize,
    pub passes: usize,
    pub violations: usize,
    pub errors: usize,
    /// Margin of the trial with the least slack.
    pub worst_margin: Option<f64>,
    pub worst_slack: Option<f64>,
    /// Generator key of that trial.
    pub worst_seed: Option<u64>,
    pub worst: Option<CheckResult>,
    pub first_error: Option<String>,
    pub no_data: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignHeader {
    pub id: String,
    #[serde(flatten)]
    pub config: Campaign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub campaign: CampaignHeader,
    pub mode: Mode,
    pub seed: u64,
    pub cells: Vec<CellReport>,
    pub total_trials: usize,
    pub total_violations: usize,
    pub total_errors: usize,
    /// Green only when every trial passed.
    pub verdict: Verdict,
    /// Set when no trial ran at all; the verdict is then vacuously green.
    pub no_data: bool,
}

impl TrialReport {
    pub fn is_green(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Runs a campaign.
pub fn run_trials(campaign: &Campaign) -> Result<TrialReport> {
    run_trials_with_progress(campaign, |_| {})
}

/// Runs a campaign, calling `progress` after each finished cell.
pub fn run_trials_with_progress(campaign: &Campaign, mut progress: impl FnMut(&CellReport)) -> Result<TrialReport> {
    let defs = campaign.validate()?;
    let reps = builtin_reps();
    let mut cells = Vec::new();
    for def in &defs {
        for &dim in &campaign.dims {
            for &alpha in &campaign.alphas {
                let cell = run_cell(campaign, def, dim, alpha, &reps);
                progress(&cell);
                cells.push(cell);
            }
        }
    }
    let total_trials = cells.iter().map(|c| c.trials).sum();
    let total_violations = cells.iter().map(|c| c.violations).sum();
    let total_errors = cells.iter().map(|c| c.errors).sum();
    let passes: usize = cells.iter().map(|c| c.passes).sum();
    Ok(TrialReport {
        campaign: CampaignHeader { id: campaign.id(), config: campaign.clone() },
        mode: campaign.mode,
        seed: campaign.seed,
        cells,
        total_trials,
        total_violations,
        total_errors,
        verdict: if passes == total_trials { Verdict::Pass } else { Verdict::Fail },
        no_data: total_trials == 0,
    })
}

fn run_cell(campaign: &Campaign, def: &CheckDefinition, dim: usize, alpha: f64, reps: &[MonotoneRep]) -> CellReport {
    let mut cell = CellReport {
        check: def.id.to_string(),
        dim,
        alpha,
        trials: campaign.trials_per_cell,
        passes: 0,
        violations: 0,
        errors: 0,
        worst_margin: None,
        worst_slack: None,
        worst_seed: None,
        worst: None,
        first_error: None,
        no_data: campaign.trials_per_cell == 0,
    };
    for k in 0..campaign.trials_per_cell {
        let seed = trial_seed(campaign.seed, def.id, dim, alpha, k);
        let key = InputsDigest {
            seed: Some(seed),
            dim,
            alpha_target: alpha,
            condition_cap: campaign.condition_cap,
            mode: campaign.mode,
            params: sample_params(def, seed),
        };
        let outcome = run_trial(def, &key, &campaign.tol, reps);
        match outcome {
            Ok(r) => {
                if r.pass {
                    cell.passes += 1;
                } else {
                    cell.violations += 1;
                }
                if cell.worst_slack.is_none_or(|s| r.slack() < s) {
                    cell.worst_slack = Some(r.slack());
                    cell.worst_margin = Some(r.margin);
                    cell.worst_seed = Some(seed);
                    cell.worst = Some(r);
                }
            }
            Err(e) => {
                cell.errors += 1;
                if cell.first_error.is_none() {
                    cell.first_error = Some(format!("trial {k} (seed {seed}): {e}"));
                }
            }
        }
    }
    cell
}

#[cfg(test)]
mod tests;
