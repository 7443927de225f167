//! Acceptance run: eight criteria, one line each, non-zero exit on any failure.
//!
//! Oracles here are deliberately independent of the code under test: the
//! numerical radius is checked against a dense angle grid using the Jacobi
//! eigensolver, and weighted geometric means against the Hermitian spectral
//! calculus formula.

use std::process::ExitCode;
use std::time::Instant;

use accretive::genprop::{derive_seed, random_matrix, random_positive_definite, random_sectorial, rng_for, GenSpec};
use accretive::harness::{run_trials, Campaign};
use accretive::linalg::{hermitian_eigen, hermitian_function, spectral_norm};
use accretive::matfun::{apply_monotone, builtin_reps, fractional_power, fractional_power_with_nodes};
use accretive::means::{
    geometric_mean, geometric_mean_with_nodes, heinz_mean_with_nodes, logarithmic_mean_with,
};
use accretive::numrange::{numerical_radius, sectorial_index};
use accretive::CMatrix;
use rand::Rng;

const ALPHAS: [f64; 6] = [0.0, 0.1, 0.3, 0.6, 0.9, 1.2];
const DIMS: [usize; 4] = [2, 3, 5, 8];
const PARAMS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}

fn positive(dim: usize, seed: u64) -> CMatrix {
    random_positive_definite(&GenSpec::new(dim, 0.0, seed)).unwrap()
}

/// `max_θ ‖Re(e^{iθ}A)‖` over `points` equally spaced angles in `[0, π)`.
fn dense_radius(a: &CMatrix, points: usize) -> f64 {
    let h = a.hermitian_part();
    let k = a.skew_hermitian_part();
    (0..points)
        .map(|j| {
            let theta = std::f64::consts::PI * j as f64 / points as f64;
            let e = hermitian_eigen(&h.lin_comb(theta.cos(), &k, -theta.sin())).unwrap();
            e.max().max(-e.min())
        })
        .fold(0.0, f64::max)
}

/// `A^{1/2} (A^{−1/2} B A^{−1/2})^t A^{1/2}` for positive definite `A, B`.
fn hermitian_geometric(a: &CMatrix, b: &CMatrix, t: f64) -> CMatrix {
    let half = hermitian_function(a, f64::sqrt).unwrap();
    let inv_half = hermitian_function(a, |x| 1.0 / x.sqrt()).unwrap();
    let inner = (&(&inv_half * b) * &inv_half).hermitian_part();
    let power = hermitian_function(&inner, |x| x.powf(t)).unwrap();
    &(&half * &power) * &half
}

fn criteria_1_and_8() -> (Outcome, Outcome) {
    let campaign = Campaign::default_full();
    let start = Instant::now();
    let first = run_trials(&campaign).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let worst = first
        .cells
        .iter()
        .filter_map(|c| c.worst.as_ref())
        .min_by(|x, y| x.slack().total_cmp(&y.slack()))
        .unwrap();
    let c1 = outcome(
        first.total_violations == 0 && first.total_errors == 0 && !first.no_data && first.is_green(),
        format!(
            "{} trials in {} cells, {} violations, {} errors, least slack {:.3e} ({} {}), {elapsed:.0}s",
            first.total_trials,
            first.cells.len(),
            first.total_violations,
            first.total_errors,
            worst.slack(),
            worst.check_id,
            worst.side
        ),
    );
    let a = serde_json::to_string_pretty(&first).unwrap();
    let b = serde_json::to_string_pretty(&run_trials(&campaign).unwrap()).unwrap();
    let c8 = outcome(a == b, format!("{} report bytes, identical: {}", a.len(), a == b));
    (c1, c8)
}

fn criterion_2() -> Outcome {
    let mut rng = rng_for(derive_seed(2, &[]));
    let reps = builtin_reps();
    let (mut power_norm, mut f_norm) = (0.0f64, 0.0f64);
    let (mut product_excess, mut sum_excess) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for trial in 0..100u64 {
        let dim = DIMS[trial as usize % DIMS.len()];
        let a = positive(dim, derive_seed(20, &[trial]));
        let b = positive(dim, derive_seed(21, &[trial]));
        let t = PARAMS[rng.random_range(0..PARAMS.len())];
        let na = spectral_norm(&a);

        power_norm = power_norm.max(rel(spectral_norm(&fractional_power(&a, t).unwrap()), na.powf(t)));

        let wab = numerical_radius(&(&a * &b));
        let bound = numerical_radius(&a) * numerical_radius(&b);
        product_excess = product_excess.max((wab - bound) / bound);

        for f in &reps {
            f_norm = f_norm.max(rel(spectral_norm(&apply_monotone(f, &a).unwrap()), f.scalar_eval(na)));
        }

        let lhs = spectral_norm(&fractional_power(&(&a + &b), t).unwrap());
        let rhs = spectral_norm(&(&fractional_power(&a, t).unwrap() + &fractional_power(&b, t).unwrap()));
        sum_excess = sum_excess.max((lhs - rhs) / rhs);
    }
    let tol = 1e-7;
    outcome(
        power_norm <= tol && f_norm <= tol && product_excess <= tol && sum_excess <= tol,
        format!(
            "max rel err ‖A^t‖ {power_norm:.2e}, ‖f(A)‖ {f_norm:.2e}; max rel excess w(AB) {product_excess:.2e}, \
             ‖(A+B)^t‖ {sum_excess:.2e}"
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for trial in 0..100u64 {
        let dim = 2 + (trial as usize % 5);
        let a = random_matrix(derive_seed(3, &[trial]), dim);
        worst = worst.max(rel(numerical_radius(&a), dense_radius(&a, 100_000)));
    }
    outcome(worst <= 1e-8, format!("max rel diff vs 1e5-point grid {worst:.2e}"))
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for trial in 0..100u64 {
        let dim = DIMS[trial as usize % DIMS.len()];
        let a = positive(dim, derive_seed(40, &[trial]));
        let b = positive(dim, derive_seed(41, &[trial]));
        for t in [0.25, 0.5, 0.75] {
            let diff = &geometric_mean(&a, &b, t).unwrap() - &hermitian_geometric(&a, &b, t);
            worst = worst.max(spectral_norm(&diff));
        }
    }
    outcome(worst <= 1e-7, format!("max spectral-norm diff {worst:.2e}"))
}

fn criterion_5() -> Outcome {
    let mut rng = rng_for(derive_seed(5, &[]));
    let (mut index_excess, mut power_excess) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for draw in 0..1000u64 {
        let alpha = ALPHAS[draw as usize % ALPHAS.len()];
        let dim = DIMS[(draw as usize / ALPHAS.len()) % DIMS.len()];
        let a = random_sectorial(&GenSpec::new(dim, alpha, derive_seed(50, &[draw]))).unwrap();
        index_excess = index_excess.max(sectorial_index(&a).unwrap() - alpha);
        let t = PARAMS[rng.random_range(0..PARAMS.len())];
        let at = fractional_power(&a, t).unwrap();
        power_excess = power_excess.max(sectorial_index(&at).unwrap() - t * alpha);
    }
    outcome(
        index_excess <= 1e-8 && power_excess <= 1e-6,
        format!("max index − α {index_excess:.2e}, max index(A^t) − tα {power_excess:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let (mut radius, mut norm) = (0.0f64, 0.0f64);
    for trial in 0..100u64 {
        let dim = DIMS[trial as usize % DIMS.len()];
        let a = positive(dim, derive_seed(60, &[trial]));
        let b = positive(dim, derive_seed(61, &[trial]));
        let block = CMatrix::block_antidiagonal(&a, &b).unwrap();
        radius = radius.max(rel(numerical_radius(&block), 0.5 * spectral_norm(&(&a + &b))));
        let expected = spectral_norm(&a).max(spectral_norm(&b));
        norm = norm.max((spectral_norm(&block) - expected).abs() / expected.max(1.0));
    }
    outcome(
        radius <= 1e-7 && norm <= 1e-9,
        format!("max rel diff w(block) {radius:.2e}, max diff ‖block‖ {norm:.2e}"),
    )
}

fn criterion_7() -> Outcome {
    let mut worst = 0.0f64;
    let mut which = String::new();
    let mut rng = rng_for(derive_seed(7, &[]));
    for case in 0..50u64 {
        let alpha = ALPHAS[case as usize % ALPHAS.len()];
        let dim = DIMS[(case as usize / ALPHAS.len()) % DIMS.len()];
        let a = random_sectorial(&GenSpec::new(dim, alpha, derive_seed(70, &[case]))).unwrap();
        let b = random_sectorial(&GenSpec::new(dim, alpha, derive_seed(71, &[case]))).unwrap();
        let t = PARAMS[rng.random_range(0..PARAMS.len())];
        let pairs: [(&str, CMatrix, CMatrix); 5] = [
            ("power", fractional_power_with_nodes(&a, t, 96).unwrap(), fractional_power_with_nodes(&a, t, 192).unwrap()),
            (
                "inverse power",
                fractional_power_with_nodes(&a, -t, 96).unwrap(),
                fractional_power_with_nodes(&a, -t, 192).unwrap(),
            ),
            (
                "geometric",
                geometric_mean_with_nodes(&a, &b, t, 96).unwrap(),
                geometric_mean_with_nodes(&a, &b, t, 192).unwrap(),
            ),
            ("heinz", heinz_mean_with_nodes(&a, &b, t, 96).unwrap(), heinz_mean_with_nodes(&a, &b, t, 192).unwrap()),
            (
                "logarithmic",
                logarithmic_mean_with(&a, &b, 32, 96).unwrap(),
                logarithmic_mean_with(&a, &b, 64, 192).unwrap(),
            ),
        ];
        for (name, coarse, fine) in &pairs {
            let d = spectral_norm(&(coarse - fine));
            if d > worst {
                worst = d;
                which = format!("{name}, case {case}, n={dim}, α={alpha}");
            }
        }
    }
    outcome(worst < 1e-8, format!("max change {worst:.2e} ({which})"))
}

fn main() -> ExitCode {
    let (c1, c8) = criteria_1_and_8();
    let results = [
        (1, "default campaign", c1),
        (2, "positive-matrix collapse", criterion_2()),
        (3, "numerical radius vs dense grid", criterion_3()),
        (4, "geometric mean vs spectral formula", criterion_4()),
        (5, "sector certificates", criterion_5()),
        (6, "block identities", criterion_6()),
        (7, "quadrature convergence", criterion_7()),
        (8, "determinism", c8),
    ];
    for (n, name, o) in &results {
        println!("criterion {n} [{name}]: {} - {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if results.iter().all(|r| r.2.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
