use std::collections::HashSet;
use std::f64::consts::FRAC_PI_6;

use super::*;
use crate::matrix::C64;
use crate::numrange::numerical_radius_dense;

fn small(checks: &[&str], alphas: &[f64], trials: usize) -> Campaign {
    Campaign {
        checks: checks.iter().map(|s| s.to_string()).collect(),
        dims: vec![2, 3],
        alphas: alphas.to_vec(),
        trials_per_cell: trials,
        ..Campaign::default_full()
    }
}

fn check(id: &str) -> CheckDefinition {
    find_check(id).unwrap()
}

#[test]
fn registry_is_complete_and_unique() {
    let ids: Vec<_> = registry().iter().map(|c| c.id).collect();
    let set: HashSet<_> = ids.iter().collect();
    assert_eq!(set.len(), ids.len());
    for k in 1..=17 {
        assert!(set.contains(&format!("T{k}").as_str()), "T{k}");
    }
    for k in 1..=15 {
        assert!(set.contains(&format!("L{k}").as_str()), "L{k}");
    }
    assert!(set.contains(&"E1"));
}

#[test]
fn t1_on_diagonal_is_tight() {
    let a = CMatrix::from_real_diag(&[1.0, 2.0]);
    let r = evaluate_check(&check("T1"), &[a], 0.0, &Params::default(), &Tolerances::harness()).unwrap();
    assert!(r.pass);
    assert!((r.lhs - 2.0).abs() < 1e-12 && (r.rhs - 2.0).abs() < 1e-12);
    assert!(r.margin.abs() < 1e-12);
}

#[test]
fn t7_and_t12_on_identity() {
    let i = CMatrix::identity(2);
    let tol = Tolerances::harness();
    let r = evaluate_check(&check("T7"), &[i.clone(), i.clone()], 0.0, &Params::default(), &tol).unwrap();
    assert!(r.pass && (r.lhs - 1.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-12);
    let r = evaluate_check(&check("T12"), &[i.clone(), i], 0.0, &Params::default(), &tol).unwrap();
    assert!(r.pass && (r.lhs - 1.0).abs() < 1e-12 && (r.rhs - 2.0).abs() < 1e-12);
}

#[test]
fn t3_alpha_policy_regression() {
    let a = CMatrix::from_rows(&[vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)], vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]])
        .unwrap();
    let alpha = sectorial_index(&a).unwrap();
    assert!((alpha - FRAC_PI_6).abs() < 1e-9);
    let r = evaluate_check(&check("T3"), std::slice::from_ref(&a), alpha, &Params::default(), &Tolerances::harness())
        .unwrap();
    let w = numerical_radius_dense(&a, 100_000);
    let w_re = numerical_radius_dense(&a.hermitian_part(), 100_000);
    assert!((r.lhs - w).abs() < 1e-8 && (w - 1.5).abs() < 1e-8);
    assert!((r.rhs - w_re / alpha.cos()).abs() < 1e-8);
    assert!(r.pass);
    // w(A) = w(Re A) here, so the bound holds even without the sec factor.
    let r = evaluate_check(&check("T3"), &[a], 0.0, &Params::default(), &Tolerances::harness()).unwrap();
    assert!(r.pass && r.margin.abs() < 1e-9);
}

#[test]
fn wrong_arity_and_non_accretive_are_errors() {
    let tol = Tolerances::harness();
    let i = CMatrix::identity(2);
    assert!(evaluate_check(&check("T7"), std::slice::from_ref(&i), 0.0, &Params::default(), &tol).is_err());
    let neg = CMatrix::from_real_diag(&[-1.0, 1.0]);
    let e = evaluate_check(&check("T1"), &[neg], 0.0, &Params::default(), &tol).unwrap_err();
    assert_eq!(e.kind(), "NotAccretive");
    let e = evaluate_check(&check("T4"), &[i], 0.0, &Params::default(), &tol).unwrap_err();
    assert_eq!(e.kind(), "DomainError");
}

#[test]
fn zero_trials_is_flagged() {
    let report = run_trials(&small(&["T1"], &[0.0], 0)).unwrap();
    assert!(report.no_data && report.is_green());
    assert!(report.cells.iter().all(|c| c.no_data && c.worst.is_none()));
}

#[test]
fn alpha_zero_campaign_passes() {
    let ids: Vec<_> = registry().iter().map(|c| c.id).collect();
    let report = run_trials(&small(&ids, &[0.0], 3)).unwrap();
    for c in &report.cells {
        assert_eq!(c.passes, c.trials, "{} dim {}: {:?}", c.check, c.dim, c.first_error);
    }
    assert!(report.is_green());
}

#[test]
fn passes_survive_larger_alpha() {
    let tol = Tolerances::harness();
    let reps = builtin_reps();
    for def in registry().iter().filter(|d| d.input == InputKind::Sectorial) {
        for k in 0..3 {
            let alpha = 0.6;
            let seed = trial_seed(7, def.id, 3, alpha, k);
            let params = sample_params(def, seed);
            let inputs = generate_inputs(def, 3, alpha, seed, DEFAULT_CONDITION_CAP).unwrap();
            let base = evaluate_validated(def, &inputs, alpha, &params, &tol, &reps).unwrap();
            let wider = evaluate_validated(def, &inputs, alpha + 0.1, &params, &tol, &reps).unwrap();
            assert!(base.pass && wider.pass, "{} trial {k}", def.id);
        }
    }
}

#[test]
fn replay_is_bit_identical() {
    let report = run_trials(&small(&["T9", "L15", "T16"], &[0.3], 2)).unwrap();
    for cell in &report.cells {
        let worst = cell.worst.as_ref().unwrap();
        let (_, again) = replay(worst, &report.campaign.config.tol).unwrap();
        assert_eq!(again.lhs.to_bits(), worst.lhs.to_bits());
        assert_eq!(again.rhs.to_bits(), worst.rhs.to_bits());
        assert_eq!(&again, worst);
    }
}

#[test]
fn campaigns_are_deterministic() {
    let c = small(&["T7", "L1"], &[0.1, 0.9], 2);
    let a = serde_json::to_string(&run_trials(&c).unwrap()).unwrap();
    let b = serde_json::to_string(&run_trials(&c).unwrap()).unwrap();
    assert_eq!(a, b);
    let d = Campaign { seed: 2, ..c };
    assert_ne!(a, serde_json::to_string(&run_trials(&d).unwrap()).unwrap());
}

#[test]
fn invalid_campaigns_are_rejected() {
    assert!(small(&["T99"], &[0.0], 1).validate().is_err());
    assert!(small(&["T1"], &[1.6], 1).validate().is_err());
    assert!(Campaign { dims: vec![], ..small(&["T1"], &[0.0], 1) }.validate().is_err());
}
