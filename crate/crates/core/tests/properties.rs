use accretive::genprop::{random_matrix, random_positive_definite, random_sectorial, random_unitary, rng_for, GenSpec};
use accretive::linalg::{inverse, loewner_margin, spectral_norm};
use accretive::matfun::{apply_monotone, builtin_reps, fractional_power};
use accretive::means::{
    geometric_mean, harmonic_mean, heinz_mean, logarithmic_mean, scalar_geometric_mean, scalar_harmonic_mean,
    scalar_heinz_mean, scalar_logarithmic_mean, sigma_mean,
};
use accretive::numrange::{numerical_radius, sectorial_index};
use accretive::{CMatrix, C64};
use proptest::prelude::*;

fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    spectral_norm(&(a - b)) <= tol * spectral_norm(a).max(spectral_norm(b)).max(1.0)
}

fn sectorial(dim: usize, alpha: f64, seed: u64) -> CMatrix {
    random_sectorial(&GenSpec::new(dim, alpha, seed)).unwrap()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn radius_is_a_norm_between_half_and_full_spectral_norm(n in 1usize..7, seed: u64, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let a = random_matrix(seed, n);
        let w = numerical_radius(&a);
        let norm = spectral_norm(&a);
        prop_assert!(w <= norm * (1.0 + 1e-12) && w >= 0.5 * norm * (1.0 - 1e-12));
        let c = C64::new(re, im);
        prop_assert!((numerical_radius(&a.scale(c)) - c.norm() * w).abs() <= 1e-9 * (1.0 + c.norm() * w));
        let b = random_matrix(seed ^ 1, n);
        prop_assert!(numerical_radius(&(&a + &b)) <= w + numerical_radius(&b) + 1e-9);
    }

    #[test]
    fn radius_and_index_are_unitarily_invariant(n in 1usize..7, seed: u64, alpha in 0.0f64..1.4) {
        let a = sectorial(n, alpha, seed);
        let u = random_unitary(&mut rng_for(seed ^ 7), n);
        let b = &(&u * &a) * &u.adjoint();
        prop_assert!((numerical_radius(&a) - numerical_radius(&b)).abs() <= 1e-9 * numerical_radius(&a));
        prop_assert!((sectorial_index(&a).unwrap() - sectorial_index(&b).unwrap()).abs() <= 1e-7);
    }

    #[test]
    fn generator_respects_its_sector_and_inversion_keeps_it(n in 1usize..9, seed: u64, alpha in 0.0f64..1.5) {
        let a = sectorial(n, alpha, seed);
        let index = sectorial_index(&a).unwrap();
        prop_assert!(index <= alpha + 1e-8);
        let inv = sectorial_index(&inverse(&a).unwrap()).unwrap();
        prop_assert!((inv - index).abs() <= 1e-7);
        prop_assert!((sectorial_index(&a.scale_real(3.5)).unwrap() - index).abs() <= 1e-9);
    }

    #[test]
    fn generator_is_deterministic(n in 1usize..9, seed: u64, alpha in 0.0f64..1.5) {
        prop_assert_eq!(sectorial(n, alpha, seed), sectorial(n, alpha, seed));
    }

    #[test]
    fn square_root_squares_back(n in 1usize..7, seed: u64, alpha in 0.0f64..1.3) {
        let a = sectorial(n, alpha, seed);
        let r = fractional_power(&a, 0.5).unwrap();
        prop_assert!(close(&(&r * &r), &a, 1e-9));
        let ri = fractional_power(&a, -0.5).unwrap();
        prop_assert!(close(&(&r * &ri), &CMatrix::identity(n), 1e-9));
    }

    #[test]
    fn powers_compose(n in 1usize..6, seed: u64, alpha in 0.0f64..1.2, s in 0.05f64..0.5, t in 0.05f64..0.5) {
        let a = sectorial(n, alpha, seed);
        let product = &fractional_power(&a, s).unwrap() * &fractional_power(&a, t).unwrap();
        prop_assert!(close(&product, &fractional_power(&a, s + t).unwrap(), 1e-9));
    }

    #[test]
    fn means_are_symmetric_under_swapping_weights(n in 1usize..6, seed: u64, alpha in 0.0f64..1.2, t in 0.05f64..0.95) {
        let a = sectorial(n, alpha, seed);
        let b = sectorial(n, alpha, seed ^ 3);
        prop_assert!(close(&harmonic_mean(&a, &b, t).unwrap(), &harmonic_mean(&b, &a, 1.0 - t).unwrap(), 1e-10));
        prop_assert!(close(&geometric_mean(&a, &b, t).unwrap(), &geometric_mean(&b, &a, 1.0 - t).unwrap(), 1e-9));
        prop_assert!(close(&heinz_mean(&a, &b, t).unwrap(), &heinz_mean(&b, &a, t).unwrap(), 1e-9));
    }

    #[test]
    fn means_of_equal_arguments_and_scalars(n in 1usize..6, seed: u64, alpha in 0.0f64..1.2, t in 0.05f64..0.95) {
        let a = sectorial(n, alpha, seed);
        for f in builtin_reps() {
            prop_assert!(close(&sigma_mean(&f, &a, &a).unwrap(), &a, 1e-9));
        }
        prop_assert!(close(&logarithmic_mean(&a, &a).unwrap(), &a, 1e-9));
        let x = 0.3 + (seed % 97) as f64 / 10.0;
        let y = 0.2 + (seed % 89) as f64 / 7.0;
        let (sx, sy) = (CMatrix::scalar(n, C64::new(x, 0.0)), CMatrix::scalar(n, C64::new(y, 0.0)));
        let checks = [
            (harmonic_mean(&sx, &sy, t).unwrap(), scalar_harmonic_mean(x, y, t)),
            (geometric_mean(&sx, &sy, t).unwrap(), scalar_geometric_mean(x, y, t)),
            (heinz_mean(&sx, &sy, t).unwrap(), scalar_heinz_mean(x, y, t)),
            (logarithmic_mean(&sx, &sy).unwrap(), scalar_logarithmic_mean(x, y)),
        ];
        for (m, s) in checks {
            prop_assert!(close(&m, &CMatrix::scalar(n, C64::new(s, 0.0)), 1e-10));
        }
    }

    #[test]
    fn monotone_functions_preserve_loewner_order(n in 1usize..6, seed: u64, bump in 0.01f64..3.0) {
        let a = random_positive_definite(&GenSpec::new(n, 0.0, seed)).unwrap();
        let p = random_positive_definite(&GenSpec::new(n, 0.0, seed ^ 9)).unwrap().scale_real(bump);
        let b = &a + &p;
        for f in builtin_reps() {
            let fa = apply_monotone(&f, &a).unwrap().hermitian_part();
            let fb = apply_monotone(&f, &b).unwrap().hermitian_part();
            prop_assert!(loewner_margin(&fa, &fb).unwrap() >= -1e-9 * spectral_norm(&fb));
        }
    }
}
