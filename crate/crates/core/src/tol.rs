//! Tolerances and algorithm parameters shared across the crate.
//!
//! Every threshold used by the kernels, the matrix functions and the
//! verification harness lives here so that a campaign can be reproduced
//! from its report header alone.

use serde::{Deserialize, Serialize};

/// Default absolute tolerance for matrix-level comparisons.
pub const ATOL: f64 = 1e-10;
/// Default relative tolerance for matrix-level comparisons.
pub const RTOL: f64 = 1e-8;

/// Asymmetry `‖H − H*‖_max / max(1, ‖H‖_max)` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Jacobi convergence: off-diagonal Frobenius mass below `n² · JACOBI_OFF_TOL · ‖H‖_F`.
pub const JACOBI_OFF_TOL: f64 = 1e-14;
/// Sweep cap for the cyclic Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Coarse θ-grid size for the numerical radius and boundary scans.
pub const RADIUS_GRID: usize = 1024;
/// Golden-section refinement stops once the bracket is narrower than this (radians).
pub const RADIUS_BRACKET: f64 = 1e-10;

/// Default number of tanh-sinh nodes for Löwner measures.
pub const MONOTONE_NODES: usize = 96;
/// Default number of Gauss–Legendre nodes in t for the logarithmic mean.
pub const LOG_MEAN_NODES: usize = 32;
/// Relative tolerance of the scalar validation every representation must pass.
pub const REP_VALIDATION_RTOL: f64 = 1e-7;
/// Scalar validation grid.
pub const REP_VALIDATION_GRID: [f64; 4] = [0.1, 0.5, 2.0, 10.0];

/// Absolute/relative tolerance pair.
///
/// The effective tolerance at scale `s` is `atol + rtol · s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub atol: f64,
    pub rtol: f64,
}

impl Tolerances {
    pub const fn new(atol: f64, rtol: f64) -> Self {
        Self { atol, rtol }
    }

    /// Tolerances used by the inequality checks of the harness.
    pub const fn harness() -> Self {
        Self { atol: 1e-9, rtol: 1e-7 }
    }

    pub fn effective(&self, scale: f64) -> f64 {
        self.atol + self.rtol * scale.abs()
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { atol: ATOL, rtol: RTOL }
    }
}
