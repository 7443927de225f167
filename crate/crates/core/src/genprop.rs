//! Seeded generators of test matrices with certified structure.
//!
//! Randomness is counter based: every stream is addressed by a 64-bit key
//! obtained by folding a path of integers into a base seed with the
//! SplitMix64 finalizer, and the key seeds a ChaCha8 generator through 32
//! bytes of further SplitMix64 output. The construction depends only on
//! integer arithmetic, so streams are identical on every platform and any
//! trial can be regenerated in isolation.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::hermitian_function;
use crate::matrix::{CMatrix, C64, I, ZERO};

/// Condition-number cap of the positive part used when none is given.
pub const DEFAULT_CONDITION_CAP: f64 = 10.0;

const TAG_POSITIVE: u64 = 0x5044;
const TAG_SKEW: u64 = 0x534b;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds `path` into `seed`; distinct paths give independent streams.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix64(seed ^ 0x6A09_E667_F3BC_C908), |acc, &p| {
        mix64(acc.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(mix64(p)))
    })
}

/// FNV-1a, used to turn string identifiers into stream tags.
pub fn tag(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// ChaCha8 stream for a key.
pub fn rng_for(key: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    let mut state = key;
    for chunk in bytes.chunks_exact_mut(8) {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        chunk.copy_from_slice(&mix64(state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(bytes)
}

/// Parameters of one generated matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub dim: usize,
    pub alpha_target: f64,
    pub seed: u64,
    pub condition_cap: f64,
}

impl GenSpec {
    pub fn new(dim: usize, alpha_target: f64, seed: u64) -> Self {
        Self { dim, alpha_target, seed, condition_cap: DEFAULT_CONDITION_CAP }
    }

    pub fn with_condition_cap(mut self, cap: f64) -> Self {
        self.condition_cap = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::DomainError("dimension must be positive".into()));
        }
        if !(0.0..FRAC_PI_2).contains(&self.alpha_target) {
            return Err(Error::DomainError(format!(
                "alpha_target {} outside [0, π/2)",
                self.alpha_target
            )));
        }
        if !(self.condition_cap >= 1.0 && self.condition_cap.is_finite()) {
            return Err(Error::DomainError(format!(
                "condition_cap {} must be a finite number ≥ 1",
                self.condition_cap
            )));
        }
        Ok(())
    }
}

pub fn gaussian_matrix<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    CMatrix::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-like unitary from modified Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    loop {
        let g = gaussian_matrix(rng, n);
        let mut cols: Vec<Vec<C64>> = (0..n).map(|j| g.col(j).to_vec()).collect();
        let mut ok = true;
        for j in 0..n {
            for _ in 0..2 {
                for k in 0..j {
                    let (done, rest) = cols.split_at_mut(j);
                    let qk = &done[k];
                    let proj: C64 = qk.iter().zip(rest[0].iter()).map(|(q, x)| q.conj() * x).sum();
                    for (x, q) in rest[0].iter_mut().zip(qk) {
                        *x -= proj * q;
                    }
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for x in cols[j].iter_mut() {
                *x /= norm;
            }
        }
        if ok {
            return CMatrix::from_fn(n, |i, j| cols[j][i]);
        }
    }
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    gaussian_matrix(rng, n).hermitian_part()
}

/// General complex matrix with standard Gaussian entries; no structure.
pub fn random_matrix(seed: u64, n: usize) -> CMatrix {
    gaussian_matrix(&mut rng_for(seed), n)
}

/// `Q diag(λ) Q*` with `λ` log-uniform in `[1, condition_cap]`.
pub fn random_positive_definite(spec: &GenSpec) -> Result<CMatrix> {
    spec.validate()?;
    let mut rng = rng_for(derive_seed(spec.seed, &[TAG_POSITIVE, spec.dim as u64]));
    let n = spec.dim;
    let q = random_unitary(&mut rng, n);
    let log_cap = spec.condition_cap.ln();
    let lambda: Vec<f64> = (0..n).map(|_| (rng.random::<f64>() * log_cap).exp()).collect();
    let mut h = CMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            let mut s = ZERO;
            for k in 0..n {
                s += q[(i, k)] * q[(j, k)].conj() * lambda[k];
            }
            h[(i, j)] = s;
        }
    }
    Ok(h.hermitian_part())
}

/// `A = H^{1/2} (I + iT) H^{1/2}` with `‖T‖ = u · tan(alpha_target)`, `u ∈ [0.5, 1]`.
///
/// For a unit vector `x` and `y = H^{1/2}x`, `⟨Ax, x⟩ = ‖y‖² + i⟨Ty, y⟩`, whose
/// argument is bounded by `arctan ‖T‖ ≤ alpha_target`: the numerical range lies
/// in the sector of half-angle `alpha_target` by construction.
pub fn random_sectorial(spec: &GenSpec) -> Result<CMatrix> {
    let h = random_positive_definite(spec)?;
    let n = spec.dim;
    let root = hermitian_function(&h, |l| l.max(0.0).sqrt())?;
    if spec.alpha_target == 0.0 {
        return Ok(&root * &root);
    }
    let mut rng = rng_for(derive_seed(spec.seed, &[TAG_SKEW, n as u64]));
    let t0 = random_hermitian(&mut rng, n);
    let u: f64 = rng.random_range(0.5..=1.0);
    let norm = crate::linalg::spectral_norm(&t0);
    let t = if norm > 0.0 { t0.scale_real(u * spec.alpha_target.tan() / norm) } else { t0 };
    let inner = &CMatrix::identity(n) + &t.scale(I);
    Ok(&(&root * &inner) * &root)
}

/// Positive semidefinite increment `G G*` of the given rank, scaled to spectral norm `scale`.
pub fn random_psd_increment<R: Rng>(rng: &mut R, n: usize, rank: usize, scale: f64) -> CMatrix {
    let g = gaussian_matrix(rng, n);
    let mut low = CMatrix::zeros(n);
    for j in 0..rank.min(n) {
        for i in 0..n {
            low[(i, j)] = g[(i, j)];
        }
    }
    let p = (&low * &low.adjoint()).hermitian_part();
    let norm = crate::linalg::spectral_norm(&p);
    if norm > 0.0 {
        p.scale_real(scale / norm)
    } else {
        p
    }
}

/// `[[0, A], [B, 0]]`.
pub fn block_antidiagonal(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    CMatrix::block_antidiagonal(a, b)
}
