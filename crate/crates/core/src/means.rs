//! Kubo–Ando means of accretive matrices.
//!
//! `A σ_f B = ∫ A !_s B dν_f(s)` with the weighted harmonic mean
//! `A !_s B = ((1 − s) A⁻¹ + s B⁻¹)⁻¹ = A ((1 − s) B + s A)⁻¹ B`, so each
//! quadrature node costs one LU factorization and no explicit inverse.
//!
//! Weighted geometric means are not fed to the quadrature directly. The
//! eigenvalues of `A⁻¹B` may have arguments up to `2α`, where the tanh-sinh
//! rule for `x^t` loses accuracy, while `A #_{1/2} B` is available to full
//! precision from the arithmetic–harmonic iteration. The identities
//! `A #_t B = A #_{2t} (A # B)` for `t ≤ 1/2` and
//! `A #_t B = (A # B) #_{2t−1} B` for `t ≥ 1/2` then leave a quadrature
//! whose spectrum has arguments at most `α`.

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};
use crate::linalg::{Lu, PencilSolver};
use crate::matfun::{ensure_accretive, power_rep, MonotoneRep, RepKind};
use crate::matrix::CMatrix;
use crate::numrange::min_real_part;
use crate::tol;

const AH_MAX_ITERATIONS: usize = 100;

fn check_pair(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    ensure_accretive(a)?;
    ensure_accretive(b)
}

/// `A ((1 − s) B + s A)⁻¹ B`, unchecked.
fn harmonic_unchecked(a: &CMatrix, b: &CMatrix, s: f64, one_minus_s: f64) -> Result<CMatrix> {
    let m = b.lin_comb(one_minus_s, a, s);
    Ok(a * &Lu::new(&m)?.solve(b))
}

/// `A !_s B` for accretive `A, B` and `s ∈ [0, 1]`; `A !_0 B = A`, `A !_1 B = B`.
pub fn harmonic_mean(a: &CMatrix, b: &CMatrix, s: f64) -> Result<CMatrix> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::DomainError(format!("harmonic weight {s} outside [0, 1]")));
    }
    check_pair(a, b)?;
    if s == 0.0 {
        return Ok(a.clone());
    }
    if s == 1.0 {
        return Ok(b.clone());
    }
    harmonic_unchecked(a, b, s, 1.0 - s)
}

/// `Σ_i w_i · A !_{s_i} B = A Σ_i w_i ((1 − s_i) B + s_i A)⁻¹ B` over the nodes of `f`, unchecked.
fn node_sum(f: &MonotoneRep, a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let mut solver = PencilSolver::new(b, Some(a), b);
    for node in f.nodes() {
        solver.add(node.one_minus_s, node.s, node.weight)?;
    }
    Ok(a * &solver.finish())
}

/// `c` such that `A⁻¹(cB)` has eigenvalue moduli centred on 1.
///
/// Eigenvalue moduli of `A⁻¹B` lie in `[m_B / ‖A‖, ‖B‖ / m_A]` with
/// `m = λ_min(Re ·)`; `‖·‖_F` stands in for the spectral norm.
fn pair_centre(a: &CMatrix, b: &CMatrix) -> f64 {
    ((min_real_part(a) * a.frobenius_norm()) / (min_real_part(b) * b.frobenius_norm())).sqrt()
}

/// `A # B` by the arithmetic–harmonic iteration
/// `A' = (A + B)/2`, `B' = 2 A (A + B)⁻¹ B`, which preserves `A # B`.
///
/// On eigenvalues of `A⁻¹B` one step acts as `x ↦ 4x / (1 + x)²`, which
/// never increases `|arg x|` and converges quadratically near `x = 1`.
fn arithmetic_harmonic(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let c = pair_centre(a, b);
    let mut x = a.clone();
    let mut y = b.scale_real(c);
    let mut last = f64::INFINITY;
    for _ in 0..AH_MAX_ITERATIONS {
        let sum = &x + &y;
        let h = (&x * &Lu::new(&sum)?.solve(&y)).scale_real(2.0);
        x = sum.scale_real(0.5);
        y = h;
        let gap = (&x - &y).frobenius_norm() / x.frobenius_norm();
        if gap <= 4.0 * f64::EPSILON || (gap >= last && gap < 1e-12) {
            break;
        }
        last = gap;
    }
    Ok(x.lin_comb(0.5, &y, 0.5).scale_real(1.0 / c.sqrt()))
}

/// `A #_t B` from a node sum for `x^t`, with `B` rescaled by homogeneity.
fn power_quadrature(a: &CMatrix, b: &CMatrix, t: f64, nodes: usize) -> Result<CMatrix> {
    let rep = power_rep(t, nodes)?;
    let c = pair_centre(a, b);
    Ok(node_sum(&rep, a, &b.scale_real(c))?.scale_real(c.powf(-t)))
}

/// Precomputed `A # B` shared by every weighted geometric mean of one pair.
struct Ladder<'a> {
    a: &'a CMatrix,
    b: &'a CMatrix,
    mid: CMatrix,
    nodes: usize,
}

impl<'a> Ladder<'a> {
    fn new(a: &'a CMatrix, b: &'a CMatrix, nodes: usize) -> Result<Self> {
        Ok(Self { a, b, mid: arithmetic_harmonic(a, b)?, nodes })
    }

    fn at(&self, t: f64) -> Result<CMatrix> {
        if t == 0.5 {
            Ok(self.mid.clone())
        } else if t < 0.5 {
            power_quadrature(self.a, &self.mid, 2.0 * t, self.nodes)
        } else {
            power_quadrature(&self.mid, self.b, 2.0 * t - 1.0, self.nodes)
        }
    }
}

/// `A σ_f B` for accretive `A, B`. Power representations are routed through
/// [`geometric_mean_with_nodes`] with the representation's node count.
pub fn sigma_mean(f: &MonotoneRep, a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_pair(a, b)?;
    match f.kind() {
        RepKind::Power { t } => Ladder::new(a, b, f.nodes().len())?.at(t),
        RepKind::HarmonicAtom { .. } => node_sum(f, a, b),
    }
}

/// `A #_t B`, `t ∈ (0, 1)`, with the default rule for `x^t`.
pub fn geometric_mean(a: &CMatrix, b: &CMatrix, t: f64) -> Result<CMatrix> {
    geometric_mean_with_nodes(a, b, t, tol::MONOTONE_NODES)
}

pub fn geometric_mean_with_nodes(a: &CMatrix, b: &CMatrix, t: f64, nodes: usize) -> Result<CMatrix> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::DomainError(format!("geometric weight {t} outside (0, 1)")));
    }
    check_pair(a, b)?;
    Ladder::new(a, b, nodes)?.at(t)
}

/// `L(A, B) = ∫₀¹ A #_t B dt` with the default Gauss–Legendre and power rules.
pub fn logarithmic_mean(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    logarithmic_mean_with(a, b, tol::LOG_MEAN_NODES, tol::MONOTONE_NODES)
}

/// `L(A, B)` with `k` Gauss–Legendre nodes in `t` and `nodes`-point power rules.
pub fn logarithmic_mean_with(a: &CMatrix, b: &CMatrix, k: usize, nodes: usize) -> Result<CMatrix> {
    if k < 4 {
        return Err(Error::DomainError(format!("logarithmic mean needs at least 4 nodes, got {k}")));
    }
    check_pair(a, b)?;
    let rule = GaussLegendre::new(k).map_err(|e| Error::DomainError(e.to_string()))?;
    let ladder = Ladder::new(a, b, nodes)?;
    let mut out = CMatrix::zeros(a.dim());
    for &(x, w) in rule.as_node_weight_pairs() {
        out = out.lin_comb(1.0, &ladder.at(0.5 * (x + 1.0))?, 0.5 * w);
    }
    Ok(out)
}

/// `H_t(A, B) = (A #_t B + A #_{1−t} B) / 2` for `t ∈ [0, 1]`, with
/// `#_0 = A` and `#_1 = B` at the endpoints.
pub fn heinz_mean(a: &CMatrix, b: &CMatrix, t: f64) -> Result<CMatrix> {
    heinz_mean_with_nodes(a, b, t, tol::MONOTONE_NODES)
}

pub fn heinz_mean_with_nodes(a: &CMatrix, b: &CMatrix, t: f64, nodes: usize) -> Result<CMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::DomainError(format!("Heinz parameter {t} outside [0, 1]")));
    }
    check_pair(a, b)?;
    if t == 0.0 || t == 1.0 {
        return Ok(a.lin_comb(0.5, b, 0.5));
    }
    let ladder = Ladder::new(a, b, nodes)?;
    if t == 0.5 {
        return Ok(ladder.mid);
    }
    Ok(ladder.at(t)?.lin_comb(0.5, &ladder.at(1.0 - t)?, 0.5))
}

/// `((1 − s)/a + s/b)⁻¹`.
pub fn scalar_harmonic_mean(a: f64, b: f64, s: f64) -> f64 {
    1.0 / ((1.0 - s) / a + s / b)
}

/// `a^{1−t} b^t`.
pub fn scalar_geometric_mean(a: f64, b: f64, t: f64) -> f64 {
    a.powf(1.0 - t) * b.powf(t)
}

/// `(b − a) / (ln b − ln a)`, continuous at `a = b`.
pub fn scalar_logarithmic_mean(a: f64, b: f64) -> f64 {
    let x = (b - a) / a;
    if x == 0.0 {
        a
    } else {
        a * x / x.ln_1p()
    }
}

/// `(a #_t b + a #_{1−t} b) / 2`.
pub fn scalar_heinz_mean(a: f64, b: f64, t: f64) -> f64 {
    0.5 * (scalar_geometric_mean(a, b, t) + scalar_geometric_mean(a, b, 1.0 - t))
}
