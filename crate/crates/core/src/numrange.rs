//! Numerical radius, numerical-range boundary and sectorial index.
//!
//! Everything here goes through the support function of the numerical range,
//! `h(θ) = λ_max(Re(e^{iθ}A))`, and its counterpart for the imaginary part.

use std::cell::RefCell;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{extreme_eigenvalues, hermitian_eigen, imag_part, real_part, spectral_norm, EigenWorkspace};
use crate::matrix::{CMatrix, C64};
use crate::tol;

/// Summary of where a matrix sits relative to the right half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorProfile {
    pub accretive: bool,
    /// Sectorial index; `None` when the matrix is not accretive.
    pub alpha: Option<f64>,
    pub numerical_radius: f64,
    pub spectral_norm: f64,
    /// `λ_min(Re A)`.
    pub min_real_part: f64,
}

/// A point `⟨A x, x⟩` of the numerical range attained by the unit vector `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub z: C64,
    pub vector: Vec<C64>,
}

/// `Re(e^{iθ}A) = cos θ · Re A − sin θ · Im A`.
struct Pencil {
    re: CMatrix,
    im: CMatrix,
    ws: RefCell<EigenWorkspace>,
}

impl Pencil {
    fn new(a: &CMatrix) -> Self {
        Self { re: real_part(a), im: imag_part(a), ws: RefCell::new(EigenWorkspace::new(a.dim())) }
    }

    fn rotated(&self, theta: f64) -> CMatrix {
        self.re.lin_comb(theta.cos(), &self.im, -theta.sin())
    }

    /// Extreme eigenvalues of `p · Re A + q · Im A`.
    fn extremes(&self, p: f64, q: f64) -> (f64, f64) {
        let mut ws = self.ws.borrow_mut();
        for ((dst, &x), &y) in ws.buf.iter_mut().zip(self.re.as_slice()).zip(self.im.as_slice()) {
            *dst = x * p + y * q;
        }
        ws.extremes()
    }

    /// `λ_max(Re(e^{iθ}A))`.
    fn support(&self, theta: f64) -> f64 {
        self.extremes(theta.cos(), -theta.sin()).1
    }

    /// `‖Re(e^{iθ}A)‖ = max(h(θ), h(θ + π))`; π-periodic with maximum `w(A)`.
    fn spread(&self, theta: f64) -> f64 {
        let (lo, hi) = self.extremes(theta.cos(), -theta.sin());
        hi.max(-lo)
    }
}

/// `w(A)` with the default grid size.
pub fn numerical_radius(a: &CMatrix) -> f64 {
    numerical_radius_with_grid(a, tol::RADIUS_GRID)
}

#[derive(PartialEq)]
struct Interval {
    bound: f64,
    lo: usize,
    hi: usize,
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bound.total_cmp(&other.bound)
    }
}

/// `w(A) = max_θ ‖Re(e^{iθ}A)‖` resolved to an `m`-point grid on `[0, 2π)`,
/// followed by local refinement of each candidate maximum.
///
/// `g(θ) = ‖Re(e^{iθ}A)‖` is π-periodic and Lipschitz with constant
/// `L = ‖Re A‖ + ‖Im A‖ ≥ w(A)`, so on an interval with end values `g_a, g_b`
/// and width `δ` it cannot exceed `(g_a + g_b + L δ) / 2`. Intervals are split
/// best-first until they either cannot beat the running best or reach the
/// grid spacing `2π/m`; this visits every grid cell that a full scan would
/// refine, at a fraction of the cost. Each surviving local maximum is then
/// refined by Brent's method to a bracket of `1e−10 + √ε|θ|` rad. The returned value is
/// the largest `g` evaluated, hence never above `w(A)` beyond eigensolver
/// rounding.
pub fn numerical_radius_with_grid(a: &CMatrix, m: usize) -> f64 {
    let pencil = Pencil::new(a);
    if pencil.im.max_abs() == 0.0 {
        return pencil.spread(0.0);
    }
    let spacing = TAU / m.max(8) as f64;
    const COARSE: usize = 16;
    let mut pts: Vec<(f64, f64)> = (0..=COARSE)
        .map(|k| {
            let theta = PI * k as f64 / COARSE as f64;
            (theta, if k == COARSE { f64::NAN } else { pencil.spread(theta) })
        })
        .collect();
    pts[COARSE].1 = pts[0].1;
    let lip = pts[0].1 + pts[COARSE / 2].1;
    let mut best = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let bound = |p: &[(f64, f64)], i: usize, j: usize| 0.5 * (p[i].1 + p[j].1 + lip * (p[j].0 - p[i].0));

    let mut heap: BinaryHeap<Interval> =
        (0..COARSE).map(|k| Interval { bound: bound(&pts, k, k + 1), lo: k, hi: k + 1 }).collect();
    while let Some(iv) = heap.pop() {
        if iv.bound <= best {
            break;
        }
        let (ta, tb) = (pts[iv.lo].0, pts[iv.hi].0);
        if tb - ta <= spacing {
            continue;
        }
        let mid = 0.5 * (ta + tb);
        let gm = pencil.spread(mid);
        best = best.max(gm);
        pts.push((mid, gm));
        let k = pts.len() - 1;
        for (lo, hi) in [(iv.lo, k), (k, iv.hi)] {
            let b = bound(&pts, lo, hi);
            if b > best {
                heap.push(Interval { bound: b, lo, hi });
            }
        }
    }

    pts.pop();
    pts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let n = pts.len();
    let neighbour = |k: usize, step: isize| -> (f64, f64) {
        let idx = (k as isize + step).rem_euclid(n as isize) as usize;
        let (t, v) = pts[idx];
        let wrap = if step < 0 && idx > k {
            -PI
        } else if step > 0 && idx < k {
            PI
        } else {
            0.0
        };
        (t + wrap, v)
    };
    type Sample = (f64, f64);
    let mut candidates: Vec<(Sample, Sample, Sample)> = (0..n)
        .filter_map(|k| {
            let prev = neighbour(k, -1);
            let next = neighbour(k, 1);
            let cur = pts[k];
            (cur.1 >= prev.1 && cur.1 >= next.1).then_some((prev, cur, next))
        })
        .collect();
    candidates.sort_by(|x, y| y.1 .1.total_cmp(&x.1 .1));
    for (prev, cur, next) in candidates {
        if cur.1 + 0.5 * lip * (next.0 - prev.0) <= best {
            continue;
        }
        best = best.max(brent_max(|t| pencil.spread(t), prev, cur, next));
    }
    best
}

/// Largest value of `f` seen while Brent's method (golden section with
/// parabolic steps) searches `[lo, hi]` for a maximum, starting from the
/// sample `(x0, f(x0))` and its bracketing samples.
fn brent_max(f: impl Fn(f64) -> f64, (lo, flo): (f64, f64), (x0, f0): (f64, f64), (hi, fhi): (f64, f64)) -> f64 {
    const C: f64 = 0.381_966_011_250_105_1;
    let sqrt_eps = f64::EPSILON.sqrt();
    let (mut a, mut b) = (lo, hi);
    // Minimize −f.
    let (mut x, mut fx) = (x0, -f0);
    let (mut w, mut fw) = (lo, -flo);
    let (mut v, mut fv) = (hi, -fhi);
    let mut d = 0.0f64;
    let mut e = hi - lo;
    let mut best = f0;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let tol1 = sqrt_eps * x.abs() + tol::RADIUS_BRACKET / 3.0;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut parabolic = false;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            } else {
                q = -q;
            }
            let last = e;
            e = d;
            if p.abs() < (0.5 * q * last).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                parabolic = true;
            }
        }
        if !parabolic {
            e = if x < m { b - x } else { a - x };
            d = C * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = -f(u);
        best = best.max(-fu);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            (v, fv, w, fw, x, fx) = (w, fw, x, fx, u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv, w, fw) = (w, fw, u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    best
}

/// Support-function samples of `W(A)`: for `θ_k = 2πk/m`, the point
/// `⟨A x, x⟩` with `x` a top eigenvector of `Re(e^{−iθ_k}A)`.
pub fn boundary_scan(a: &CMatrix, m: usize) -> Result<Vec<BoundaryPoint>> {
    if m < 8 {
        return Err(Error::DomainError(format!("boundary scan needs at least 8 points, got {m}")));
    }
    let pencil = Pencil::new(a);
    (0..m)
        .map(|k| {
            let theta = TAU * k as f64 / m as f64;
            let eig = hermitian_eigen(&pencil.rotated(-theta))?;
            let vector = eig.vector(a.dim() - 1).to_vec();
            let z = a.quadratic_form(&vector);
            Ok(BoundaryPoint { theta, z, vector })
        })
        .collect()
}

/// `λ_min(Re A)`.
pub fn min_real_part(a: &CMatrix) -> f64 {
    extreme_eigenvalues(&real_part(a)).0
}

/// `Re A > 0`, strictly and without slack.
pub fn is_accretive(a: &CMatrix) -> bool {
    min_real_part(a) > 0.0
}

fn ensure_accretive(a: &CMatrix) -> Result<()> {
    let m = min_real_part(a);
    if m > 0.0 {
        Ok(())
    } else {
        Err(Error::NotAccretive { min_real_part: m })
    }
}

/// Sectorial index: the smallest `α` with `W(A) ⊆ {|Im z| ≤ tan α · Re z}`.
///
/// For accretive `A` every point of `W(A)` has argument in `(−π/2, π/2)`.
/// The largest argument `φ⁺` is the unique sign change of
/// `φ ↦ λ_max(Im(e^{−iφ}A))` on `[−π/2, π/2]`, the smallest argument `φ⁻`
/// the sign change of `λ_min` of the same pencil; both are located by
/// bisection to full precision and `α = max(|φ⁺|, |φ⁻|)`.
pub fn sectorial_index(a: &CMatrix) -> Result<f64> {
    ensure_accretive(a)?;
    let pencil = Pencil::new(a);
    // Im(e^{−iφ}A) = cos φ · Im A − sin φ · Re A.
    let tilted = |phi: f64| {
        let (lo, hi) = pencil.extremes(-phi.sin(), phi.cos());
        (lo, hi)
    };
    let upper = sign_change(|phi| tilted(phi).1);
    let lower = sign_change(|phi| tilted(phi).0);
    Ok(upper.abs().max(lower.abs()).min(FRAC_PI_2 - f64::EPSILON))
}

/// Root of `f` on `[−π/2, π/2]` given `f(−π/2) > 0 ≥ f(π/2)` and a single
/// sign change; Illinois-modified regula falsi, bracket kept throughout.
fn sign_change(f: impl Fn(f64) -> f64) -> f64 {
    let (mut lo, mut hi) = (-FRAC_PI_2, FRAC_PI_2);
    let (mut flo, mut fhi) = (f(lo), f(hi));
    if !(flo > 0.0) {
        return lo;
    }
    if fhi > 0.0 {
        return hi;
    }
    let mut side = 0i8;
    for _ in 0..200 {
        let width = hi - lo;
        if width <= 4.0 * f64::EPSILON {
            break;
        }
        let mut x = if flo - fhi > 0.0 { lo + width * flo / (flo - fhi) } else { 0.5 * (lo + hi) };
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let fx = f(x);
        if fx > 0.0 {
            lo = x;
            flo = fx;
            if side == 1 {
                fhi *= 0.5;
            }
            side = 1;
        } else {
            if fx == 0.0 {
                return x;
            }
            hi = x;
            fhi = fx;
            if side == -1 {
                flo *= 0.5;
            }
            side = -1;
        }
    }
    0.5 * (lo + hi)
}

/// Lower estimate of the sectorial index from `m` boundary samples.
pub fn sectorial_index_scan(a: &CMatrix, m: usize) -> Result<f64> {
    ensure_accretive(a)?;
    let pts = boundary_scan(a, m)?;
    Ok(pts.iter().map(|p| (p.z.im.abs() / p.z.re).atan()).fold(0.0, f64::max))
}

pub fn profile(a: &CMatrix) -> SectorProfile {
    let min_re = min_real_part(a);
    let accretive = min_re > 0.0;
    SectorProfile {
        accretive,
        alpha: if accretive { sectorial_index(a).ok() } else { None },
        numerical_radius: numerical_radius(a),
        spectral_norm: spectral_norm(a),
        min_real_part: min_re,
    }
}

/// Dense θ-grid estimate of `w(A)`, without refinement; an independent oracle.
pub fn numerical_radius_dense(a: &CMatrix, points: usize) -> f64 {
    let pencil = Pencil::new(a);
    (0..points)
        .map(|k| pencil.support(2.0 * PI * k as f64 / points as f64))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genprop::{random_matrix, random_sectorial, random_unitary, rng_for, GenSpec};
    use crate::matrix::{I, ONE, ZERO};
    use std::f64::consts::FRAC_PI_6;

    fn jordan_shift() -> CMatrix {
        CMatrix::from_rows(&[vec![ONE, I], vec![ZERO, ONE]]).unwrap()
    }

    #[test]
    fn radius_examples() {
        assert!((numerical_radius(&CMatrix::identity(3)) - 1.0).abs() < 1e-15);
        let d = CMatrix::from_diag(&[ONE, C64::new(0.0, 3.0)]);
        assert!((numerical_radius(&d) - 3.0).abs() < 1e-13);
        let nil = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let w = numerical_radius(&nil);
        // Dense oracle first, then the analytic value.
        assert!((w - numerical_radius_dense(&nil, 100_000)).abs() < 1e-12);
        assert!((w - 0.5).abs() < 1e-12);
        let w = numerical_radius(&jordan_shift());
        assert!((w - numerical_radius_dense(&jordan_shift(), 100_000)).abs() < 1e-9);
        assert!((w - 1.5).abs() < 1e-12);
    }

    #[test]
    fn radius_agrees_with_dense_grid() {
        for seed in 0..15 {
            let a = random_matrix(seed, 2 + seed as usize % 5);
            let w = numerical_radius(&a);
            let dense = numerical_radius_dense(&a, 100_000);
            assert!(w >= dense - 1e-12 * dense);
            assert!((w - dense).abs() <= 1e-8 * dense, "seed {seed}: {w} vs {dense}");
        }
    }

    #[test]
    fn radius_is_homogeneous_and_unitarily_invariant() {
        let mut rng = rng_for(5);
        for seed in 0..10 {
            let a = random_matrix(100 + seed, 4);
            let w = numerical_radius(&a);
            let c = C64::new(-1.3, 0.7);
            assert!((numerical_radius(&a.scale(c)) - c.norm() * w).abs() <= 1e-8 * w);
            let u = random_unitary(&mut rng, 4);
            let b = &(&u.adjoint() * &a) * &u;
            assert!((numerical_radius(&b) - w).abs() <= 1e-8 * w);
        }
    }

    #[test]
    fn radius_bounds_and_real_part() {
        for seed in 0..20 {
            let a = random_matrix(200 + seed, 3);
            let w = numerical_radius(&a);
            let norm = spectral_norm(&a);
            assert!(w <= norm * (1.0 + 1e-12) && norm <= 2.0 * w * (1.0 + 1e-12));
            assert!(numerical_radius(&real_part(&a)) <= w + 1e-12);
        }
    }

    #[test]
    fn boundary_scan_examples() {
        for p in boundary_scan(&CMatrix::identity(2), 16).unwrap() {
            assert!((p.z - ONE).norm() < 1e-14);
        }
        let d = CMatrix::from_real_diag(&[0.0, 1.0]);
        for p in boundary_scan(&d, 4 * 2).unwrap() {
            assert!(p.z.im.abs() < 1e-14 && p.z.re > -1e-14 && p.z.re < 1.0 + 1e-14);
        }
        let a = jordan_shift();
        for p in boundary_scan(&a, 360).unwrap() {
            assert!(((p.z - ONE).norm() - 0.5).abs() < 1e-6);
            let norm: f64 = p.vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-13);
            assert!((a.quadratic_form(&p.vector) - p.z).norm() < 1e-14);
        }
        assert!(boundary_scan(&a, 7).is_err());
    }

    #[test]
    fn sectorial_index_examples() {
        assert!(sectorial_index(&CMatrix::from_real_diag(&[1.0, 2.0])).unwrap().abs() < 1e-15);
        let rot = CMatrix::scalar(3, C64::from_polar(1.0, 0.3));
        assert!((sectorial_index(&rot).unwrap() - 0.3).abs() < 1e-14);
        let rot = CMatrix::scalar(2, C64::from_polar(1.0, -0.4));
        assert!((sectorial_index(&rot).unwrap() - 0.4).abs() < 1e-14);
        let a = jordan_shift();
        let alpha = sectorial_index(&a).unwrap();
        // Random unit-vector sampling gives a lower bound that approaches π/6.
        let mut rng = rng_for(77);
        let sampled = (0..20_000)
            .map(|_| {
                let g = crate::genprop::gaussian_matrix(&mut rng, 2);
                let x = g.col(0);
                let z = a.quadratic_form(x);
                (z.im / z.re).abs().atan()
            })
            .fold(0.0, f64::max);
        assert!(sampled <= alpha + 1e-12 && alpha - sampled < 1e-3);
        assert!((alpha - FRAC_PI_6).abs() < 1e-13);
    }

    #[test]
    fn sectorial_index_rejects_non_accretive() {
        let nil = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(sectorial_index(&nil), Err(Error::NotAccretive { .. })));
        assert!(!is_accretive(&nil));
        assert!(is_accretive(&CMatrix::identity(2)));
        assert!(is_accretive(&jordan_shift()));
        assert!((min_real_part(&jordan_shift()) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn scan_estimate_is_a_tight_lower_bound() {
        for seed in 0..10 {
            let a = random_sectorial(&GenSpec::new(4, 0.8, seed)).unwrap();
            let alpha = sectorial_index(&a).unwrap();
            let scan = sectorial_index_scan(&a, 2048).unwrap();
            assert!(scan <= alpha + 1e-12 && alpha - scan < 1e-4, "{scan} vs {alpha}");
            assert!(alpha <= 0.8 + 1e-8);
        }
    }

    #[test]
    fn profile_invariants() {
        for seed in 0..10 {
            let a = random_sectorial(&GenSpec::new(3, 1.0, 40 + seed)).unwrap();
            let p = profile(&a);
            assert!(p.accretive);
            let alpha = p.alpha.unwrap();
            assert!(p.numerical_radius <= p.spectral_norm * (1.0 + 1e-12));
            assert!(p.spectral_norm <= 2.0 * p.numerical_radius + 1e-12);
            assert!(alpha.cos() * p.spectral_norm <= p.numerical_radius + 1e-12);
        }
        let p = profile(&CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]));
        assert!(!p.accretive && p.alpha.is_none());
    }
}
