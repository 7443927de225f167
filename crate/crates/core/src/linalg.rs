//! Spectral primitives: LU solves, Hermitian eigensolvers, norms and the
//! Löwner order.

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, C64, ONE, ZERO};
use crate::tol;

/// `(A + A*)/2`; exactly Hermitian.
pub fn real_part(a: &CMatrix) -> CMatrix {
    a.hermitian_part()
}

/// `(A − A*)/(2i)`; exactly Hermitian, so that `A = Re A + i·Im A`.
pub fn imag_part(a: &CMatrix) -> CMatrix {
    a.skew_hermitian_part()
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
}

impl Lu {
    /// Factors `a`. A pivot below `n · ε · max_i Σ_j |a_ij|` is reported as singular.
    pub fn new(a: &CMatrix) -> Result<Self> {
        let n = a.dim();
        let max_row = (0..n)
            .map(|i| (0..n).map(|j| a[(i, j)].norm_sqr().sqrt()).sum::<f64>())
            .fold(0.0, f64::max);
        let threshold = n as f64 * f64::EPSILON * max_row;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot_sqr) = (k..n)
                .map(|i| (i, lu[(i, k)].norm_sqr()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            let pivot = pivot_sqr.sqrt();
            if !(pivot > threshold) {
                return Err(Error::SingularMatrix { pivot, threshold });
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let inv_pivot = ONE / lu[(k, k)];
            for i in k + 1..n {
                lu[(i, k)] *= inv_pivot;
            }
            for j in k + 1..n {
                let ukj = lu[(k, j)];
                if ukj == ZERO {
                    continue;
                }
                for i in k + 1..n {
                    let lik = lu[(i, k)];
                    lu[(i, j)] -= lik * ukj;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.dim();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for j in 0..n {
            let xj = x[j];
            if xj != ZERO {
                for i in j + 1..n {
                    x[i] -= self.lu[(i, j)] * xj;
                }
            }
        }
        for j in (0..n).rev() {
            x[j] /= self.lu[(j, j)];
            let xj = x[j];
            if xj != ZERO {
                for i in 0..j {
                    x[i] -= self.lu[(i, j)] * xj;
                }
            }
        }
        x
    }

    /// `A⁻¹ B`, column by column.
    pub fn solve(&self, b: &CMatrix) -> CMatrix {
        let n = b.dim();
        assert_eq!(n, self.lu.dim(), "dimension mismatch");
        let mut out = CMatrix::zeros(n);
        for j in 0..n {
            let x = self.solve_vec(b.col(j));
            out.as_mut_slice()[j * n..(j + 1) * n].copy_from_slice(&x);
        }
        out
    }
}

/// `A⁻¹` by LU with partial pivoting.
pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    Ok(Lu::new(a)?.solve(&CMatrix::identity(a.dim())))
}

/// `A⁻¹ B` without forming the inverse.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(Lu::new(a)?.solve(b))
}

/// Accumulator for `Σ_k w_k (p_k X + q_k Y)⁻¹ R` with fixed `X, Y, R`.
///
/// Quadrature rules for matrix functions and means solve one shifted pencil
/// per node; this keeps row-major copies of the operands and one augmented
/// buffer `[p X + q Y | R]` so each node is a single allocation-free
/// elimination. `Y = None` stands for the identity.
pub(crate) struct PencilSolver {
    n: usize,
    x: Vec<C64>,
    y: Option<Vec<C64>>,
    r: Vec<C64>,
    work: Vec<C64>,
    acc: Vec<C64>,
}

fn row_major(m: &CMatrix) -> Vec<C64> {
    let n = m.dim();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        out.extend((0..n).map(|j| m[(i, j)]));
    }
    out
}

impl PencilSolver {
    pub(crate) fn new(x: &CMatrix, y: Option<&CMatrix>, r: &CMatrix) -> Self {
        let n = x.dim();
        Self {
            n,
            x: row_major(x),
            y: y.map(row_major),
            r: row_major(r),
            work: vec![ZERO; 2 * n * n],
            acc: vec![ZERO; n * n],
        }
    }

    /// Adds `w (p X + q Y)⁻¹ R`. Pivots are judged as in [`Lu::new`].
    pub(crate) fn add(&mut self, p: f64, q: f64, w: f64) -> Result<()> {
        let n = self.n;
        let width = 2 * n;
        let mut max_row = 0.0f64;
        for i in 0..n {
            let row = &mut self.work[i * width..(i + 1) * width];
            let xs = &self.x[i * n..(i + 1) * n];
            match &self.y {
                Some(y) => {
                    for ((dst, &a), &b) in row[..n].iter_mut().zip(xs).zip(&y[i * n..(i + 1) * n]) {
                        *dst = a * p + b * q;
                    }
                }
                None => {
                    for (dst, &a) in row[..n].iter_mut().zip(xs) {
                        *dst = a * p;
                    }
                    row[i].re += q;
                }
            }
            row[n..].copy_from_slice(&self.r[i * n..(i + 1) * n]);
            max_row = max_row.max(row[..n].iter().map(|z| z.norm_sqr().sqrt()).sum());
        }
        let threshold = n as f64 * f64::EPSILON * max_row;

        for k in 0..n {
            let mut piv = k;
            let mut best = self.work[k * width + k].norm_sqr();
            for i in k + 1..n {
                let v = self.work[i * width + k].norm_sqr();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            let pivot = best.sqrt();
            if !(pivot > threshold) {
                return Err(Error::SingularMatrix { pivot, threshold });
            }
            if piv != k {
                let (head, tail) = self.work.split_at_mut(piv * width);
                head[k * width..(k + 1) * width].swap_with_slice(&mut tail[..width]);
            }
            let (head, tail) = self.work.split_at_mut((k + 1) * width);
            let pivot_row = &head[k * width..];
            let inv = ONE / pivot_row[k];
            for row in tail.chunks_exact_mut(width) {
                let l = row[k] * inv;
                if l == ZERO {
                    continue;
                }
                for (dst, &src) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *dst -= l * src;
                }
            }
        }

        for k in (0..n).rev() {
            let (head, tail) = self.work.split_at_mut((k + 1) * width);
            let row = &mut head[k * width..];
            for (j, solved) in tail.chunks_exact(width).enumerate() {
                let u = row[k + 1 + j];
                if u == ZERO {
                    continue;
                }
                for (dst, &src) in row[n..].iter_mut().zip(&solved[n..]) {
                    *dst -= u * src;
                }
            }
            let inv = ONE / row[k];
            for v in &mut row[n..] {
                *v *= inv;
            }
        }

        for i in 0..n {
            let solved = &self.work[i * width + n..(i + 1) * width];
            for (dst, &v) in self.acc[i * n..(i + 1) * n].iter_mut().zip(solved) {
                *dst += v * w;
            }
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> CMatrix {
        let n = self.n;
        CMatrix::from_fn(n, |i, j| self.acc[i * n + j])
    }
}

fn check_hermitian(h: &CMatrix) -> Result<()> {
    let defect = h.hermitian_defect();
    if !(defect <= tol::HERMITIAN_TOL * h.max_abs().max(1.0)) {
        return Err(Error::NotHermitian { asymmetry: defect });
    }
    Ok(())
}

/// Spectral decomposition `H = V diag(λ) V*` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    /// Eigenvector belonging to `values[k]`.
    pub fn vector(&self, k: usize) -> &[C64] {
        self.vectors.col(k)
    }

    /// `V diag(g(λ)) V*`.
    pub fn map(&self, g: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let gv: Vec<f64> = self.values.iter().map(|&l| g(l)).collect();
        let v = &self.vectors;
        let mut out = CMatrix::zeros(n);
        for j in 0..n {
            for i in j..n {
                let mut s = ZERO;
                for k in 0..n {
                    s += v[(i, k)] * v[(j, k)].conj() * gv[k];
                }
                if i == j {
                    out[(i, i)] = C64::new(s.re, 0.0);
                } else {
                    out[(i, j)] = s;
                    out[(j, i)] = s.conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map(|l| l)
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is symmetrized after the Hermitian check. Sweeps stop once the
/// off-diagonal Frobenius mass drops below `n² · 1e−14 · ‖H‖_F`.
pub fn hermitian_eigen(h: &CMatrix) -> Result<HermitianEigen> {
    check_hermitian(h)?;
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();
    let threshold = (n * n) as f64 * tol::JACOBI_OFF_TOL * scale;

    let off_mass = |a: &CMatrix| -> f64 {
        let mut s = 0.0;
        for j in 0..n {
            for i in 0..j {
                s += a[(i, j)].norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    };

    let mut converged = false;
    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        if off_mass(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = a[(p, q)];
                let ag = g.norm();
                if ag == 0.0 {
                    continue;
                }
                let phase = g / ag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let zeta = (aqq - app) / (2.0 * ag);
                let t = if zeta.abs() > 1e150 {
                    0.5 / zeta
                } else {
                    let r = 1.0 / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    if zeta < 0.0 {
                        -r
                    } else {
                        r
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]] on the (p, q) plane.
                let sp = phase * s;
                let spc = sp.conj();
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - spc * akq;
                    a[(k, q)] = sp * akp + akq * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - sp * aqk;
                    a[(q, k)] = spc * apk + aqk * c;
                }
                a[(p, p)] = C64::new(app - t * ag, 0.0);
                a[(q, q)] = C64::new(aqq + t * ag, 0.0);
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - spc * vkq;
                    v[(k, q)] = sp * vkp + vkq * c;
                }
            }
        }
    }
    if !converged && off_mass(&a) > threshold {
        return Err(Error::NoConvergence { sweeps: tol::JACOBI_MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only, ascending; Householder tridiagonalization followed by
/// implicit QL. Used where thousands of spectra are needed (θ-scans).
pub fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    let hs = h.hermitian_part();
    match eigenvalues_tridiagonal(&hs) {
        Some(v) => Ok(v),
        None => Ok(hermitian_eigen(&hs)?.values),
    }
}

/// `(λ_min, λ_max)` of a matrix already known to be Hermitian.
pub(crate) fn extreme_eigenvalues(h: &CMatrix) -> (f64, f64) {
    let mut ws = EigenWorkspace::new(h.dim());
    ws.load(h.as_slice());
    ws.extremes()
}

/// Scratch buffers for repeated eigenvalue-only solves of one dimension.
///
/// `buf` holds a column-major Hermitian matrix; [`EigenWorkspace::extremes`]
/// and [`EigenWorkspace::eigenvalues`] destroy it.
pub(crate) struct EigenWorkspace {
    n: usize,
    pub(crate) buf: Vec<C64>,
    d: Vec<f64>,
    e: Vec<f64>,
    v: Vec<C64>,
    p: Vec<C64>,
}

impl EigenWorkspace {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            n,
            buf: vec![ZERO; n * n],
            d: vec![0.0; n],
            e: vec![0.0; n],
            v: vec![ZERO; n],
            p: vec![ZERO; n],
        }
    }

    pub(crate) fn load(&mut self, h: &[C64]) {
        self.buf.copy_from_slice(h);
    }

    pub(crate) fn extremes(&mut self) -> (f64, f64) {
        let n = self.n;
        let a = &self.buf;
        match n {
            1 => (a[0].re, a[0].re),
            2 => {
                let (p, q) = (a[0].re, a[3].re);
                let mid = 0.5 * (p + q);
                let rad = (0.5 * (p - q)).hypot(a[1].norm());
                (mid - rad, mid + rad)
            }
            _ => {
                if self.tridiagonal_ql() {
                    let lo = self.d.iter().copied().fold(f64::INFINITY, f64::min);
                    let hi = self.d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    (lo, hi)
                } else {
                    let vals = self.jacobi_fallback();
                    (vals[0], vals[n - 1])
                }
            }
        }
    }

    fn jacobi_fallback(&self) -> Vec<f64> {
        let h = CMatrix::from_fn(self.n, |i, j| self.buf[i + j * self.n]);
        hermitian_eigen(&h.hermitian_part()).expect("Hermitian by construction").values
    }

    /// Householder reduction to real symmetric tridiagonal form, then QL.
    /// Returns `false` if QL stalls.
    fn tridiagonal_ql(&mut self) -> bool {
        let n = self.n;
        let a = &mut self.buf;
        let (d, e, v, p) = (&mut self.d, &mut self.e, &mut self.v, &mut self.p);
        for k in 0..n.saturating_sub(2) {
            let m = n - k - 1;
            let off = k + 1;
            let x = &a[k * n + off..(k + 1) * n];
            let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if xnorm == 0.0 {
                e[k] = 0.0;
                continue;
            }
            let x0 = x[0];
            let x0_abs = x0.norm_sqr().sqrt();
            let phase = if x0_abs == 0.0 { ONE } else { x0 / x0_abs };
            let alpha = -phase * xnorm;
            let v = &mut v[..m];
            v.copy_from_slice(x);
            v[0] -= alpha;
            let beta = 2.0 / v.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let p = &mut p[..m];
            p.iter_mut().for_each(|z| *z = ZERO);
            for c in 0..m {
                let vc = v[c];
                let col = &a[(off + c) * n + off..(off + c + 1) * n];
                for (pr, &t) in p.iter_mut().zip(col) {
                    *pr += t * vc;
                }
            }
            let mut vp = ZERO;
            for (pr, vr) in p.iter_mut().zip(v.iter()) {
                *pr *= beta;
                vp += vr.conj() * *pr;
            }
            let kk = 0.5 * beta * vp.re;
            for (pr, &vr) in p.iter_mut().zip(v.iter()) {
                *pr -= vr * kk;
            }
            for c in 0..m {
                let vc = v[c].conj();
                let qc = p[c].conj();
                let col = &mut a[(off + c) * n + off..(off + c + 1) * n];
                for ((t, &vr), &qr) in col.iter_mut().zip(v.iter()).zip(p.iter()) {
                    *t -= vr * qc + qr * vc;
                }
            }
            e[k] = xnorm;
        }
        for k in 0..n {
            d[k] = a[k * n + k].re;
        }
        if n >= 2 {
            e[n - 2] = a[(n - 2) * n + n - 1].norm();
        }
        e[n - 1] = 0.0;
        tridiagonal_ql(d, e).is_some()
    }
}

fn eigenvalues_tridiagonal(h: &CMatrix) -> Option<Vec<f64>> {
    let mut ws = EigenWorkspace::new(h.dim());
    ws.load(h.as_slice());
    if ws.tridiagonal_ql() {
        let mut d = ws.d;
        d.sort_by(f64::total_cmp);
        Some(d)
    } else {
        None
    }
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix with
/// diagonal `d` and off-diagonal `e` (`e[i]` couples `i` and `i+1`).
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Option<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return None;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = (g * g + 1.0).sqrt();
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Some(())
}

/// `‖A‖ = sqrt(λ_max(A* A))`.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    let gram = &a.adjoint() * a;
    let eig = hermitian_eigen(&gram.hermitian_part()).expect("Gram matrix is Hermitian");
    eig.max().max(0.0).sqrt()
}

/// `λ_min(Y − X)`; non-negative iff `X ≤ Y` in the Löwner order.
pub fn loewner_margin(x: &CMatrix, y: &CMatrix) -> Result<f64> {
    check_hermitian(x)?;
    check_hermitian(y)?;
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    let diff = (y - x).hermitian_part();
    Ok(hermitian_eigen(&diff)?.min())
}

/// `X ≤ Y` in the Löwner order, up to `tol` on the smallest eigenvalue of `Y − X`.
pub fn loewner_leq(x: &CMatrix, y: &CMatrix, tol: f64) -> Result<bool> {
    Ok(loewner_margin(x, y)? >= -tol)
}

/// `g(H) = V g(Λ) V*` for Hermitian `H`.
pub fn hermitian_function(h: &CMatrix, g: impl Fn(f64) -> f64) -> Result<CMatrix> {
    Ok(hermitian_eigen(h)?.map(g))
}
