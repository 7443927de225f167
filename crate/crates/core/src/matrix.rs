//! Dense square complex matrices.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense `n × n` complex matrix stored column-major.
///
/// Value semantics throughout: every operation returns a fresh matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        Self { n, data: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![ONE; n])
    }

    pub fn scalar(n: usize, c: C64) -> Self {
        Self::from_diag(&vec![c; n])
    }

    pub fn from_diag(d: &[C64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(n);
        for j in 0..n {
            for i in 0..n {
                m.data[i + j * n] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row slices; fails unless the rows form a square array.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!(
                "row of length {} in a matrix with {} rows",
                bad.len(),
                n
            )));
        }
        let m = Self::from_fn(n, |i, j| rows[i][j]);
        if !m.is_finite() {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
        Ok(m)
    }

    /// Real-valued rows, handy in tests.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| C64::new(rows[i][j], 0.0))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub(crate) fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn col(&self, j: usize) -> &[C64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&z| z * c).collect() }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&z| z * c).collect() }
    }

    /// `a·self + b·other`.
    pub fn lin_comb(&self, a: f64, other: &Self, b: f64) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(&x, &y)| x * a + y * b).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn diag(&self) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self − self*`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in 0..=j {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(self + self*)/2`, Hermitian by construction.
    pub fn hermitian_part(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for j in 0..n {
            m[(j, j)] = C64::new(self[(j, j)].re, 0.0);
            for i in 0..j {
                let v = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
        m
    }

    /// `(self − self*)/(2i)`, Hermitian by construction.
    pub fn skew_hermitian_part(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for j in 0..n {
            m[(j, j)] = C64::new(self[(j, j)].im, 0.0);
            for i in 0..j {
                let v = (self[(i, j)] - self[(j, i)].conj()) * C64::new(0.0, -0.5);
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
        m
    }

    /// `x* self x` for a vector `x`.
    pub fn quadratic_form(&self, x: &[C64]) -> C64 {
        let n = self.n;
        let mut acc = ZERO;
        for j in 0..n {
            let col = self.col(j);
            let mut s = ZERO;
            for i in 0..n {
                s += x[i].conj() * col[i];
            }
            acc += s * x[j];
        }
        acc
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        let n = self.n;
        let mut y = vec![ZERO; n];
        for j in 0..n {
            let xj = x[j];
            for (yi, &a) in y.iter_mut().zip(self.col(j)) {
                *yi += a * xj;
            }
        }
        y
    }

    /// `[[0, a], [b, 0]]`.
    pub fn block_antidiagonal(a: &Self, b: &Self) -> Result<Self> {
        if a.n != b.n {
            return Err(Error::DimensionMismatch { left: a.n, right: b.n });
        }
        let n = a.n;
        Ok(Self::from_fn(2 * n, |i, j| match (i < n, j < n) {
            (true, false) => a[(i, j - n)],
            (false, true) => b[(i - n, j)],
            _ => ZERO,
        }))
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)]).collect()).collect()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i + j * self.n]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i + j * self.n]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Add for CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: CMatrix) -> CMatrix {
        &self + &rhs
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: CMatrix) -> CMatrix {
        &self - &rhs
    }
}

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for j in 0..n {
            let oc = &mut out.data[j * n..(j + 1) * n];
            for k in 0..n {
                let b = rhs.data[k + j * n];
                if b == ZERO {
                    continue;
                }
                for (o, &a) in oc.iter_mut().zip(&self.data[k * n..(k + 1) * n]) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        &self * &rhs
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:>11.4e}{:+.4e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_hand_computation() {
        let a = CMatrix::from_rows(&[vec![ONE, I], vec![ZERO, ONE]]).unwrap();
        let b = CMatrix::from_rows(&[vec![ONE, ZERO], vec![I, ONE]]).unwrap();
        let p = &a * &b;
        assert_eq!(p[(0, 0)], C64::new(0.0, 0.0));
        assert_eq!(p[(0, 1)], I);
        assert_eq!(p[(1, 0)], I);
        assert_eq!(p[(1, 1)], ONE);
    }

    #[test]
    fn from_rows_rejects_ragged_and_nonfinite() {
        assert!(CMatrix::from_rows(&[vec![ONE, ONE], vec![ONE]]).is_err());
        assert!(CMatrix::from_rows(&[vec![ONE, ONE]]).is_err());
        assert!(CMatrix::from_rows(&[vec![C64::new(f64::NAN, 0.0)]]).is_err());
        assert!(CMatrix::from_rows(&[]).is_err());
    }

    #[test]
    fn hermitian_and_skew_parts_recombine() {
        let a = CMatrix::from_fn(3, |i, j| C64::new((i * 3 + j) as f64, (i as f64) - 2.0 * j as f64));
        let h = a.hermitian_part();
        let k = a.skew_hermitian_part();
        let back = &h + &k.scale(I);
        assert!((&back - &a).max_abs() < 1e-15);
        assert_eq!(h.hermitian_defect(), 0.0);
        assert_eq!(k.hermitian_defect(), 0.0);
    }

    #[test]
    fn block_antidiagonal_layout() {
        let a = CMatrix::identity(1);
        let b = CMatrix::scalar(1, C64::new(2.0, 0.0));
        let m = CMatrix::block_antidiagonal(&a, &b).unwrap();
        assert_eq!(m.rows(), vec![vec![ZERO, ONE], vec![C64::new(2.0, 0.0), ZERO]]);
        assert!(matches!(
            CMatrix::block_antidiagonal(&a, &CMatrix::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
