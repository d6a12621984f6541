//! Dense complex linear algebra.
//!
//! Everything in the crate is carried by [`ComplexMatrix`], a row-major
//! matrix of `Complex64`. Sizes stay small (a few hundred per side at most),
//! so the kernels favour accuracy and simplicity: cyclic Jacobi for
//! Hermitian eigenproblems, one-sided Jacobi for singular values, and LU with
//! partial pivoting for determinants and solves.

mod eigen;
pub mod random;
mod svd;

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eigen::{hermitian_eig, HermitianEigen, EIG_MAX_SWEEPS};
pub use svd::{singular_values, svd, SingularValues, Svd};

pub type C64 = Complex64;

/// Default cap on matrix side length for products that grow dimensions.
pub const DEFAULT_DIMENSION_CAP: usize = 4096;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major data, rejecting wrong lengths and
    /// non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Builds a matrix from nested rows. Panics on ragged input; meant for
    /// literals in tests and small constructions.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend_from_slice(row.as_ref());
        }
        Self { rows: r, cols: c, data }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        Self::from_diag(&diag.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    /// Matrix unit `E_{ij}` of the given shape.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = ONE;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: C64, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "axpy shape mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = Self::zeros(n, p);
        for i in 0..n {
            let out_row = &mut out.data[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * p..(k + 1) * p];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self^* · other` without forming the adjoint.
    pub fn adjoint_mul(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "adjoint_mul row mismatch");
        let (m, n, p) = (self.rows, self.cols, other.cols);
        let mut out = Self::zeros(n, p);
        for k in 0..m {
            let a_row = &self.data[k * n..(k + 1) * n];
            let b_row = &other.data[k * p..(k + 1) * p];
            for (i, &a) in a_row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let a = a.conj();
                let out_row = &mut out.data[i * p..(i + 1) * p];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i * self.cols + i])
            .sum()
    }

    /// Hilbert–Schmidt inner product `tr(other^* self)`.
    pub fn hs_inner(&self, other: &Self) -> C64 {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a * b.conj())
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&z| z == ZERO)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            let src = &self.data[(r0 + i) * self.cols + c0..(r0 + i) * self.cols + c0 + cols];
            out.data[i * cols..(i + 1) * cols].copy_from_slice(src);
        }
        out
    }

    /// Submatrix on an arbitrary selection of rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.data[a * cols.len() + b] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(ONE);
        }
        let mut a = self.data.clone();
        let mut det = ONE;
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&x, &y| a[x * n + k].norm().total_cmp(&a[y * n + k].norm()))
                .unwrap();
            if a[pivot * n + k] == ZERO {
                return Ok(ZERO);
            }
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                det = -det;
            }
            let d = a[k * n + k];
            det *= d;
            for i in k + 1..n {
                let f = a[i * n + k] / d;
                if f == ZERO {
                    continue;
                }
                for j in k..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
            }
        }
        Ok(det)
    }

    /// Solves `self · x = b` for square `self` by LU with partial pivoting.
    /// Returns `None` when the matrix is numerically singular.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert!(self.is_square() && self.rows == b.rows);
        let n = self.rows;
        let m = b.cols;
        let mut a = self.data.clone();
        let mut x = b.data.clone();
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&p, &q| a[p * n + k].norm().total_cmp(&a[q * n + k].norm()))
                .unwrap();
            if a[pivot * n + k].norm() <= 1e-14 * scale {
                return None;
            }
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                for j in 0..m {
                    x.swap(k * m + j, pivot * m + j);
                }
            }
            let d = a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] / d;
                if f == ZERO {
                    continue;
                }
                for j in k..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
                for j in 0..m {
                    let t = x[k * m + j];
                    x[i * m + j] -= f * t;
                }
            }
        }
        for k in (0..n).rev() {
            let d = a[k * n + k];
            for j in 0..m {
                let mut s = x[k * m + j];
                for l in k + 1..n {
                    s -= a[k * n + l] * x[l * m + j];
                }
                x[k * m + j] = s / d;
            }
        }
        Some(Self { rows: n, cols: m, data: x })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        self.axpy(ONE, rhs);
    }
}

/// Kronecker product with the default dimension cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_capped(a, b, DEFAULT_DIMENSION_CAP)
}

/// Kronecker product `a ⊗ b`, entry `(i·rb + k, j·cb + l) = a(i,j)·b(k,l)`.
pub fn kron_capped(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let rows = a.rows.saturating_mul(b.rows);
    let cols = a.cols.saturating_mul(b.cols);
    if rows > cap || cols > cap {
        return Err(Error::DimensionCap { rows, cols, cap });
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let s = a[(i, j)];
            if s == ZERO {
                continue;
            }
            for k in 0..b.rows {
                let dst = (i * b.rows + k) * cols + j * b.cols;
                for (o, &v) in out.data[dst..dst + b.cols].iter_mut().zip(b.row(k)) {
                    *o = s * v;
                }
            }
        }
    }
    Ok(out)
}

/// Block-diagonal assembly `diag(b_1, …, b_m)`; blocks may be rectangular.
pub fn block_diag(blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let rows = blocks.iter().map(|b| b.rows).sum();
    let cols = blocks.iter().map(|b| b.cols).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.set_block(r, c, b);
        r += b.rows;
        c += b.cols;
    }
    out
}

/// `‖u^*u − I‖` measured entrywise.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    u.adjoint_mul(u).max_abs_diff(&ComplexMatrix::identity(u.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn from_vec_rejects_bad_input() {
        assert!(matches!(
            ComplexMatrix::from_vec(2, 2, vec![ONE; 3]),
            Err(Error::LengthMismatch { expected: 4, found: 3 })
        ));
        assert!(matches!(
            ComplexMatrix::from_vec(1, 1, vec![C64::new(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn kron_examples() {
        let k = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)).unwrap();
        assert_eq!(k, ComplexMatrix::identity(6));

        let nil = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let two = ComplexMatrix::from_real_rows(&[[2.0]]);
        assert_eq!(
            kron(&nil, &two).unwrap(),
            ComplexMatrix::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]])
        );

        let z = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        assert_eq!(
            kron(&z, &z).unwrap(),
            ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0, 1.0])
        );
    }

    #[test]
    fn kron_respects_cap() {
        let a = ComplexMatrix::identity(8);
        assert!(matches!(
            kron_capped(&a, &a, 32),
            Err(Error::DimensionCap { rows: 64, cols: 64, cap: 32 })
        ));
    }

    #[test]
    fn determinant_small() {
        let m = ComplexMatrix::from_real_rows(&[[2.0, 1.0], [4.0, 3.0]]);
        assert!((m.determinant().unwrap() - c(2.0)).norm() < 1e-14);
        let p = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        assert!((p.determinant().unwrap() - c(-1.0)).norm() < 1e-14);
        assert_eq!(ComplexMatrix::zeros(0, 0).determinant().unwrap(), ONE);
    }

    #[test]
    fn solve_recovers_rhs() {
        let a = ComplexMatrix::from_rows(&[[c(1.0), I], [I.scale(-1.0), c(3.0)]]);
        let x = ComplexMatrix::from_rows(&[[c(1.0)], [C64::new(0.5, -2.0)]]);
        let b = a.matmul(&x);
        let y = a.solve(&b).unwrap();
        assert!(y.max_abs_diff(&x) < 1e-14);
        assert!(ComplexMatrix::zeros(2, 2).solve(&b).is_none());
    }

    #[test]
    fn block_diag_places_rectangular_blocks() {
        let a = ComplexMatrix::from_real_rows(&[[1.0], [2.0]]);
        let b = ComplexMatrix::from_real_rows(&[[3.0, 4.0]]);
        let d = block_diag(&[a, b]);
        assert_eq!(d.shape(), (3, 3));
        assert_eq!(d[(1, 0)], c(2.0));
        assert_eq!(d[(2, 2)], c(4.0));
        assert_eq!(d[(0, 1)], ZERO);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]
        #[test]
        fn kron_associative_and_mixed_product(seed in proptest::prelude::any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = random::gaussian(&mut rng, 2, 3);
            let b = random::gaussian(&mut rng, 3, 2);
            let c = random::gaussian(&mut rng, 3, 2);
            let d = random::gaussian(&mut rng, 2, 2);
            let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
            let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
            proptest::prop_assert!(left.max_abs_diff(&right) <= 1e-12);
            let lhs = kron(&a, &b).unwrap().matmul(&kron(&c, &d).unwrap());
            let rhs = kron(&a.matmul(&c), &b.matmul(&d)).unwrap();
            proptest::prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * rhs.max_abs().max(1.0));
        }
    }

    #[test]
    fn adjoint_mul_matches_explicit_adjoint() {
        let a = ComplexMatrix::from_rows(&[[c(1.0), I], [c(2.0), C64::new(1.0, 1.0)], [I, ZERO]]);
        let b = ComplexMatrix::from_rows(&[[c(0.5)], [I], [c(-1.0)]]);
        assert!(a.adjoint_mul(&b).max_abs_diff(&a.adjoint().matmul(&b)) < 1e-15);
    }
}
