//! Seeded random matrices for tests, invariant checks and optimizer starts.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{ComplexMatrix, C64};

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_vec(rows, cols, data).expect("gaussian entries are finite")
}

pub fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<C64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

/// Haar-distributed unitary: Gram–Schmidt on a Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    loop {
        let g = gaussian(rng, n, n);
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

/// Positive semidefinite `g g^*` with `g` Gaussian of the given rank.
pub fn psd<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> ComplexMatrix {
    let g = gaussian(rng, n, rank);
    g.matmul(&g.adjoint())
}

/// Modified Gram–Schmidt, applied twice for stability. `None` if the columns
/// are numerically dependent.
fn orthonormalize_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let (rows, cols) = m.shape();
    let mut q: Vec<Vec<C64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = m.column(j);
        for _ in 0..2 {
            for u in &q {
                let d: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, &y) in v.iter_mut().zip(u) {
                    *x -= d * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-10 {
            return None;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        q.push(v);
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for (j, col) in q.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            out[(i, j)] = z;
        }
    }
    Some(out)
}
