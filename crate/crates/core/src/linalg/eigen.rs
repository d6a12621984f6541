use super::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi eigensolver.
pub const EIG_MAX_SWEEPS: usize = 100;

const OFF_DIAGONAL_RTOL: f64 = 1e-13;

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// `V diag(λ) V^*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for i in 0..v.rows() {
            for (j, &l) in self.eigenvalues.iter().enumerate() {
                scaled[(i, j)] *= l;
            }
        }
        scaled.matmul(&v.adjoint())
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// `tol` bounds the entrywise asymmetry `|m − m^*|`, relative to the largest
/// entry when that exceeds 1. The input is symmetrized before iterating.
pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let asymmetry = m.max_abs_diff(&m.adjoint());
    let allowed = tol * m.max_abs().max(1.0);
    if asymmetry > allowed {
        return Err(Error::NotHermitian {
            asymmetry,
            tol: allowed,
        });
    }

    let n = m.rows();
    let mut a = (m + &m.adjoint()).scale_real(0.5);
    let mut v = ComplexMatrix::identity(n);
    let target = OFF_DIAGONAL_RTOL * m.frobenius_norm();

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off > target {
        if sweeps == EIG_MAX_SWEEPS {
            let best = finish(a, v, sweeps);
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
                best: Box::new(best),
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }
    Ok(finish(a, v, sweeps))
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let n = a.rows();
    let phase = apq / b;
    let zeta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * b);
    let t = if zeta >= 0.0 { 1.0 } else { -1.0 } / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]] on (p, q).
    let jpq = phase * s;
    let jqp = -phase.conj() * s;

    for i in 0..n {
        let (x, y) = (a[(i, p)], a[(i, q)]);
        a[(i, p)] = x * c + y * jqp;
        a[(i, q)] = x * jpq + y * c;
    }
    for j in 0..n {
        let (x, y) = (a[(p, j)], a[(q, j)]);
        a[(p, j)] = x * c + y * jqp.conj();
        a[(q, j)] = x * jpq.conj() + y * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for i in 0..n {
        let (x, y) = (v[(i, p)], v[(i, q)]);
        v[(i, p)] = x * c + y * jqp;
        v[(i, q)] = x * jpq + y * c;
    }
}

fn finish(a: ComplexMatrix, v: ComplexMatrix, sweeps: usize) -> HermitianEigen {
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = v.select(&(0..n).collect::<Vec<_>>(), &order);
    HermitianEigen {
        eigenvalues,
        eigenvectors,
        sweeps,
    }
}
