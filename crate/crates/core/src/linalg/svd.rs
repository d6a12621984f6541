use super::{ComplexMatrix, C64, ZERO};

const MAX_SWEEPS: usize = 80;
const ORTHOGONALITY_RTOL: f64 = 1e-15;

#[derive(Clone, Debug, PartialEq)]
pub struct SingularValues {
    /// Descending, nonnegative, length `min(rows, cols)`.
    pub values: Vec<f64>,
}

impl SingularValues {
    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

/// Thin singular value decomposition `m = u · diag(values) · v^*`.
///
/// `u` is `rows × r` and `v` is `cols × r` with `r = min(rows, cols)`.
/// Columns paired with a zero singular value may be zero on the side that was
/// orthogonalized; every product `values[i]·u_i` is exact regardless.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub values: Vec<f64>,
    pub v: ComplexMatrix,
}

pub fn singular_values(m: &ComplexMatrix) -> SingularValues {
    SingularValues {
        values: svd(m).values,
    }
}

/// One-sided Jacobi SVD.
pub fn svd(m: &ComplexMatrix) -> Svd {
    if m.rows() < m.cols() {
        let t = tall_svd(&m.adjoint());
        return Svd {
            u: t.v,
            values: t.values,
            v: t.u,
        };
    }
    tall_svd(m)
}

fn tall_svd(m: &ComplexMatrix) -> Svd {
    let (rows, n) = m.shape();
    // Columns stored contiguously for cache-friendly rotations.
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for j in 0..n {
            for k in j + 1..n {
                let alpha: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[k].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = cols[j].iter().zip(&cols[k]).map(|(a, b)| a.conj() * b).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= ORTHOGONALITY_RTOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 { 1.0 } else { -1.0 } / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let (lo, hi) = cols.split_at_mut(k);
                for (x, y) in lo[j].iter_mut().zip(hi[0].iter_mut()) {
                    let yk = *y * phase;
                    let xj = *x;
                    *x = xj * c - yk * s;
                    *y = xj * s + yk * c;
                }
                let (lo, hi) = v.split_at_mut(k);
                for (x, y) in lo[j].iter_mut().zip(hi[0].iter_mut()) {
                    let yk = *y * phase;
                    let xj = *x;
                    *x = xj * c - yk * s;
                    *y = xj * s + yk * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));

    let mut u = ComplexMatrix::zeros(rows, n);
    let mut vm = ComplexMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (out, &j) in order.iter().enumerate() {
        let s = norms[j];
        values.push(s);
        if s > 0.0 {
            for i in 0..rows {
                u[(i, out)] = cols[j][i] / s;
            }
        }
        // v[j] holds column j of V.
        for i in 0..n {
            vm[(i, out)] = v[j][i];
        }
    }
    Svd { u, values, v: vm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spec_examples() {
        assert_eq!(singular_values(&ComplexMatrix::zeros(3, 2)).values, vec![0.0, 0.0]);
        let col = ComplexMatrix::from_real_rows(&[[1.0], [1.0]]);
        let s = singular_values(&col).values;
        assert_eq!(s.len(), 1);
        assert!((s[0] - 2f64.sqrt()).abs() < 1e-15);
        let d = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -2.0]]);
        assert_eq!(singular_values(&d).values, vec![2.0, 1.0]);
    }

    #[test]
    fn rank_deficient_zero_values_are_tiny() {
        // Rank one: the p = 1 norm needs zero singular values at round-off
        // level, not at its square root.
        let m = ComplexMatrix::from_real_rows(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [-1.0, -2.0, -3.0]]);
        let s = singular_values(&m).values;
        assert!((s[0] - (14.0f64 * 6.0).sqrt()).abs() < 1e-13);
        assert!(s[1] < 1e-14 && s[2] < 1e-14, "{s:?}");
    }

    fn reconstruct(d: &Svd) -> ComplexMatrix {
        let mut us = d.u.clone();
        for i in 0..us.rows() {
            for (j, &s) in d.values.iter().enumerate() {
                us[(i, j)] *= s;
            }
        }
        us.matmul(&d.v.adjoint())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn unitary_invariance(seed in any::<u64>(), r in 1usize..12, c in 1usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random::gaussian(&mut rng, r, c);
            let u = random::unitary(&mut rng, r);
            let v = random::unitary(&mut rng, c);
            let a = singular_values(&m).values;
            let b = singular_values(&u.matmul(&m).matmul(&v)).values;
            prop_assert_eq!(a.len(), r.min(c));
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() <= 1e-10);
            }
            let hs: f64 = a.iter().map(|s| s * s).sum();
            prop_assert!((hs - m.frobenius_norm().powi(2)).abs() <= 1e-10 * hs.max(1.0));
        }

        #[test]
        fn thin_svd_reconstructs(seed in any::<u64>(), r in 1usize..10, c in 1usize..10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random::gaussian(&mut rng, r, c);
            let d = svd(&m);
            prop_assert!(reconstruct(&d).max_abs_diff(&m) <= 1e-12 * m.frobenius_norm().max(1.0));
            prop_assert!(d.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
