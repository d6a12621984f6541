//! The Rademacher model on `D_N = {−1, 1}^N` with uniform probability.
//!
//! Points are enumerated in binary order: bit `j − 1` of the index is set
//! exactly when `ε_j = +1`, matching the bitmask order of [`crate::fock`].

use serde::Serialize;

use crate::error::{check_index, Error, Result};
use crate::linalg::{C64, ONE, ZERO};
use crate::schatten::PExponent;

/// Largest `N` accepted for enumeration.
pub const MAX_VARIABLES: usize = 20;

/// `|asym_probe|` above this counts as nonzero.
pub const ASYM_THRESHOLD: f64 = 1e-6;

/// The probe grid for the asymmetry pattern.
pub const ASYM_GRID: [f64; 5] = [-1.0, -0.5, 0.3, 0.7, 1.0];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypercubeFunction {
    n: usize,
    values: Vec<C64>,
}

impl HypercubeFunction {
    pub fn new(n: usize, values: Vec<C64>) -> Result<Self> {
        check_index(n, 0, MAX_VARIABLES)?;
        if values.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        Ok(Self { n, values })
    }

    pub fn constant(n: usize, c: C64) -> Result<Self> {
        Self::new(n, vec![c; 1 << n])
    }

    /// `Π_{j=1}^N ε_j`.
    pub fn product(n: usize) -> Result<Self> {
        check_index(n, 0, MAX_VARIABLES)?;
        let values = (0..1usize << n)
            .map(|x| if (n as u32 - x.count_ones()).is_multiple_of(2) { ONE } else { -ONE })
            .collect();
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn mean(&self) -> C64 {
        self.values.iter().sum::<C64>() / self.values.len() as f64
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    fn zip(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.values.len(),
                found: other.values.len(),
            });
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { n: self.n, values })
    }

    /// `f ∘ (ε_i ↦ −ε_i)`.
    pub fn flip(&self, i: usize) -> Result<Self> {
        check_index(i, 1, self.n)?;
        let bit = 1 << (i - 1);
        let values = (0..self.values.len()).map(|x| self.values[x ^ bit]).collect();
        Ok(Self { n: self.n, values })
    }
}

/// `ε_j` on `D_N`.
pub fn rademacher(n: usize, j: usize) -> Result<HypercubeFunction> {
    check_index(n, 1, MAX_VARIABLES)?;
    check_index(j, 1, n)?;
    let values = (0..1usize << n)
        .map(|x| if x >> (j - 1) & 1 == 1 { ONE } else { -ONE })
        .collect();
    HypercubeFunction::new(n, values)
}

/// `(2^{−N} Σ |f|^p)^{1/p}`, or the max for `p = ∞`.
pub fn lp_norm(f: &HypercubeFunction, p: PExponent) -> f64 {
    let top = f.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if p.is_infinite() || top == 0.0 {
        return top;
    }
    let p = p.value();
    let mean = f.values.iter().map(|v| (v.norm() / top).powf(p)).sum::<f64>() / f.values.len() as f64;
    top * mean.powf(1.0 / p)
}

/// `α_0 + Σ_{j=1}^{2n} α_j ε_j + α_{2n+1} Π ε_j` on `D_{2n}`.
pub fn rademacher_combination(n: usize, alpha: &[C64]) -> Result<HypercubeFunction> {
    check_index(n, 1, MAX_VARIABLES / 2)?;
    if alpha.len() != 2 * n + 2 {
        return Err(Error::LengthMismatch {
            expected: 2 * n + 2,
            found: alpha.len(),
        });
    }
    let big_n = 2 * n;
    let values = (0..1usize << big_n)
        .map(|x| {
            let mut v = alpha[0];
            for j in 1..=big_n {
                if x >> (j - 1) & 1 == 1 {
                    v += alpha[j];
                } else {
                    v -= alpha[j];
                }
            }
            if (big_n as u32 - x.count_ones()).is_multiple_of(2) {
                v + alpha[big_n + 1]
            } else {
                v - alpha[big_n + 1]
            }
        })
        .collect();
    HypercubeFunction::new(big_n, values)
}

/// `‖α_0 + Σ α_j ε_j + α_{2n+1} Π ε_j‖_p` in `L^p(D_{2n})`.
pub fn rademacher_norm(n: usize, alpha: &[C64], p: PExponent) -> Result<f64> {
    Ok(lp_norm(&rademacher_combination(n, alpha)?, p))
}

/// The norm ratio obtained by flipping the sign of `α_{2n+1}`.
pub fn rad1_ratio(n: usize, alpha: &[C64], p: PExponent) -> Result<f64> {
    let num = rademacher_norm(n, alpha, p)?;
    let mut flipped = alpha.to_vec();
    flipped[2 * n + 1] = -flipped[2 * n + 1];
    let den = rademacher_norm(n, &flipped, p)?;
    if den == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(num / den)
}

#[derive(Clone, Debug, Serialize)]
pub struct FgReport {
    pub n: usize,
    /// `Σ |f|` and `Σ |g|` over `D_{2n}` (that is, `2^{2n}` times the L¹ norms).
    pub f_sum: i64,
    pub g_sum: i64,
    /// `2n·Σ|g| = (2n+2)·Σ|f|`.
    pub norm_identity: bool,
    /// `2n g = f + Σ_i ρ_i(f) + ρ(f)` pointwise.
    pub pointwise_identity: bool,
    pub f_in_4z: bool,
    /// `‖g‖_1 / ‖f‖_1`.
    pub ratio: f64,
}

impl FgReport {
    pub fn passes(&self) -> bool {
        self.norm_identity && self.pointwise_identity && self.f_in_4z
    }
}

/// Exact integer check of the `f`/`g` pair on `D_{2n}`, where
/// `f = 1 + Σε_j − (−1)ⁿΠε_j` and `g = 1 + Σε_j + (−1)ⁿΠε_j`.
pub fn fg_identity_check(n: usize) -> Result<FgReport> {
    check_index(n, 1, MAX_VARIABLES / 2)?;
    let big_n = 2 * n;
    let sign_n: i64 = if n.is_multiple_of(2) { 1 } else { -1 };
    let point = |x: usize, s: i64| -> i64 {
        let plus = i64::from(x.count_ones());
        let prod = if (big_n as i64 - plus) % 2 == 0 { 1 } else { -1 };
        1 + plus - (big_n as i64 - plus) + s * sign_n * prod
    };
    let size = 1usize << big_n;
    let f: Vec<i64> = (0..size).map(|x| point(x, -1)).collect();
    let g: Vec<i64> = (0..size).map(|x| point(x, 1)).collect();
    let all = size - 1;
    let pointwise_identity = (0..size).all(|x| {
        let flips: i64 = (0..big_n).map(|i| f[x ^ (1 << i)]).sum();
        2 * n as i64 * g[x] == f[x] + flips - f[x ^ all]
    });
    let f_sum: i64 = f.iter().map(|v| v.abs()).sum();
    let g_sum: i64 = g.iter().map(|v| v.abs()).sum();
    Ok(FgReport {
        n,
        f_sum,
        g_sum,
        norm_identity: 2 * n as i64 * g_sum == (2 * n as i64 + 2) * f_sum,
        pointwise_identity,
        f_in_4z: f.iter().all(|v| v % 4 == 0),
        ratio: g_sum as f64 / f_sum as f64,
    })
}

/// `P(t) = ‖1 + Σε_j + tΠε_j‖_p^p` on `D_{2n}`.
pub fn poly_p(n: usize, p: f64, t: f64) -> Result<f64> {
    let p = PExponent::new(p)?;
    if p.is_infinite() {
        return Err(Error::InvalidExponent(f64::INFINITY));
    }
    let mut alpha = vec![ONE; 2 * n + 2];
    alpha[2 * n + 1] = C64::new(t, 0.0);
    let f = rademacher_combination(n, &alpha)?;
    let p = p.value();
    Ok(f.values.iter().map(|v| v.norm().powf(p)).sum::<f64>() / f.values.len() as f64)
}

/// `P(t) − P(−t)`; nonzero exactly when the sign of the top coefficient
/// matters.
pub fn asym_probe(n: usize, p: f64, t: f64) -> Result<f64> {
    Ok(poly_p(n, p, t)? - poly_p(n, p, -t)?)
}

/// Largest `|asym_probe|` over [`ASYM_GRID`].
pub fn asym_grid_max(n: usize, p: f64) -> Result<f64> {
    ASYM_GRID
        .iter()
        .map(|&t| asym_probe(n, p, t).map(f64::abs))
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
}

/// `α` with every entry zero except `α_0 = 1`.
pub fn unit_alpha(n: usize) -> Vec<C64> {
    let mut a = vec![ZERO; 2 * n + 2];
    a[0] = ONE;
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::binomial;
    use proptest::prelude::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn pe(p: f64) -> PExponent {
        PExponent::new(p).unwrap()
    }

    #[test]
    fn rademacher_moments() {
        for n in 1..=5 {
            for j in 1..=n {
                let ej = rademacher(n, j).unwrap();
                assert_eq!(ej.mean(), ZERO);
                for k in 1..=n {
                    let m = ej.mul(&rademacher(n, k).unwrap()).unwrap().mean();
                    assert_eq!(m, if j == k { ONE } else { ZERO });
                }
            }
            let mut prod = HypercubeFunction::constant(n, ONE).unwrap();
            for j in 1..=n {
                prod = prod.mul(&rademacher(n, j).unwrap()).unwrap();
            }
            assert_eq!(prod, HypercubeFunction::product(n).unwrap());
            assert_eq!(prod.mean(), ZERO);
        }
        assert!(rademacher(3, 4).is_err());
        assert!(rademacher(3, 0).is_err());
    }

    #[test]
    fn lp_examples() {
        let one = HypercubeFunction::constant(2, ONE).unwrap();
        let e1 = rademacher(2, 1).unwrap();
        for p in [1.0, 1.5, 3.0, f64::INFINITY] {
            assert!((lp_norm(&one, pe(p)) - 1.0).abs() < 1e-15);
            assert!((lp_norm(&e1, pe(p)) - 1.0).abs() < 1e-15);
        }
        let f = one.add(&e1).unwrap();
        assert!((lp_norm(&f, pe(1.0)) - 1.0).abs() < 1e-15);
        assert!(PExponent::new(0.5).is_err());
    }

    #[test]
    fn rademacher_norm_examples() {
        for n in 1..=3 {
            for p in [1.0, 2.5, f64::INFINITY] {
                assert!((rademacher_norm(n, &unit_alpha(n), pe(p)).unwrap() - 1.0).abs() < 1e-15);
            }
        }
        assert!((rademacher_norm(1, &[ONE; 4], pe(1.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            rademacher_norm(1, &[ONE; 3], pe(1.0)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn rad1_examples() {
        let mut a = vec![r(0.3), r(-1.0), C64::new(0.0, 2.0), ZERO];
        assert_eq!(rad1_ratio(1, &a, pe(3.0)).unwrap(), 1.0);
        a[3] = r(0.5);
        assert!(rad1_ratio(1, &a, pe(2.0)).unwrap() - 1.0 < 1e-12);
        let sqrt2 = rad1_ratio(1, &[ONE; 4], pe(4.0)).unwrap();
        assert!((sqrt2 - 2f64.sqrt()).abs() < 1e-14);
        // g over f at n = 1, p = 1.
        let g = [ONE, ONE, ONE, -ONE];
        assert!((rad1_ratio(1, &g, pe(1.0)).unwrap() - 2.0).abs() < 1e-14);
        assert!(matches!(
            rad1_ratio(1, &[ZERO; 4], pe(1.0)),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn fg_pair() {
        let r1 = fg_identity_check(1).unwrap();
        assert_eq!((r1.f_sum, r1.g_sum), (4, 8));
        assert_eq!(r1.ratio, 2.0);
        for n in 1..=6 {
            let rep = fg_identity_check(n).unwrap();
            assert!(rep.passes(), "{rep:?}");
            assert!((rep.ratio - (n as f64 + 1.0) / n as f64).abs() < 1e-15);
        }
    }

    /// `P(t)` grouped by the number `k` of coordinates equal to `+1`.
    fn poly_p_grouped(n: usize, p: f64, t: f64) -> f64 {
        let big_n = 2 * n;
        (0..=big_n)
            .map(|k| {
                let sign = if (big_n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
                let v = 1.0 + 2.0 * k as f64 - big_n as f64 + t * sign;
                binomial(big_n, k) as f64 * v.abs().powf(p)
            })
            .sum::<f64>()
            / (1u64 << big_n) as f64
    }

    #[test]
    fn poly_p_examples() {
        for t in [-1.0f64, -0.5, 0.0, 0.3, 0.7, 1.0, 2.0] {
            let expected = ((3.0 + t).powi(4) + 3.0 * (1.0 - t).powi(4)) / 4.0;
            assert!((poly_p(1, 4.0, t).unwrap() - expected).abs() < 1e-12);
            assert!((asym_probe(1, 4.0, t).unwrap() - 48.0 * t).abs() < 1e-11);
            for n in 1..=3 {
                for p in [1.0, 3.0, 4.5] {
                    let a = poly_p(n, p, t).unwrap();
                    assert!((a - poly_p_grouped(n, p, t)).abs() <= 1e-10 * a.max(1.0));
                }
            }
        }
        assert!(poly_p(1, 0.5, 0.0).is_err());
    }

    #[test]
    fn asymmetry_pattern() {
        for n in 1..=3 {
            for q in 1..=n {
                assert!(asym_grid_max(n, 2.0 * q as f64).unwrap() <= 1e-10, "n={n} q={q}");
            }
        }
        for (n, p) in [(1, 4.0), (2, 6.0), (1, 3.0), (2, 3.0)] {
            assert!(asym_grid_max(n, p).unwrap() > ASYM_THRESHOLD, "n={n} p={p}");
        }
        assert!(asym_probe(1, 3.0, 0.5).unwrap().abs() > ASYM_THRESHOLD);
    }

    fn alpha_strategy(n: usize) -> impl Strategy<Value = Vec<C64>> {
        proptest::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 2 * n + 2)
            .prop_map(|v| v.into_iter().map(|(a, b)| C64::new(a, b)).collect())
    }

    proptest! {
        #[test]
        fn distribution_invariance(n in 1usize..=3, seed in any::<u64>(), p in 1.0..5.0f64) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let alpha: Vec<C64> = (0..2 * n + 2)
                .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let big_n = 2 * n;
            let prod = HypercubeFunction::product(big_n).unwrap();
            let mut h = HypercubeFunction::constant(big_n, alpha[0]).unwrap();
            for j in 1..=big_n {
                let twisted = rademacher(big_n, j).unwrap().mul(&prod).unwrap();
                h = h.add(&twisted.scale(alpha[j])).unwrap();
            }
            // The product of the twisted variables is Π ε_j again.
            h = h.add(&prod.scale(alpha[big_n + 1])).unwrap();
            let direct = rademacher_norm(n, &alpha, pe(p)).unwrap();
            prop_assert!((lp_norm(&h, pe(p)) - direct).abs() <= 1e-12 * direct.max(1.0));
        }

        #[test]
        fn single_sign_flip_symmetry(alpha in alpha_strategy(2), j in 1usize..=4, p in 1.0..5.0f64) {
            // ε_j ↦ −ε_j also negates Π ε_i, so the top coefficient flips along.
            let mut flipped = alpha.clone();
            flipped[j] = -flipped[j];
            flipped[5] = -flipped[5];
            let a = rademacher_norm(2, &alpha, pe(p)).unwrap();
            let b = rademacher_norm(2, &flipped, pe(p)).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
            let mut top = alpha.clone();
            top[5] = -top[5];
            let den = rademacher_norm(2, &top, pe(p)).unwrap();
            if den > 0.0 {
                prop_assert!((rad1_ratio(2, &alpha, pe(p)).unwrap() - a / den).abs() < 1e-12);
            }
        }
    }
}
