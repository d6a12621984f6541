//! Schatten and noncommutative L^p norms, weighted p-direct sums, amplified
//! norms of subspace maps and exact norms of spin multipliers.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{conjugation_pi, spin};
use crate::error::{Error, Result};
use crate::linalg::{self, random, ComplexMatrix, C64, ZERO};
use crate::subspace::{Ambient, SubspaceMap};

/// Exponent `p ∈ [1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PExponent(f64);

impl PExponent {
    pub const INFINITY: PExponent = PExponent(f64::INFINITY);
    pub const ONE: PExponent = PExponent(1.0);
    pub const TWO: PExponent = PExponent(2.0);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Dual exponent `p' = p/(p−1)`.
    pub fn conjugate(self) -> PExponent {
        if self.0 == 1.0 {
            Self::INFINITY
        } else if self.is_infinite() {
            Self::ONE
        } else {
            Self(self.0 / (self.0 - 1.0))
        }
    }
}

impl TryFrom<f64> for PExponent {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PExponent> for f64 {
    fn from(p: PExponent) -> f64 {
        p.0
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn check_normalizer(c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidWeight(c));
    }
    Ok(())
}

/// `Σ σ_i^p` scaled by `scale^{−p}`, guarding against overflow for large p.
fn scaled_power_sum(values: &[f64], p: f64, scale: f64) -> f64 {
    values.iter().map(|s| (s / scale).powf(p)).sum()
}

/// `(normalizer·Σ σ_i^p)^{1/p}`; `σ_1` for `p = ∞`.
pub fn schatten_norm(x: &ComplexMatrix, p: PExponent, normalizer: f64) -> Result<f64> {
    check_normalizer(normalizer)?;
    let s = linalg::singular_values(x).values;
    let top = s.first().copied().unwrap_or(0.0);
    if p.is_infinite() || top == 0.0 {
        return Ok(top);
    }
    let p = p.value();
    Ok(top * (normalizer * scaled_power_sum(&s, p, top)).powf(1.0 / p))
}

/// `(Σ w_i ‖x_i‖_p^p)^{1/p}` with unit normalizer.
pub fn pdirect_norm(parts: &[ComplexMatrix], weights: &[f64], p: PExponent) -> Result<f64> {
    pdirect_norm_normalized(parts, weights, p, 1.0)
}

/// Weighted p-direct sum norm where each part is measured with the given
/// trace normalizer. For `p = ∞` the maximum over parts of positive weight.
pub fn pdirect_norm_normalized(
    parts: &[ComplexMatrix],
    weights: &[f64],
    p: PExponent,
    normalizer: f64,
) -> Result<f64> {
    if parts.len() != weights.len() {
        return Err(Error::LengthMismatch {
            expected: parts.len(),
            found: weights.len(),
        });
    }
    check_normalizer(normalizer)?;
    for &w in weights {
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::InvalidWeight(w));
        }
    }
    let spectra: Vec<(f64, Vec<f64>)> = parts
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(x, &w)| (w, linalg::singular_values(x).values))
        .collect();
    let top = spectra
        .iter()
        .filter_map(|(_, s)| s.first().copied())
        .fold(0.0, f64::max);
    if p.is_infinite() || top == 0.0 {
        return Ok(top);
    }
    let p = p.value();
    let sum: f64 = spectra
        .iter()
        .map(|(w, s)| w * normalizer * scaled_power_sum(s, p, top))
        .sum();
    Ok(top * sum.powf(1.0 / p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EstimateKind {
    Exact,
    CertifiedLowerBound,
}

impl fmt::Display for EstimateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimateKind::Exact => "EXACT",
            EstimateKind::CertifiedLowerBound => "CERTIFIED_LOWER_BOUND",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub kind: EstimateKind,
    /// Coordinates of the maximizing input in the amplified domain basis.
    pub witness: Option<Vec<C64>>,
    pub method: String,
    pub iterations: usize,
    /// The best restart exhausted its iteration budget before settling.
    pub stalled: bool,
}

impl NormEstimate {
    pub fn exact(value: f64, method: impl Into<String>) -> Self {
        Self {
            value,
            kind: EstimateKind::Exact,
            witness: None,
            method: method.into(),
            iterations: 0,
            stalled: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_iter: usize,
    /// Initial relative step length.
    pub step0: f64,
    /// Relative improvement below which a restart stops.
    pub tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 64,
            max_iter: 500,
            step0: 0.25,
            tol: 1e-12,
        }
    }
}

/// Relative smoothing of small singular values for `p < 2`.
const SMOOTHING: f64 = 1e-9;
/// Exponent used to steer ascent when `p = ∞`; ratios are always reported
/// with the exact operator norm.
const SURROGATE_P: f64 = 64.0;
const MIN_STEP: f64 = 1e-13;

/// A linear family `z ↦ Σ z_m B_m` inside an ambient.
struct LinearFamily<'a> {
    ambient: &'a Ambient,
    mats: Vec<ComplexMatrix>,
}

impl LinearFamily<'_> {
    fn realize(&self, z: &[C64]) -> ComplexMatrix {
        let (r, c) = self.ambient.shape();
        let mut out = ComplexMatrix::zeros(r, c);
        for (b, &a) in self.mats.iter().zip(z) {
            if a != ZERO {
                out.axpy(a, b);
            }
        }
        out
    }

    /// Returns `(‖X‖, ∇ log ‖X‖_q)` where the gradient is taken with respect
    /// to the coordinates and `q` is the steering exponent.
    fn norm_and_log_gradient(&self, z: &[C64], p: PExponent) -> (f64, Vec<C64>) {
        let x = self.realize(z);
        let parts = self.ambient.split(&x);
        let blocks = self.ambient.blocks();
        let normalizer = self.ambient.normalizer();
        let svds: Vec<(f64, linalg::Svd)> = parts
            .iter()
            .zip(blocks)
            .filter(|(_, b)| b.weight > 0.0)
            .map(|(x, b)| (b.weight, linalg::svd(x)))
            .collect();
        let top = svds
            .iter()
            .filter_map(|(_, d)| d.values.first().copied())
            .fold(0.0, f64::max);
        if top == 0.0 {
            return (0.0, vec![ZERO; z.len()]);
        }
        let exact = if p.is_infinite() {
            top
        } else {
            let s: f64 = svds
                .iter()
                .map(|(w, d)| w * normalizer * scaled_power_sum(&d.values, p.value(), top))
                .sum();
            top * s.powf(1.0 / p.value())
        };

        let q = if p.is_infinite() { SURROGATE_P } else { p.value() };
        let total: f64 = svds
            .iter()
            .map(|(w, d)| w * normalizer * d.values.iter().map(|s| smoothed(s / top, q)).sum::<f64>())
            .sum();

        // Gradient matrix of log‖X‖_q, assembled block-diagonally.
        let mut grads = Vec::with_capacity(parts.len());
        let mut it = svds.iter();
        for (part, b) in parts.iter().zip(blocks) {
            if b.weight == 0.0 {
                grads.push(ComplexMatrix::zeros(part.rows(), part.cols()));
                continue;
            }
            let (w, d) = it.next().expect("one svd per weighted block");
            let mut g = ComplexMatrix::zeros(part.rows(), part.cols());
            for (i, &s) in d.values.iter().enumerate() {
                if s == 0.0 {
                    continue;
                }
                // ∂ log‖X‖_q / ∂σ_i, computed on σ/σ_max.
                let coeff = w * normalizer * smoothed_derivative(s / top, q) / (top * total);
                if coeff == 0.0 {
                    continue;
                }
                for r in 0..g.rows() {
                    let ur = d.u[(r, i)] * coeff;
                    if ur == ZERO {
                        continue;
                    }
                    for c in 0..g.cols() {
                        g[(r, c)] += ur * d.v[(c, i)].conj();
                    }
                }
            }
            grads.push(g);
        }
        let g = linalg::block_diag(&grads);
        let grad = self.mats.iter().map(|b| g.hs_inner(b)).collect();
        (exact, grad)
    }
}

/// `σ^q` with `σ` replaced by `(σ² + ε²)^{1/2}` for `q < 2`; `σ` is
/// relative to the largest singular value.
fn smoothed(s: f64, q: f64) -> f64 {
    if q < 2.0 {
        (s * s + SMOOTHING * SMOOTHING).powf(q / 2.0) - SMOOTHING.powf(q)
    } else {
        s.powf(q)
    }
}

/// `(1/q)·d/dσ smoothed(σ)`.
fn smoothed_derivative(s: f64, q: f64) -> f64 {
    if q < 2.0 {
        s * (s * s + SMOOTHING * SMOOTHING).powf(q / 2.0 - 1.0)
    } else {
        s.powf(q - 1.0)
    }
}

/// Norm ratio `‖û(z)‖/‖z‖` at coordinates `z` of the amplified domain.
pub fn witness_ratio(amplified: &SubspaceMap, z: &[C64], p: PExponent) -> Result<f64> {
    let x = amplified.domain().combine(z);
    let y = amplified.codomain().combine(&amplified.apply_coords(z));
    let den = amplified.domain().ambient().norm(&x, p);
    if den == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(amplified.codomain().ambient().norm(&y, p) / den)
}

struct RestartOutcome {
    ratio: f64,
    witness: Vec<C64>,
    iterations: usize,
    converged: bool,
}

fn run_restart(num: &LinearFamily, den: &LinearFamily, p: PExponent, opt: &OptimizerConfig, index: usize) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    rng.set_stream(index as u64);
    let dim = den.mats.len();
    let mut z = random::gaussian_vec(&mut rng, dim);

    let evaluate = |z: &[C64]| {
        let (n, gn) = num.norm_and_log_gradient(z, p);
        let (d, gd) = den.norm_and_log_gradient(z, p);
        (n, d, gn, gd)
    };
    let normalize = |z: &mut Vec<C64>| {
        let s = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if s > 0.0 {
            z.iter_mut().for_each(|c| *c /= s);
        }
    };
    normalize(&mut z);

    let (n0, mut d, mut gn, mut gd) = evaluate(&z);
    let mut ratio = if d > 0.0 { n0 / d } else { 0.0 };
    let mut best = (ratio, z.clone());
    let mut step = opt.step0;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opt.max_iter {
        iterations += 1;
        let dir: Vec<C64> = gn.iter().zip(&gd).map(|(a, b)| a - b).collect();
        let dnorm = dir.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if dnorm == 0.0 || !dnorm.is_finite() || d == 0.0 {
            converged = true;
            break;
        }
        let mut accepted = false;
        while step >= MIN_STEP {
            let mut trial: Vec<C64> = z.iter().zip(&dir).map(|(a, b)| a + b * (step / dnorm)).collect();
            normalize(&mut trial);
            let (tn, td, tgn, tgd) = evaluate(&trial);
            let tr = if td > 0.0 { tn / td } else { 0.0 };
            if tr > ratio {
                let gain = (tr - ratio) / ratio.max(f64::MIN_POSITIVE);
                z = trial;
                (d, gn, gd) = (td, tgn, tgd);
                ratio = tr;
                step = (step * 2.0).min(1.0);
                accepted = true;
                if ratio > best.0 {
                    best = (ratio, z.clone());
                }
                if gain < opt.tol {
                    converged = true;
                }
                break;
            }
            step *= 0.5;
        }
        if !accepted || converged {
            converged = true;
            break;
        }
    }
    RestartOutcome {
        ratio: best.0,
        witness: best.1,
        iterations,
        converged,
    }
}

/// Certified lower bound for `‖I_{S^p_k} ⊗ u‖` by multi-start ascent.
///
/// Restarts run in parallel; restart `i` draws from the ChaCha8 stream `i`
/// of the configured seed, so results do not depend on scheduling. The
/// reported value is re-evaluated exactly at the returned witness.
pub fn level_norm_lower_bound(u: &SubspaceMap, k: usize, p: PExponent, opt: &OptimizerConfig) -> Result<NormEstimate> {
    if opt.restarts == 0 {
        return Err(Error::DimensionMismatch("optimizer needs at least one restart".into()));
    }
    let amp = u.amplify(k)?;
    let den = LinearFamily {
        ambient: amp.domain().ambient(),
        mats: amp.domain().elements().to_vec(),
    };
    let images: Vec<ComplexMatrix> = (0..amp.domain().dim())
        .map(|m| amp.codomain().combine(&amp.coeffs().column(m)))
        .collect();
    let num = LinearFamily {
        ambient: amp.codomain().ambient(),
        mats: images,
    };

    let outcomes: Vec<RestartOutcome> = (0..opt.restarts)
        .into_par_iter()
        .map(|i| run_restart(&num, &den, p, opt, i))
        .collect();

    let mut best_index = 0;
    for (i, o) in outcomes.iter().enumerate().skip(1) {
        if o.ratio > outcomes[best_index].ratio + 1e-12 {
            best_index = i;
        }
    }
    let best = &outcomes[best_index];
    let value = witness_ratio(&amp, &best.witness, p)?;
    Ok(NormEstimate {
        value,
        kind: EstimateKind::CertifiedLowerBound,
        witness: Some(best.witness.clone()),
        method: format!("multistart-ascent(k={k}, p={p}, restarts={})", opt.restarts),
        iterations: outcomes.iter().map(|o| o.iterations).sum(),
        stalled: !best.converged,
    })
}

/// Exact norm of the diagonal multiplier `Σ_j α_j π_j` on `L^p(C_{2n})`,
/// normalized as in `‖Σ α_j s_j^* ⊗ s_j‖` in `L^p ⊗_p L^p`.
pub fn spin_multiplier_norm(n: usize, alpha: &[C64], p: PExponent) -> Result<NormEstimate> {
    if alpha.len() != 2 * n + 2 {
        return Err(Error::LengthMismatch {
            expected: 2 * n + 2,
            found: alpha.len(),
        });
    }
    let diagonals: Vec<Vec<i8>> = (0..=2 * n + 1)
        .map(|j| conjugation_pi(n, j))
        .collect::<Result<_>>()?;
    let d: Vec<f64> = (0..1usize << (2 * n))
        .map(|a| {
            diagonals
                .iter()
                .zip(alpha)
                .map(|(diag, &al)| al * f64::from(diag[a]))
                .sum::<C64>()
                .norm()
        })
        .collect();
    let top = d.iter().copied().fold(0.0, f64::max);
    let value = if p.is_infinite() || top == 0.0 {
        top
    } else {
        let mean = scaled_power_sum(&d, p.value(), top) / d.len() as f64;
        top * mean.powf(1.0 / p.value())
    };
    Ok(NormEstimate::exact(value, "spin-multiplier-diagonal"))
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorEqualityReport {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    /// `max |‖X₊‖_p^p − ‖X₋‖_p^p| / max(‖X₊‖_p^p, ‖X₋‖_p^p)`.
    pub max_relative_deviation: f64,
}

/// Compares `‖Σ_{j≤2n} a_j ⊗ s_j ± a_{2n+1} ⊗ s_{2n+1}‖_p^p` in
/// `S^p[L^p(C_{2n})]` for random matrix coefficients.
pub fn tensor_equality_check(n: usize, p: f64, trials: usize, seed: u64) -> Result<TensorEqualityReport> {
    tensor_equality_check_with(n, p, trials, seed, false)
}

/// As [`tensor_equality_check`]; `zero_last` forces `a_{2n+1} = 0`.
pub fn tensor_equality_check_with(n: usize, p: f64, trials: usize, seed: u64, zero_last: bool) -> Result<TensorEqualityReport> {
    if !(p >= 2.0 && p.fract() == 0.0 && (p as u64).is_multiple_of(2)) {
        return Err(Error::InvalidExponent(p));
    }
    let pe = PExponent::new(p)?;
    let spins: Vec<ComplexMatrix> = (0..=2 * n + 1).map(|j| spin(n, j)).collect::<Result<_>>()?;
    let normalizer = 1.0 / (1u64 << (2 * n)) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for t in 0..trials {
        let size = 1 + t % 4;
        let a: Vec<ComplexMatrix> = (0..=2 * n + 1)
            .map(|j| {
                if zero_last && j == 2 * n + 1 {
                    ComplexMatrix::zeros(size, size)
                } else {
                    random::gaussian(&mut rng, size, size)
                }
            })
            .collect();
        let mut common = ComplexMatrix::zeros(size << (2 * n), size << (2 * n));
        for j in 0..=2 * n {
            common += &linalg::kron(&a[j], &spins[j])?;
        }
        let last = linalg::kron(&a[2 * n + 1], &spins[2 * n + 1])?;
        let plus = schatten_norm(&(&common + &last), pe, normalizer)?.powf(p);
        let minus = schatten_norm(&(&common - &last), pe, normalizer)?.powf(p);
        let scale = plus.max(minus);
        if scale > 0.0 {
            worst = worst.max((plus - minus).abs() / scale);
        }
    }
    Ok(TensorEqualityReport {
        n,
        p,
        trials,
        max_relative_deviation: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::omega_word;
    use crate::subspace::{matrix_units, SubspaceBasis};

    fn p(x: f64) -> PExponent {
        PExponent::new(x).unwrap()
    }

    #[test]
    fn exponent_validation() {
        assert!(matches!(PExponent::new(0.5), Err(Error::InvalidExponent(_))));
        assert!(PExponent::new(f64::NAN).is_err());
        assert!(PExponent::new(f64::INFINITY).unwrap().is_infinite());
        assert_eq!(p(2.0).conjugate(), p(2.0));
        assert_eq!(p(1.0).conjugate(), PExponent::INFINITY);
        assert!((p(3.0).conjugate().value() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn schatten_examples() {
        for big_n in 1..=4usize {
            let side = 1 << big_n;
            let c = 1.0 / side as f64;
            for q in [1.0, 1.5, 3.0, f64::INFINITY] {
                let e = PExponent::new(q).unwrap();
                let id = schatten_norm(&ComplexMatrix::identity(side), e, c).unwrap();
                assert!((id - 1.0).abs() < 1e-14);
                for a in 0..side {
                    let w = omega_word(big_n, &crate::fock::subset_elements(a)).unwrap();
                    assert!((schatten_norm(&w, e, c).unwrap() - 1.0).abs() < 1e-13);
                }
            }
        }
        let col = ComplexMatrix::unit(3, 1, 1, 0);
        assert_eq!(schatten_norm(&col, p(1.0), 1.0).unwrap(), 1.0);
        assert!(schatten_norm(&col, p(1.0), 0.0).is_err());
    }

    #[test]
    fn pdirect_examples() {
        let u = ComplexMatrix::identity(2);
        let x = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [0.0, 1.0]]);
        assert!(
            (pdirect_norm(std::slice::from_ref(&x), &[1.0], p(3.0)).unwrap() - schatten_norm(&x, p(3.0), 1.0).unwrap()).abs() < 1e-14
        );
        let unit = ComplexMatrix::unit(2, 2, 0, 0);
        for t in [0.1, 0.5, 0.9] {
            let v = pdirect_norm(&[unit.clone(), unit.clone()], &[t, 1.0 - t], p(3.0)).unwrap();
            assert!((v - 1.0).abs() < 1e-14);
            let v = pdirect_norm(&[unit.clone(), ComplexMatrix::zeros(2, 2)], &[t, 1.0 - t], p(3.0)).unwrap();
            assert!((v - t.powf(1.0 / 3.0)).abs() < 1e-14);
        }
        assert!(matches!(
            pdirect_norm(&[u], &[0.5, 0.5], p(2.0)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn identity_map_level_norm_is_one() {
        let basis = SubspaceBasis::new("M2", Ambient::matrices(2, 2), matrix_units(2, 2)).unwrap();
        let id = SubspaceMap::identity(basis);
        let opt = OptimizerConfig {
            restarts: 3,
            max_iter: 20,
            ..Default::default()
        };
        for q in [1.0, 3.0, f64::INFINITY] {
            let e = level_norm_lower_bound(&id, 2, PExponent::new(q).unwrap(), &opt).unwrap();
            assert!((e.value - 1.0).abs() < 1e-12, "{}", e.value);
        }
    }

    #[test]
    fn transpose_level_two_reaches_two_at_infinity() {
        let basis = SubspaceBasis::new("M2", Ambient::matrices(2, 2), matrix_units(2, 2)).unwrap();
        let t = SubspaceMap::from_fn(basis.clone(), basis, |x| Ok(x.transpose())).unwrap();
        let opt = OptimizerConfig {
            restarts: 8,
            max_iter: 300,
            ..Default::default()
        };
        let e = level_norm_lower_bound(&t, 2, PExponent::INFINITY, &opt).unwrap();
        assert!(e.value >= 2.0 - 1e-3, "{}", e.value);
        let amp = t.amplify(2).unwrap();
        let again = witness_ratio(&amp, e.witness.as_ref().unwrap(), PExponent::INFINITY).unwrap();
        assert!((again - e.value).abs() <= 1e-9);
    }

    #[test]
    fn spin_multiplier_examples() {
        let one = C64::new(1.0, 0.0);
        for q in [1.0, 2.5, f64::INFINITY] {
            let mut a = vec![ZERO; 4];
            a[0] = one;
            let e = spin_multiplier_norm(1, &a, PExponent::new(q).unwrap()).unwrap();
            assert!((e.value - 1.0).abs() < 1e-14);
            assert_eq!(e.kind, EstimateKind::Exact);
        }
        let a = [one, one, one, -one];
        assert_eq!(spin_multiplier_norm(1, &a, PExponent::INFINITY).unwrap().value, 2.0);
        let a = [one, one, one, one];
        assert_eq!(spin_multiplier_norm(1, &a, PExponent::INFINITY).unwrap().value, 4.0);
        assert!(spin_multiplier_norm(1, &a[..3], PExponent::ONE).is_err());
    }

    #[test]
    fn tensor_equality_rejects_odd_exponent() {
        assert!(matches!(tensor_equality_check(1, 3.0, 1, 0), Err(Error::InvalidExponent(_))));
        assert!(matches!(tensor_equality_check(1, 4.5, 1, 0), Err(Error::InvalidExponent(_))));
        let r = tensor_equality_check_with(1, 4.0, 5, 1, true).unwrap();
        assert!(r.max_relative_deviation < 1e-12);
    }
}
