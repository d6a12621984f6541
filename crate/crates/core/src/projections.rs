//! Concrete projections on matrix spaces and Clifford algebras, their
//! witnesses, and the block-structure checks for the Hilbertian spaces
//! `H_{n,k}`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::{self, basis_clifford, basis_e, basis_f, clifford_ambient};
use crate::error::{check_index, Error, Result};
use crate::fock::{self, binomial, creation_restricted, subset_mask};
use crate::linalg::{self, random, ComplexMatrix, C64, ONE, ZERO};
use crate::schatten::{level_norm_lower_bound, pdirect_norm, NormEstimate, OptimizerConfig, PExponent};
use crate::subspace::{matrix_units, Ambient, SubspaceBasis, SubspaceMap};

/// Residual tolerance for idempotence and range checks.
pub const PROJECTION_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct ProjectionSpec {
    pub name: String,
    /// The projection as a map of its ambient (or of a spanning domain)
    /// into itself.
    pub map: SubspaceMap,
    pub range: SubspaceBasis,
    pub weights: Option<Vec<f64>>,
}

impl ProjectionSpec {
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.map.apply(x)
    }

    /// `max |coeffs(P∘P) − coeffs(P)|`.
    pub fn idempotence_residual(&self) -> f64 {
        let c = self.map.coeffs();
        c.matmul(c).max_abs_diff(c)
    }

    /// Largest of: distance of each image of a domain basis element from the
    /// range, and `|P(r) − r|` over range basis elements.
    pub fn range_residual(&self) -> Result<f64> {
        let mut residual: f64 = 0.0;
        let dom = self.map.domain();
        for m in 0..dom.dim() {
            let image = self.map.codomain().combine(&self.map.coeffs().column(m));
            let back = self.range.combine(&self.range_coordinates_ls(&image));
            residual = residual.max(back.max_abs_diff(&image));
        }
        for r in self.range.elements() {
            residual = residual.max(self.apply(r)?.max_abs_diff(r));
        }
        Ok(residual)
    }

    /// Least-squares coordinates in the range basis (no span check).
    fn range_coordinates_ls(&self, x: &ComplexMatrix) -> Vec<C64> {
        match self.range.coordinates(x) {
            Ok(c) => c,
            Err(_) => vec![ZERO; self.range.dim()],
        }
    }

    /// Restriction of the projection to a subspace of its domain; any
    /// amplified norm of the restriction bounds that of the projection from
    /// below.
    pub fn restricted(&self, sub: SubspaceBasis) -> Result<SubspaceMap> {
        self.map.restrict(sub)
    }

    /// Certified lower bound for `‖I_{S^p_k} ⊗ P‖`, optionally searching only
    /// over a subspace of the domain.
    pub fn level_lower_bound(
        &self,
        k: usize,
        p: PExponent,
        opt: &OptimizerConfig,
        domain: Option<SubspaceBasis>,
    ) -> Result<NormEstimate> {
        match domain {
            Some(sub) => level_norm_lower_bound(&self.restricted(sub)?, k, p, opt),
            None => level_norm_lower_bound(&self.map, k, p, opt),
        }
    }
}

fn transpose_index(size_r: usize, size_c: usize, m: usize) -> usize {
    // Unit E_ab of an r×c space, row-major, to E_ba of the c×r space.
    let (a, b) = (m / size_c, m % size_c);
    b * size_r + a
}

fn sym_projection(size: usize, sign: f64) -> Result<ProjectionSpec> {
    check_index(size, 1, linalg::DEFAULT_DIMENSION_CAP)?;
    let units = SubspaceBasis::new(format!("S_{size}"), Ambient::matrices(size, size), matrix_units(size, size))?;
    let d = size * size;
    let mut coeffs = ComplexMatrix::zeros(d, d);
    for m in 0..d {
        coeffs[(m, m)] += C64::new(0.5, 0.0);
        coeffs[(transpose_index(size, size, m), m)] += C64::new(0.5 * sign, 0.0);
    }
    let mut range = Vec::new();
    for a in 0..size {
        for b in a..size {
            let e = ComplexMatrix::unit(size, size, a, b);
            let r = if sign > 0.0 {
                &e + &e.transpose()
            } else if a == b {
                continue;
            } else {
                &e - &e.transpose()
            };
            range.push(r);
        }
    }
    let label = if sign > 0.0 { "sym" } else { "asym" };
    let range = SubspaceBasis::new(format!("{label}_{size}"), units.ambient().clone(), range)?;
    Ok(ProjectionSpec {
        name: format!("P_{label}({size})"),
        map: SubspaceMap::new(units.clone(), units, coeffs)?,
        range,
        weights: None,
    })
}

/// `P_s = (Id + σ)/2` on `S_I^p`, onto symmetric matrices.
pub fn proj_sym(size: usize) -> Result<ProjectionSpec> {
    sym_projection(size, 1.0)
}

/// `P_a = (Id − σ)/2` on `S_I^p`, onto antisymmetric matrices.
pub fn proj_asym(size: usize) -> Result<ProjectionSpec> {
    sym_projection(size, -1.0)
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidWeight(t));
    }
    Ok(())
}

/// `(z₁, z₂) ↦ (tz₁ + (1−t)σ^{−1}(z₂), tσ(z₁) + (1−t)z₂)` on
/// `S^p_{I,J} ⊕ S^p_{J,I}` with weights `(t, 1−t)`.
pub fn proj_rect(i: usize, j: usize, t: f64) -> Result<ProjectionSpec> {
    check_t(t)?;
    check_index(i, 1, linalg::DEFAULT_DIMENSION_CAP)?;
    check_index(j, 1, linalg::DEFAULT_DIMENSION_CAP)?;
    let ambient = Ambient::weighted(&[(i, j), (j, i)], &[t, 1.0 - t], 1.0)?;
    let d = i * j;
    let mut elems = Vec::with_capacity(2 * d);
    for m in 0..d {
        elems.push(ambient.assemble(&[ComplexMatrix::unit(i, j, m / j, m % j), ComplexMatrix::zeros(j, i)])?);
    }
    for m in 0..d {
        elems.push(ambient.assemble(&[ComplexMatrix::zeros(i, j), ComplexMatrix::unit(j, i, m / i, m % i)])?);
    }
    let units = SubspaceBasis::new(format!("S_{i},{j}+S_{j},{i}"), ambient.clone(), elems)?;
    let tc = C64::new(t, 0.0);
    let sc = C64::new(1.0 - t, 0.0);
    let mut coeffs = ComplexMatrix::zeros(2 * d, 2 * d);
    for m in 0..d {
        let mt = d + transpose_index(i, j, m);
        coeffs[(m, m)] = tc;
        coeffs[(mt, m)] = tc;
        coeffs[(m, mt)] = sc;
        coeffs[(mt, mt)] = sc;
    }
    let range_elems = (0..d)
        .map(|m| {
            let e = ComplexMatrix::unit(i, j, m / j, m % j);
            ambient.assemble(&[e.clone(), e.transpose()])
        })
        .collect::<Result<Vec<_>>>()?;
    let range = SubspaceBasis::new(format!("Y_{i},{j}"), ambient, range_elems)?;
    Ok(ProjectionSpec {
        name: format!("P_rect({i},{j},t={t})"),
        map: SubspaceMap::new(units.clone(), units, coeffs)?,
        range,
        weights: Some(vec![t, 1.0 - t]),
    })
}

/// The witness pair `z₁ ∈ S_2 ⊗ S_{2,1}` (4×2) and `z₂ ∈ S_2 ⊗ S_{1,2}`
/// (2×4) in the printed layout, where row `2a + i` of `z₁` holds entry `a`
/// of the column at outer position `(i, ·)`.
pub fn witness_rect_matrices(p: f64, theta: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let pe = PExponent::new(p)?;
    if pe.is_infinite() || p == 2.0 {
        return Err(Error::InvalidExponent(p));
    }
    if !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut z1 = ComplexMatrix::zeros(4, 2);
    let mut z2 = ComplexMatrix::zeros(2, 4);
    let r = |x: f64| C64::new(x, 0.0);
    if p > 2.0 {
        let c = theta.cos().powf(2.0 / p);
        let s = theta.sin().powf(2.0 / p);
        z1[(0, 0)] = r(c);
        z1[(2, 1)] = r(s);
        z2[(0, 0)] = r(c);
        z2[(1, 2)] = r(s);
    } else {
        let (c, s) = if p == 1.0 {
            (1.0, theta)
        } else {
            let q = pe.conjugate().value();
            (theta.cos().powf(2.0 / q), theta.sin().powf(2.0 / q))
        };
        z1[(0, 0)] = r(c);
        z1[(3, 0)] = r(s);
        z2[(0, 0)] = r(c);
        z2[(0, 3)] = r(s);
    }
    Ok((z1, z2))
}

/// `I_{S_2} ⊗ σ` in the printed layout: `z₁[2a+i][j] ↦ w[i][2a+j]`.
fn sigma_amplified(z1: &ComplexMatrix) -> ComplexMatrix {
    let mut w = ComplexMatrix::zeros(2, 4);
    for a in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                w[(i, 2 * a + j)] = z1[(2 * a + i, j)];
            }
        }
    }
    w
}

fn sigma_amplified_inverse(w: &ComplexMatrix) -> ComplexMatrix {
    let mut z = ComplexMatrix::zeros(4, 2);
    for a in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                z[(2 * a + i, j)] = w[(i, 2 * a + j)];
            }
        }
    }
    z
}

/// `‖(I_{S_2} ⊗ P)(z)‖ / ‖z‖` at the printed witness for `I = 2, J = 1`.
pub fn witness_rect(p: f64, t: f64, theta: f64) -> Result<f64> {
    check_t(t)?;
    let (z1, z2) = witness_rect_matrices(p, theta)?;
    let pe = PExponent::new(p)?;
    let weights = [t, 1.0 - t];
    let y1 = &z1.scale_real(t) + &sigma_amplified_inverse(&z2).scale_real(1.0 - t);
    let y2 = &sigma_amplified(&z1).scale_real(t) + &z2.scale_real(1.0 - t);
    let den = pdirect_norm(&[z1, z2], &weights, pe)?;
    if den == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(pdirect_norm(&[y1, y2], &weights, pe)? / den)
}

/// Coordinates of the printed witness in the level-2 amplification of
/// [`proj_rect`]`(2, 1, t)`.
pub fn witness_rect_coordinates(amplified: &SubspaceMap, z1: &ComplexMatrix, z2: &ComplexMatrix) -> Result<Vec<C64>> {
    // Printed layout is x ⊗ E; the amplification realizes E ⊗ x.
    let mut m1 = ComplexMatrix::zeros(4, 2);
    let mut m2 = ComplexMatrix::zeros(2, 4);
    for a in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                m1[(2 * i + a, j)] = z1[(2 * a + i, j)];
                m2[(i, 2 * j + a)] = z2[(i, 2 * a + j)];
            }
        }
    }
    let x = amplified.domain().ambient().assemble(&[m1, m2])?;
    amplified.domain().coordinates(&x)
}

fn coefficient_truncation(name: String, big_n: usize, keep: impl Fn(usize) -> bool, range: SubspaceBasis) -> Result<ProjectionSpec> {
    let full = basis_clifford(big_n)?;
    let diag: Vec<f64> = (0..1usize << big_n).map(|a| if keep(a) { 1.0 } else { 0.0 }).collect();
    Ok(ProjectionSpec {
        name,
        map: SubspaceMap::new(full.clone(), full, ComplexMatrix::from_real_diag(&diag))?,
        range,
        weights: None,
    })
}

/// Orthogonal projection of C_N onto `E_N = span{1, ω_1, …, ω_N}`.
pub fn proj_orth_e(big_n: usize) -> Result<ProjectionSpec> {
    let range = basis_e(big_n)?;
    coefficient_truncation(format!("P_E({big_n})"), big_n, |a| a.count_ones() <= 1, range)
}

/// Orthogonal projection `Q` of C_{2n} onto F_n.
pub fn proj_orth_f(n: usize) -> Result<ProjectionSpec> {
    let range = basis_f(n)?;
    let full = (1usize << (2 * n)) - 1;
    coefficient_truncation(format!("Q_F({n})"), 2 * n, move |a| a.count_ones() <= 1 || a == full, range)
}

/// `A = span{1, ω_1, ω_2, ω_1ω_2}` inside C_N, `N ≥ 2`.
pub fn clifford_a_domain(big_n: usize) -> Result<SubspaceBasis> {
    check_index(big_n, 2, fock::MAX_GENERATORS)?;
    let elems = [0usize, 1, 2, 3]
        .iter()
        .map(|&m| clifford::omega_word_mask(big_n, m))
        .collect::<Result<Vec<_>>>()?;
    SubspaceBasis::new(format!("A_{big_n}"), clifford_ambient(big_n), elems)
}

/// `R(z₁, z₂) = (tQz₁ + (1−t)τQz₂, tτQz₁ + (1−t)Qz₂)` on two weighted copies
/// of `L^p(C_{2n})`.
pub fn proj_r(n: usize, t: f64) -> Result<ProjectionSpec> {
    check_t(t)?;
    check_index(n, 1, fock::MAX_GENERATORS / 2)?;
    let big_n = 2 * n;
    let side = 1 << big_n;
    let ambient = Ambient::weighted(&[(side, side), (side, side)], &[t, 1.0 - t], 1.0 / side as f64)?;
    let words = clifford::omega_words(big_n)?;
    let zero = ComplexMatrix::zeros(side, side);
    let mut elems = Vec::with_capacity(2 * side);
    for w in &words {
        elems.push(ambient.assemble(&[w.clone(), zero.clone()])?);
    }
    for w in &words {
        elems.push(ambient.assemble(&[zero.clone(), w.clone()])?);
    }
    let full = side - 1;
    let units = SubspaceBasis::new(format!("C_{big_n}+C_{big_n}"), ambient.clone(), elems)?;
    let mut coeffs = ComplexMatrix::zeros(2 * side, 2 * side);
    for a in 0..side {
        if !(a.count_ones() <= 1 || a == full) {
            continue;
        }
        let tau = if a == full { -1.0 } else { 1.0 };
        coeffs[(a, a)] = C64::new(t, 0.0);
        coeffs[(side + a, a)] = C64::new(t * tau, 0.0);
        coeffs[(a, side + a)] = C64::new((1.0 - t) * tau, 0.0);
        coeffs[(side + a, side + a)] = C64::new(1.0 - t, 0.0);
    }
    let graph = (0..=big_n + 1)
        .map(|j| {
            let s = clifford::spin(n, j)?;
            let ts = if j == big_n + 1 { s.scale_real(-1.0) } else { s.clone() };
            ambient.assemble(&[s, ts])
        })
        .collect::<Result<Vec<_>>>()?;
    let range = SubspaceBasis::new(format!("G_{n}"), ambient, graph)?;
    Ok(ProjectionSpec {
        name: format!("R({n},t={t})"),
        map: SubspaceMap::new(units.clone(), units, coeffs)?,
        range,
        weights: Some(vec![t, 1.0 - t]),
    })
}

/// The diagonal `{(z, z) : z ∈ A}` inside the ambient of [`proj_r`].
pub fn proj_r_diagonal_domain(spec: &ProjectionSpec, n: usize) -> Result<SubspaceBasis> {
    let ambient = spec.map.domain().ambient().clone();
    let a = clifford_a_domain(2 * n)?;
    let elems = a
        .elements()
        .iter()
        .map(|z| ambient.assemble(&[z.clone(), z.clone()]))
        .collect::<Result<Vec<_>>>()?;
    SubspaceBasis::new(format!("diag(A_{})", 2 * n), ambient, elems)
}

#[derive(Clone, Debug, Serialize)]
pub struct HnkReport {
    pub n: usize,
    pub k: usize,
    pub singular_values: Vec<f64>,
    pub expected_value: f64,
    pub expected_multiplicity: usize,
    pub observed_multiplicity: usize,
    pub max_deviation: f64,
}

impl HnkReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation <= tol && self.observed_multiplicity == self.expected_multiplicity
    }
}

/// Singular values of `M_k(s₁, s₂) = s₁c_{n,1,k} + s₂c_{n,2,k}` against
/// `√(|s₁|² + |s₂|²)` with multiplicity `binom(n−2,k−1) + binom(n−2,k−2)`
/// and zeros elsewhere (counted over the smaller side).
pub fn hnk_block_check(n: usize, k: usize, s1: C64, s2: C64) -> Result<HnkReport> {
    check_index(n, 2, fock::MAX_GENERATORS)?;
    check_index(k, 1, n)?;
    let mut m = creation_restricted(n, 1, k)?.scale(s1);
    m.axpy(s2, &creation_restricted(n, 2, k)?);
    let singular_values = linalg::singular_values(&m).values;
    let expected_value = (s1.norm_sqr() + s2.norm_sqr()).sqrt();
    let expected_multiplicity = if expected_value == 0.0 {
        0
    } else {
        binomial(n - 2, k - 1) + if k >= 2 { binomial(n - 2, k - 2) } else { 0 }
    };
    let floor = 1e-9 * expected_value.max(1.0);
    let observed_multiplicity = singular_values.iter().filter(|&&s| s > floor).count();
    let max_deviation = singular_values
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let target = if i < expected_multiplicity { expected_value } else { 0.0 };
            (s - target).abs()
        })
        .fold(0.0, f64::max);
    Ok(HnkReport {
        n,
        k,
        singular_values,
        expected_value,
        expected_multiplicity,
        observed_multiplicity,
        max_deviation,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IsometryReport {
    pub n: usize,
    pub p: f64,
    /// Norms `‖a_k‖_p` after normalization.
    pub a_norms: Vec<f64>,
    pub trials: usize,
    pub max_deviation: f64,
}

/// Checks that `s ↦ (φ_1(s)⊗a_1, …, φ_n(s)⊗a_n)` is an isometry from `ℓ²_n`
/// after normalizing `Σ_k binom(n−1,k−1)‖a_k‖^p = 1`. The first trial is
/// `s = e_1`.
pub fn hilbertform_isometry_check(n: usize, p: f64, a_norms: &[f64], trials: usize, seed: u64) -> Result<IsometryReport> {
    check_index(n, 1, fock::MAX_GENERATORS)?;
    if a_norms.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: a_norms.len(),
        });
    }
    let pe = PExponent::new(p)?;
    if pe.is_infinite() {
        return Err(Error::InvalidExponent(p));
    }
    if a_norms.iter().any(|&a| !(a.is_finite() && a >= 0.0)) {
        return Err(Error::InvalidWeight(a_norms.iter().copied().fold(f64::NAN, f64::min)));
    }
    let total: f64 = a_norms
        .iter()
        .enumerate()
        .map(|(k, a)| binomial(n - 1, k) as f64 * a.powf(p))
        .sum();
    if total == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    let scale = total.powf(-1.0 / p);
    let a: Vec<f64> = a_norms.iter().map(|x| x * scale).collect();
    let weights: Vec<f64> = a.iter().map(|x| x.powf(p)).collect();
    let bases: Vec<SubspaceBasis> = (1..=n).map(|k| clifford::basis_h(n, k)).collect::<Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_deviation: f64 = 0.0;
    for trial in 0..trials {
        let s: Vec<C64> = if trial == 0 {
            let mut e = vec![ZERO; n];
            e[0] = ONE;
            e
        } else {
            random::gaussian_vec(&mut rng, n)
        };
        let parts: Vec<ComplexMatrix> = bases.iter().map(|b| b.combine(&s)).collect();
        let norm = pdirect_norm(&parts, &weights, pe)?;
        let l2 = s.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        max_deviation = max_deviation.max((norm - l2).abs() / l2);
    }
    Ok(IsometryReport {
        n,
        p,
        a_norms: a,
        trials,
        max_deviation,
    })
}

/// Mask set of the words kept by [`proj_orth_f`].
pub fn f_word_masks(n: usize) -> Vec<usize> {
    let mut out = vec![0];
    out.extend((1..=2 * n).map(|j| subset_mask(&[j])));
    out.push((1 << (2 * n)) - 1);
    out
}

/// Smallest eigenvalue of `E(y^*y)` over seeded random `y ∈ C_N`, where `E`
/// is [`proj_orth_e`]. Nonnegative when `E` is positive.
pub fn orth_e_min_eigenvalue(big_n: usize, trials: usize, seed: u64) -> Result<f64> {
    let e = proj_orth_e(big_n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lowest = f64::INFINITY;
    for _ in 0..trials {
        let c = random::gaussian_vec(&mut rng, 1 << big_n);
        let y = clifford::from_clifford_coefficients(big_n, &c)?;
        let out = e.apply(&y.adjoint_mul(&y))?;
        let h = (&out + &out.adjoint()).scale_real(0.5);
        lowest = lowest.min(linalg::hermitian_eig(&h, 1e-10)?.min_eigenvalue());
    }
    Ok(lowest)
}
