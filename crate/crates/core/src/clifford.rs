//! Fermions, the Clifford algebra C_N realized on Λ_N, and the subspaces and
//! maps built from them.
//!
//! Every Clifford element is a concrete `2^N × 2^N` matrix. Since
//! `ω_A Ω = e_A`, the trace coefficient `Tr(ω_A^* x)` of an element of C_N is
//! simply the entry `x[A, ∅]`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{check_index, Error, Result};
use crate::fock::{self, subset_elements};
use crate::linalg::{self, ComplexMatrix, C64, I, ONE, ZERO};
use crate::schatten::PExponent;
use crate::subspace::{Ambient, SubspaceBasis, SubspaceMap};

/// Default tolerance for spin-system and factorization checks.
pub const SPIN_TOL: f64 = 1e-10;

/// `ω_j = c_j + c_j^*` on Λ_N.
pub fn fermion(big_n: usize, j: usize) -> Result<ComplexMatrix> {
    let c = fock::creation(big_n, j)?;
    Ok(&c + &c.adjoint())
}

/// `ω_{−j} = (c_j − c_j^*)/i` on Λ_n.
pub fn fermion_minus(n: usize, j: usize) -> Result<ComplexMatrix> {
    let c = fock::creation(n, j)?;
    Ok((&c - &c.adjoint()).scale(-I))
}

/// `ω_A`: the product of `ω_j`, `j ∈ A`, in increasing order; `ω_∅ = I`.
pub fn omega_word(big_n: usize, subset: &[usize]) -> Result<ComplexMatrix> {
    let mut elems = subset.to_vec();
    elems.sort_unstable();
    elems.dedup();
    for &j in &elems {
        check_index(j, 1, big_n)?;
    }
    let mut out = ComplexMatrix::identity(1 << big_n);
    for j in elems {
        out = out.matmul(&fermion(big_n, j)?);
    }
    Ok(out)
}

pub fn omega_word_mask(big_n: usize, mask: usize) -> Result<ComplexMatrix> {
    if mask >> big_n != 0 {
        return Err(Error::IndexOutOfRange {
            index: mask as i64,
            lo: 0,
            hi: (1i64 << big_n) - 1,
        });
    }
    omega_word(big_n, &subset_elements(mask))
}

/// All words `ω_A` in bitmask order.
pub fn omega_words(big_n: usize) -> Result<Vec<ComplexMatrix>> {
    let gens: Vec<ComplexMatrix> = (1..=big_n).map(|j| fermion(big_n, j)).collect::<Result<_>>()?;
    let mut words = Vec::with_capacity(1 << big_n);
    words.push(ComplexMatrix::identity(1 << big_n));
    for mask in 1usize..1 << big_n {
        // Highest generator last: ω_A = ω_{A∖{max}} ω_max.
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let prev = &words[mask & !(1 << top)];
        words.push(prev.matmul(&gens[top]));
    }
    Ok(words)
}

/// `Tr(x) = ⟨xΩ, Ω⟩`.
pub fn normalized_trace(x: &ComplexMatrix) -> C64 {
    x[(0, 0)]
}

/// Coefficients `Tr(ω_A^* x)` in bitmask order; exact for `x ∈ C_N`.
pub fn clifford_coefficients(x: &ComplexMatrix) -> Vec<C64> {
    x.column(0)
}

/// `Σ_A c_A ω_A` on Λ_N.
pub fn from_clifford_coefficients(big_n: usize, coeffs: &[C64]) -> Result<ComplexMatrix> {
    if coeffs.len() != 1 << big_n {
        return Err(Error::LengthMismatch {
            expected: 1 << big_n,
            found: coeffs.len(),
        });
    }
    let words = omega_words(big_n)?;
    let mut out = ComplexMatrix::zeros(1 << big_n, 1 << big_n);
    for (w, &c) in words.iter().zip(coeffs) {
        if c != ZERO {
            out.axpy(c, w);
        }
    }
    Ok(out)
}

/// Carries an element of C_M into C_N (`M ≤ N`) through its coefficients.
pub fn embed_clifford(from_n: usize, to_n: usize, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if from_n > to_n {
        return Err(Error::DimensionMismatch(format!("cannot embed C_{from_n} into C_{to_n}")));
    }
    let mut coeffs = vec![ZERO; 1 << to_n];
    coeffs[..1 << from_n].copy_from_slice(&clifford_coefficients(x));
    from_clifford_coefficients(to_n, &coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpinSystemReport {
    /// `‖s_j − s_j^*‖` per element (entrywise max).
    pub self_adjoint: Vec<f64>,
    /// `‖s_j² − I‖` per element.
    pub unitary: Vec<f64>,
    /// `(j, j', ‖s_j s_j' + s_j' s_j‖)` for `j < j'`.
    pub anticommutation: Vec<(usize, usize, f64)>,
    pub max_residual: f64,
    pub tol: f64,
    pub passes: bool,
}

/// Checks that a family consists of pairwise anticommuting selfadjoint
/// unitaries.
pub fn is_spin_system(mats: &[ComplexMatrix], tol: f64) -> Result<SpinSystemReport> {
    let side = mats.first().map_or(0, |m| m.rows());
    for m in mats {
        if m.shape() != (side, side) {
            return Err(Error::DimensionMismatch(format!(
                "spin system member {}x{} among {side}x{side}",
                m.rows(),
                m.cols()
            )));
        }
    }
    let id = ComplexMatrix::identity(side);
    let self_adjoint: Vec<f64> = mats.iter().map(|s| s.max_abs_diff(&s.adjoint())).collect();
    let unitary: Vec<f64> = mats.iter().map(|s| s.matmul(s).max_abs_diff(&id)).collect();
    let mut anticommutation = Vec::new();
    for j in 0..mats.len() {
        for k in j + 1..mats.len() {
            let r = (&mats[j].matmul(&mats[k]) + &mats[k].matmul(&mats[j])).max_abs();
            anticommutation.push((j, k, r));
        }
    }
    let max_residual = self_adjoint
        .iter()
        .chain(&unitary)
        .copied()
        .chain(anticommutation.iter().map(|t| t.2))
        .fold(0.0, f64::max);
    Ok(SpinSystemReport {
        self_adjoint,
        unitary,
        anticommutation,
        max_residual,
        tol,
        passes: max_residual <= tol,
    })
}

fn i_pow(n: usize) -> C64 {
    [ONE, I, -ONE, -I][n % 4]
}

/// `ρ_n = (1 + iⁿ ω_1⋯ω_{2n+1})/2` in C_{2n+1} on Λ_{2n+1}.
pub fn rho_central(n: usize) -> Result<ComplexMatrix> {
    check_index(n, 1, fock::MAX_GENERATORS / 2)?;
    let big_n = 2 * n + 1;
    let word = omega_word_mask(big_n, (1 << big_n) - 1)?;
    let mut rho = ComplexMatrix::identity(1 << big_n);
    rho.axpy(i_pow(n), &word);
    Ok(rho.scale_real(0.5))
}

/// `π_0(x) = ρ_n x` for `x ∈ C_{2n}`, landing in C_{2n+1}.
pub fn pi_zero(n: usize, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(rho_central(n)?.matmul(&embed_clifford(2 * n, 2 * n + 1, x)?))
}

/// `π_1(x) = (1 − ρ_n) x` for `x ∈ C_{2n}`.
pub fn pi_one(n: usize, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = embed_clifford(2 * n, 2 * n + 1, x)?;
    Ok(&e - &rho_central(n)?.matmul(&e))
}

/// Inverse of `π_0` on `ρ_n C_{2n+1}`; fails with `NotInSpan` off the range.
pub fn pi_zero_inverse(n: usize, w: &ComplexMatrix) -> Result<ComplexMatrix> {
    half_inverse(n, w, true)
}

/// Inverse of `π_1` on `(1 − ρ_n) C_{2n+1}`.
pub fn pi_one_inverse(n: usize, w: &ComplexMatrix) -> Result<ComplexMatrix> {
    half_inverse(n, w, false)
}

fn half_inverse(n: usize, w: &ComplexMatrix, zero: bool) -> Result<ComplexMatrix> {
    // {ρω_A} and {(1−ρ)ω_A}, A ⊆ {1..2n}, are orthogonal with Tr-norm² 1/2.
    let coeffs: Vec<C64> = clifford_coefficients(w)[..1 << (2 * n)]
        .iter()
        .map(|c| c * 2.0)
        .collect();
    let x = from_clifford_coefficients(2 * n, &coeffs)?;
    let back = if zero { pi_zero(n, &x)? } else { pi_one(n, &x)? };
    let residual = back.max_abs_diff(w);
    if residual > 1e-9 * w.max_abs().max(1.0) {
        return Err(Error::NotInSpan {
            basis: if zero { "rho C" } else { "(1-rho) C" }.into(),
            residual,
        });
    }
    Ok(x)
}

/// `s_j` of C_{2n}: `s_0 = 1`, `s_j = ω_j` for `j ≤ 2n`,
/// `s_{2n+1} = ω_1⋯ω_{2n}`.
pub fn spin(n: usize, j: usize) -> Result<ComplexMatrix> {
    check_index(n, 1, fock::MAX_GENERATORS / 2)?;
    check_index(j, 0, 2 * n + 1)?;
    let big_n = 2 * n;
    match j {
        0 => Ok(ComplexMatrix::identity(1 << big_n)),
        j if j <= big_n => fermion(big_n, j),
        _ => omega_word_mask(big_n, (1 << big_n) - 1),
    }
}

/// L^p(C_N) realized on Λ_N.
pub fn clifford_ambient(big_n: usize) -> Ambient {
    Ambient::normalized(1 << big_n, 1.0 / (1u64 << big_n) as f64)
}

/// `E_N = span{1, ω_1, …, ω_N}`.
pub fn basis_e(big_n: usize) -> Result<SubspaceBasis> {
    check_index(big_n, 1, fock::MAX_GENERATORS)?;
    let mut elems = vec![ComplexMatrix::identity(1 << big_n)];
    for j in 1..=big_n {
        elems.push(fermion(big_n, j)?);
    }
    SubspaceBasis::new(format!("E_{big_n}"), clifford_ambient(big_n), elems)
}

/// `F_n = span{s_0, …, s_{2n+1}}` in C_{2n}.
pub fn basis_f(n: usize) -> Result<SubspaceBasis> {
    let elems = (0..=2 * n + 1).map(|j| spin(n, j)).collect::<Result<Vec<_>>>()?;
    SubspaceBasis::new(format!("F_{n}"), clifford_ambient(2 * n), elems)
}

/// `Φ_N = span{ω_1, …, ω_N}`.
pub fn basis_phi(big_n: usize) -> Result<SubspaceBasis> {
    check_index(big_n, 1, fock::MAX_GENERATORS)?;
    let elems = (1..=big_n).map(|j| fermion(big_n, j)).collect::<Result<Vec<_>>>()?;
    SubspaceBasis::new(format!("Phi_{big_n}"), clifford_ambient(big_n), elems)
}

/// The whole of C_N with basis `{ω_A}` in bitmask order.
pub fn basis_clifford(big_n: usize) -> Result<SubspaceBasis> {
    SubspaceBasis::new(format!("C_{big_n}"), clifford_ambient(big_n), omega_words(big_n)?)
}

fn check_ah(n: usize) -> Result<()> {
    // For n = 1 the construction degenerates (c^* P_1 = 0).
    check_index(n, 2, fock::MAX_GENERATORS)
}

/// `x_{n,j} = c_j P_n` for `j = 1..n`, then `x̃_{n,j} = c_j^* P_n`.
fn ah_generators(n: usize) -> Result<(Vec<ComplexMatrix>, Vec<ComplexMatrix>)> {
    let p = fock::parity_projection(n)?;
    let mut x = Vec::with_capacity(n);
    let mut xt = Vec::with_capacity(n);
    for j in 1..=n {
        let c = fock::creation(n, j)?;
        x.push(c.matmul(&p));
        xt.push(c.adjoint().matmul(&p));
    }
    Ok((x, xt))
}

/// `AH_n` in `S^p(Λ_n)`, ordered `x_1..x_n, x̃_1..x̃_n`; requires `n ≥ 2`.
pub fn basis_ah(n: usize) -> Result<SubspaceBasis> {
    check_ah(n)?;
    let (x, xt) = ah_generators(n)?;
    SubspaceBasis::new(format!("AH_{n}"), Ambient::matrices(1 << n, 1 << n), [x, xt].concat())
}

/// `BH_n = AH_n^*`, ordered as the adjoints of the `AH_n` basis.
pub fn basis_bh(n: usize) -> Result<SubspaceBasis> {
    let ah = basis_ah(n)?;
    let elems = ah.elements().iter().map(|e| e.adjoint()).collect();
    SubspaceBasis::new(format!("BH_{n}"), ah.ambient().clone(), elems)
}

/// `DAH_n`, ordered `x_n + x̃_n`, then `x_j, x̃_j` for `j < n`.
pub fn basis_dah(n: usize) -> Result<SubspaceBasis> {
    check_ah(n)?;
    let (x, xt) = ah_generators(n)?;
    let mut elems = vec![&x[n - 1] + &xt[n - 1]];
    for j in 0..n - 1 {
        elems.push(x[j].clone());
        elems.push(xt[j].clone());
    }
    SubspaceBasis::new(format!("DAH_{n}"), Ambient::matrices(1 << n, 1 << n), elems)
}

/// `H_{n,k} = span{c_{n,j,k}}` in `S^p(Λ_{n,k−1}, Λ_{n,k})`.
pub fn basis_h(n: usize, k: usize) -> Result<SubspaceBasis> {
    let elems = (1..=n)
        .map(|j| fock::creation_restricted(n, j, k))
        .collect::<Result<Vec<_>>>()?;
    let (r, c) = elems[0].shape();
    SubspaceBasis::new(format!("H_{n},{k}"), Ambient::matrices(r, c), elems)
}

/// `φ_k(s) = Σ_j s_j c_{n,j,k}`.
pub fn phi_k(n: usize, k: usize, s: &[C64]) -> Result<ComplexMatrix> {
    if s.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: s.len(),
        });
    }
    Ok(basis_h(n, k)?.combine(s))
}

/// A tuple of signs `θ_0, …, θ_{2n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignTuple(Vec<i8>);

impl SignTuple {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::IndexOutOfRange {
                index: i64::from(bad),
                lo: -1,
                hi: 1,
            });
        }
        Ok(Self(signs))
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|&&s| s < 0).count()
    }
}

/// `τ_Θ(s_j) = θ_j s_j` on F_n.
pub fn tau_theta(n: usize, theta: &SignTuple) -> Result<SubspaceMap> {
    if theta.0.len() != 2 * n + 2 {
        return Err(Error::LengthMismatch {
            expected: 2 * n + 2,
            found: theta.0.len(),
        });
    }
    let f = basis_f(n)?;
    let diag: Vec<f64> = theta.0.iter().map(|&s| f64::from(s)).collect();
    SubspaceMap::new(f.clone(), f, ComplexMatrix::from_real_diag(&diag))
}

/// The transpose map: fixes `1` and each `ω_j`, negates `ω_1⋯ω_{2n}`.
pub fn tau(n: usize) -> Result<SubspaceMap> {
    let mut signs = vec![1i8; 2 * n + 2];
    signs[2 * n + 1] = -1;
    tau_theta(n, &SignTuple(signs))
}

/// The exchange map `x_j ↦ x̃_j^*`, `x̃_j ↦ x_j^*` from AH_n to BH_n.
pub fn kappa(n: usize) -> Result<SubspaceMap> {
    let ah = basis_ah(n)?;
    let bh = basis_bh(n)?;
    // BH element m is (AH element m)^*, so κ swaps the two halves.
    let mut coeffs = ComplexMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        coeffs[(n + j, j)] = ONE;
        coeffs[(j, n + j)] = ONE;
    }
    SubspaceMap::new(ah, bh, coeffs)
}

/// Diagonal of `π_j(x) = s_j^* x s_j` on the basis `{ω_A}` of C_{2n}, in
/// bitmask order.
pub fn conjugation_pi(n: usize, j: usize) -> Result<Vec<i8>> {
    check_index(n, 1, fock::MAX_GENERATORS / 2)?;
    check_index(j, 0, 2 * n + 1)?;
    Ok((0..1usize << (2 * n))
        .map(|a| {
            let odd = a.count_ones() % 2 == 1;
            match j {
                0 => 1,
                j if j <= 2 * n => {
                    let inside = a >> (j - 1) & 1 == 1;
                    if odd == inside {
                        1
                    } else {
                        -1
                    }
                }
                _ => {
                    if odd {
                        -1
                    } else {
                        1
                    }
                }
            }
        })
        .collect())
}

/// `π_j` as a map on F_n, computed by explicit conjugation.
pub fn conjugation_map_on_f(n: usize, j: usize) -> Result<SubspaceMap> {
    let s = spin(n, j)?;
    let f = basis_f(n)?;
    SubspaceMap::from_fn(f.clone(), f, |x| Ok(s.adjoint().matmul(x).matmul(&s)))
}

#[derive(Clone, Debug, Serialize)]
pub struct TauCbBound {
    pub n: usize,
    /// `max_A |Σ_{j=0}^{2n+1} π_j(A)|`.
    pub plus_norm: i64,
    /// `max_A |Σ_{j=0}^{2n} π_j(A) − π_{2n+1}(A)|`.
    pub minus_norm: i64,
}

impl TauCbBound {
    /// The lower bound `plus_norm / minus_norm` for the cb-norm of τ.
    pub fn ratio(&self) -> f64 {
        self.plus_norm as f64 / self.minus_norm as f64
    }
}

/// Exact integer diagonals of `Σ π_j ± π_{2n+1}` on the basis `{ω_A}`.
pub fn tau_cb_bound(n: usize) -> Result<TauCbBound> {
    let diags: Vec<Vec<i8>> = (0..=2 * n + 1).map(|j| conjugation_pi(n, j)).collect::<Result<_>>()?;
    let mut plus_norm = 0;
    let mut minus_norm = 0;
    for a in 0..diags[0].len() {
        let head: i64 = diags[..=2 * n].iter().map(|d| i64::from(d[a])).sum();
        let last = i64::from(diags[2 * n + 1][a]);
        plus_norm = plus_norm.max((head + last).abs());
        minus_norm = minus_norm.max((head - last).abs());
    }
    Ok(TauCbBound {
        n,
        plus_norm,
        minus_norm,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: usize,
    /// Largest entrywise deviation between τ and the composed map on the
    /// basis of F_{n−1}.
    pub residual: f64,
    /// `max |π(ρ_{n−1}) − P_n|`.
    pub rho_residual: f64,
    pub tol: f64,
    pub passes: bool,
}

/// The representation `π: C_{2n−1} → B(Λ_n)` sending `ω_1 ↦ ω'_{−n}` and then
/// `ω_{2m} ↦ ω'_{n−m}`, `ω_{2m+1} ↦ ω'_{−(n−m)}`, with `ω'_j = iω_nω_j`.
struct SpinRepresentation {
    n: usize,
    /// `π(ω_A)` in bitmask order over `{1..2n−1}`.
    images: Vec<ComplexMatrix>,
}

impl SpinRepresentation {
    fn new(n: usize) -> Result<Self> {
        let wn = fermion(n, n)?;
        let prime = |m: &ComplexMatrix| wn.matmul(m).scale(I);
        let mut gens = vec![prime(&fermion_minus(n, n)?)];
        for m in 1..n {
            gens.push(prime(&fermion(n, n - m)?));
            gens.push(prime(&fermion_minus(n, n - m)?));
        }
        let count = 2 * n - 1;
        let mut images = Vec::with_capacity(1 << count);
        images.push(ComplexMatrix::identity(1 << n));
        for mask in 1usize..1 << count {
            let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let prev = &images[mask & !(1 << top)];
            images.push(prev.matmul(&gens[top]));
        }
        Ok(Self { n, images })
    }

    fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(1 << self.n, 1 << self.n);
        for (img, &c) in self.images.iter().zip(&clifford_coefficients(x)) {
            if c != ZERO {
                out.axpy(c, img);
            }
        }
        out
    }

    fn inverse(&self, z: &ComplexMatrix) -> Result<ComplexMatrix> {
        let scale = 1.0 / (1u64 << self.n) as f64;
        let coeffs: Vec<C64> = self.images.iter().map(|img| z.hs_inner(img) * scale).collect();
        let x = from_clifford_coefficients(2 * self.n - 1, &coeffs)?;
        let residual = self.apply(&x).max_abs_diff(z);
        if residual > 1e-9 * z.max_abs().max(1.0) {
            return Err(Error::NotInSpan {
                basis: "pi(C)".into(),
                residual,
            });
        }
        Ok(x)
    }
}

/// Verifies `τ = (π_1^{−1} π^{−1} W) ∘ κ ∘ (W^{−1} π π_0)` on F_{n−1} and
/// `π(ρ_{n−1}) = P_n`.
pub fn verify_relation_tau_kappa(n: usize, tol: f64) -> Result<RelationReport> {
    check_index(n, 2, fock::MAX_GENERATORS / 2)?;
    let rep = SpinRepresentation::new(n)?;
    let rho = rho_central(n - 1)?;
    let pi_rho = rep.apply(&rho);
    let dim = 1 << n;
    if pi_rho.max_abs() <= tol {
        return Err(Error::SpinSystemDegenerate("zero"));
    }
    if pi_rho.max_abs_diff(&ComplexMatrix::identity(dim)) <= tol {
        return Err(Error::SpinSystemDegenerate("the identity"));
    }
    let rho_residual = pi_rho.max_abs_diff(&fock::parity_projection(n)?);

    let wn = fermion(n, n)?;
    let w = wn.scale(I);
    let w_inv = wn.scale(-I);
    let kap = kappa(n)?;
    let t = tau(n - 1)?;
    let f = t.domain();

    let mut residual: f64 = 0.0;
    for m in 0..f.dim() {
        let s = f.element(m);
        let forward = w_inv.matmul(&rep.apply(&pi_zero(n - 1, s)?));
        let exchanged = kap.apply(&forward)?;
        let back = pi_one_inverse(n - 1, &rep.inverse(&w.matmul(&exchanged))?)?;
        let expected = f.combine(&t.coeffs().column(m));
        residual = residual.max(back.max_abs_diff(&expected));
    }
    Ok(RelationReport {
        n,
        residual,
        rho_residual,
        tol,
        passes: residual <= tol && rho_residual <= tol,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FinalPair {
    /// `a_{2n+2} = (2n)^{−1/2} s_0`.
    Identity,
    /// `a_{2n+2} = (2n)^{−1/2} s_{2n+1}`.
    TopWord,
}

#[derive(Clone, Debug)]
pub struct WittstockFactorization {
    pub n: usize,
    pub a: Vec<ComplexMatrix>,
    pub b: Vec<ComplexMatrix>,
    pub final_pair: FinalPair,
    /// τ-reproduction residuals for both final-pair candidates.
    pub residual_identity: f64,
    pub residual_top_word: f64,
    /// `‖Σ a_j^* a_j‖` and `‖Σ b_j^* b_j‖` (operator norms).
    pub bound_a: f64,
    pub bound_b: f64,
}

impl WittstockFactorization {
    pub fn residual(&self) -> f64 {
        match self.final_pair {
            FinalPair::Identity => self.residual_identity,
            FinalPair::TopWord => self.residual_top_word,
        }
    }

    /// `‖Σ a_j^*a_j‖^{1/2} ‖Σ b_j^*b_j‖^{1/2}`.
    pub fn bound(&self) -> f64 {
        (self.bound_a * self.bound_b).sqrt()
    }
}

fn factorization_pairs(n: usize, last: &ComplexMatrix) -> Result<(Vec<ComplexMatrix>, Vec<ComplexMatrix>)> {
    let c = 1.0 / (2.0 * n as f64).sqrt();
    let top = spin(n, 2 * n + 1)?;
    let mut a = Vec::with_capacity(2 * n + 2);
    for j in 1..=2 * n + 1 {
        a.push(top.matmul(&spin(n, j)?).scale_real(c));
    }
    let mut b = a.clone();
    a.push(last.scale_real(c));
    b.push(last.scale_real(-c));
    Ok((a, b))
}

fn factorization_residual(n: usize, a: &[ComplexMatrix], b: &[ComplexMatrix]) -> Result<f64> {
    let t = tau(n)?;
    let f = t.domain();
    let mut residual: f64 = 0.0;
    for m in 0..f.dim() {
        let x = f.element(m);
        let mut u = ComplexMatrix::zeros(x.rows(), x.cols());
        for (aj, bj) in a.iter().zip(b) {
            u += &aj.adjoint().matmul(x).matmul(bj);
        }
        residual = residual.max(u.max_abs_diff(&f.combine(&t.coeffs().column(m))));
    }
    Ok(residual)
}

/// Builds `x ↦ Σ a_j^* x b_j` extending τ, trying `s_0` and `s_{2n+1}` for the
/// final pair and keeping the one that reproduces τ.
pub fn wittstock_factorization(n: usize) -> Result<WittstockFactorization> {
    check_index(n, 1, fock::MAX_GENERATORS / 2)?;
    let (a_id, b_id) = factorization_pairs(n, &spin(n, 0)?)?;
    let (a_top, b_top) = factorization_pairs(n, &spin(n, 2 * n + 1)?)?;
    let residual_identity = factorization_residual(n, &a_id, &b_id)?;
    let residual_top_word = factorization_residual(n, &a_top, &b_top)?;
    let (final_pair, a, b) = if residual_top_word <= SPIN_TOL {
        (FinalPair::TopWord, a_top, b_top)
    } else if residual_identity <= SPIN_TOL {
        (FinalPair::Identity, a_id, b_id)
    } else {
        return Err(Error::FactorizationMismatch {
            with_identity: residual_identity,
            with_top_word: residual_top_word,
        });
    };
    let gram = |v: &[ComplexMatrix]| {
        let mut s = ComplexMatrix::zeros(v[0].rows(), v[0].cols());
        for x in v {
            s += &x.adjoint_mul(x);
        }
        linalg::singular_values(&s).largest()
    };
    Ok(WittstockFactorization {
        n,
        bound_a: gram(&a),
        bound_b: gram(&b),
        a,
        b,
        final_pair,
        residual_identity,
        residual_top_word,
    })
}

/// Largest `|Tr(ω_A) − 2^{−N} trace(ω_A)|` over all basis words.
pub fn trace_coherence_residual(big_n: usize) -> Result<f64> {
    let scale = 1.0 / (1u64 << big_n) as f64;
    Ok(omega_words(big_n)?
        .iter()
        .map(|w| (normalized_trace(w) - w.trace() * scale).norm())
        .fold(0.0, f64::max))
}

/// Entrywise distance between `P_n` and `(1 + iⁿ ω_nω_{−n}⋯ω_1ω_{−1})/2`.
pub fn parity_identity_residual(n: usize) -> Result<f64> {
    let mut prod = ComplexMatrix::identity(1 << n);
    for j in (1..=n).rev() {
        prod = prod.matmul(&fermion(n, j)?).matmul(&fermion_minus(n, j)?);
    }
    let mut rhs = ComplexMatrix::identity(1 << n);
    rhs.axpy(i_pow(n), &prod);
    Ok(rhs.scale_real(0.5).max_abs_diff(&fock::parity_projection(n)?))
}

/// Largest relative deviation `|‖κx‖_p − ‖x‖_p| / ‖x‖_p` over seeded
/// Gaussian `x ∈ AH_n`.
pub fn kappa_isometry_deviation(n: usize, p: PExponent, trials: usize, seed: u64) -> Result<f64> {
    let k = kappa(n)?;
    let amb = k.domain().ambient().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let coords = linalg::random::gaussian_vec(&mut rng, k.domain().dim());
        let x = k.domain().combine(&coords);
        let y = k.codomain().combine(&k.apply_coords(&coords));
        let (nx, ny) = (amb.norm(&x, p), amb.norm(&y, p));
        worst = worst.max((ny - nx).abs() / nx);
    }
    Ok(worst)
}
