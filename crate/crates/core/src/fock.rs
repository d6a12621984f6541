//! The anti-symmetric Fock space Λ_n over ℓ²_n.
//!
//! Basis vectors `e_A` are indexed by bitmasks: subset `A ⊆ {1..n}` sits at
//! position `Σ_{j∈A} 2^{j−1}`. Graded pieces Λ_{n,k} are views on this order.

use crate::error::{check_index, Error, Result};
use crate::linalg::{self, ComplexMatrix, C64, ONE};

/// Largest generator count accepted by constructors (matrices of side 2^12).
pub const MAX_GENERATORS: usize = 12;

/// Tolerance for the unitarity precondition of [`quantized_conjugation`].
pub const UNITARY_TOL: f64 = 1e-10;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Elements of the subset encoded by `mask`, 1-based and increasing.
pub fn subset_elements(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

pub fn subset_mask(elements: &[usize]) -> usize {
    elements.iter().fold(0, |m, &j| m | 1 << (j - 1))
}

fn check_generators(n: usize) -> Result<()> {
    check_index(n, 0, MAX_GENERATORS)
}

/// The canonical basis of Λ_n in bitmask order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockBasis {
    n: usize,
}

impl FockBasis {
    pub fn new(n: usize) -> Result<Self> {
        check_generators(n)?;
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Subset labels in basis order.
    pub fn labels(&self) -> Vec<Vec<usize>> {
        (0..self.dim()).map(subset_elements).collect()
    }

    pub fn index_of(&self, subset: &[usize]) -> Result<usize> {
        for &j in subset {
            check_index(j, 1, self.n)?;
        }
        Ok(subset_mask(subset))
    }
}

/// The basis of Λ_{n,k}: masks of cardinality `k` in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub n: usize,
    pub k: usize,
    pub order: Vec<usize>,
}

impl GradedBasis {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_generators(n)?;
        check_index(k, 0, n)?;
        let order = (0..1usize << n)
            .filter(|m| m.count_ones() as usize == k)
            .collect();
        Ok(Self { n, k, order })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Position of a mask inside this graded basis.
    pub fn position(&self, mask: usize) -> Option<usize> {
        self.order.binary_search(&mask).ok()
    }
}

/// Sign picked up when `e_j` is moved past the elements of `mask` below `j`.
fn wedge_sign(mask: usize, j: usize) -> f64 {
    let below = mask & ((1 << (j - 1)) - 1);
    if below.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Creation operator `c_{n,j}`: `e_A ↦ e_j ∧ e_A`.
pub fn creation(n: usize, j: usize) -> Result<ComplexMatrix> {
    check_generators(n)?;
    check_index(j, 1, n)?;
    let dim = 1 << n;
    let bit = 1 << (j - 1);
    let mut c = ComplexMatrix::zeros(dim, dim);
    for a in (0..dim).filter(|a| a & bit == 0) {
        c[(a | bit, a)] = C64::new(wedge_sign(a, j), 0.0);
    }
    Ok(c)
}

/// Annihilation operator `c_{n,j}^*`.
pub fn annihilation(n: usize, j: usize) -> Result<ComplexMatrix> {
    Ok(creation(n, j)?.adjoint())
}

/// `c_{n,j,k}`: the restriction of `c_{n,j}` to Λ_{n,k−1}, as a map into
/// Λ_{n,k}, in graded coordinates.
pub fn creation_restricted(n: usize, j: usize, k: usize) -> Result<ComplexMatrix> {
    check_generators(n)?;
    check_index(j, 1, n)?;
    check_index(k, 1, n)?;
    let rows = GradedBasis::new(n, k)?;
    let cols = GradedBasis::new(n, k - 1)?;
    let bit = 1 << (j - 1);
    let mut c = ComplexMatrix::zeros(rows.len(), cols.len());
    for (col, &a) in cols.order.iter().enumerate() {
        if a & bit == 0 {
            let row = rows.position(a | bit).expect("grade k target");
            c[(row, col)] = C64::new(wedge_sign(a, j), 0.0);
        }
    }
    Ok(c)
}

/// Block `(k_row, k_col)` of a 2^n matrix in graded coordinates.
pub fn graded_block(m: &ComplexMatrix, n: usize, k_row: usize, k_col: usize) -> Result<ComplexMatrix> {
    let rows = GradedBasis::new(n, k_row)?;
    let cols = GradedBasis::new(n, k_col)?;
    if m.shape() != (1 << n, 1 << n) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {0}x{0} matrix, found {1}x{2}",
            1 << n,
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.select(&rows.order, &cols.order))
}

/// Embeds a graded block back into a 2^n matrix, zero elsewhere.
pub fn embed_graded(block: &ComplexMatrix, n: usize, k_row: usize, k_col: usize) -> Result<ComplexMatrix> {
    let rows = GradedBasis::new(n, k_row)?;
    let cols = GradedBasis::new(n, k_col)?;
    if block.shape() != (rows.len(), cols.len()) {
        return Err(Error::DimensionMismatch(format!(
            "block {}x{} does not match grades ({k_row}, {k_col}) of Λ_{n}",
            block.rows(),
            block.cols()
        )));
    }
    let mut out = ComplexMatrix::zeros(1 << n, 1 << n);
    for (r, &a) in rows.order.iter().enumerate() {
        for (c, &b) in cols.order.iter().enumerate() {
            out[(a, b)] = block[(r, c)];
        }
    }
    Ok(out)
}

fn diagonal_projection(n: usize, keep: impl Fn(usize) -> bool) -> Result<ComplexMatrix> {
    check_generators(n)?;
    let diag: Vec<f64> = (0..1usize << n)
        .map(|a| if keep(a) { 1.0 } else { 0.0 })
        .collect();
    Ok(ComplexMatrix::from_real_diag(&diag))
}

/// Orthogonal projection `P_n` onto the even-rank part of Λ_n.
pub fn parity_projection(n: usize) -> Result<ComplexMatrix> {
    diagonal_projection(n, |a| a.count_ones() % 2 == 0)
}

/// Orthogonal projection onto Λ_{n,k}.
pub fn grade_projection(n: usize, k: usize) -> Result<ComplexMatrix> {
    check_index(k, 0, n)?;
    diagonal_projection(n, |a| a.count_ones() as usize == k)
}

/// Second quantization `F(T)`: on Λ_{n,k} it acts by the minors
/// `⟨F(T)e_B, e_A⟩ = det T[A, B]`.
///
/// Inputs with operator norm above `1 + 1e−10` are accepted; such `T` are
/// not contractions and `F(T)` is then merely a multiplicative lift.
pub fn second_quantization(n: usize, t: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_generators(n)?;
    if t.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "second quantization over ℓ²_{n} needs an {n}x{n} matrix, found {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    let dim = 1 << n;
    let mut f = ComplexMatrix::zeros(dim, dim);
    f[(0, 0)] = ONE;
    for k in 1..=n {
        let graded = GradedBasis::new(n, k)?;
        let idx: Vec<Vec<usize>> = graded
            .order
            .iter()
            .map(|&m| subset_elements(m).iter().map(|j| j - 1).collect())
            .collect();
        for (ra, &a) in graded.order.iter().enumerate() {
            for (rb, &b) in graded.order.iter().enumerate() {
                f[(a, b)] = t.select(&idx[ra], &idx[rb]).determinant()?;
            }
        }
    }
    Ok(f)
}

/// `Û(W) = F(U)·W·F(U)^*`.
pub fn quantized_conjugation(n: usize, u: &ComplexMatrix, w: &ComplexMatrix) -> Result<ComplexMatrix> {
    if u.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "expected an {n}x{n} unitary, found {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let residual = linalg::unitarity_residual(u);
    if residual > UNITARY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    if w.shape() != (1 << n, 1 << n) {
        return Err(Error::DimensionMismatch(format!(
            "operand must be {0}x{0}, found {1}x{2}",
            1 << n,
            w.rows(),
            w.cols()
        )));
    }
    let f = second_quantization(n, u)?;
    Ok(f.matmul(w).matmul(&f.adjoint()))
}

/// Largest deviation of `Û(c_{n,j,k})` from `Σ_i U_{ij} c_{n,i,k}` over `j`,
/// with the restricted creations embedded in `B(Λ_n)`.
pub fn quantization_intertwining_residual(n: usize, k: usize, u: &ComplexMatrix) -> Result<f64> {
    check_index(k, 1, n)?;
    let blocks: Vec<ComplexMatrix> = (1..=n).map(|j| creation_restricted(n, j, k)).collect::<Result<_>>()?;
    let mut residual: f64 = 0.0;
    for j in 0..n {
        let image = quantized_conjugation(n, u, &embed_graded(&blocks[j], n, k, k - 1)?)?;
        let mut expected = ComplexMatrix::zeros(blocks[0].rows(), blocks[0].cols());
        for (i, b) in blocks.iter().enumerate() {
            expected.axpy(u[(i, j)], b);
        }
        residual = residual.max(image.max_abs_diff(&embed_graded(&expected, n, k, k - 1)?));
    }
    Ok(residual)
}

/// `Δ = (Id + Û)/2` for `U = diag(1, 1, −1, …, −1)`, checked on `H_{n,k}`:
/// returns the largest deviation of `Δ(c_{n,j,k})` from `c_{n,j,k}` for
/// `j ≤ 2` and from `0` for `j ≥ 3`.
pub fn delta_fixed_point_residual(n: usize, k: usize) -> Result<f64> {
    check_index(n, 2, MAX_GENERATORS)?;
    check_index(k, 1, n)?;
    let diag: Vec<f64> = (0..n).map(|i| if i < 2 { 1.0 } else { -1.0 }).collect();
    let u = ComplexMatrix::from_real_diag(&diag);
    let mut residual: f64 = 0.0;
    for j in 1..=n {
        let c = embed_graded(&creation_restricted(n, j, k)?, n, k, k - 1)?;
        let delta = (&c + &quantized_conjugation(n, &u, &c)?).scale_real(0.5);
        let expected = if j <= 2 { c } else { ComplexMatrix::zeros(1 << n, 1 << n) };
        residual = residual.max(delta.max_abs_diff(&expected));
    }
    Ok(residual)
}

/// Largest entrywise violation of the CAR on Λ_n: `c_ic_j + c_jc_i = 0` and
/// `c_ic_j^* + c_j^*c_i = δ_ij`.
pub fn car_residual(n: usize) -> Result<f64> {
    let cs: Vec<ComplexMatrix> = (1..=n).map(|j| creation(n, j)).collect::<Result<_>>()?;
    let id = ComplexMatrix::identity(1 << n);
    let mut worst: f64 = 0.0;
    for (i, ci) in cs.iter().enumerate() {
        for (j, cj) in cs.iter().enumerate() {
            let anti = &ci.matmul(cj) + &cj.matmul(ci);
            worst = worst.max(anti.max_abs());
            let cj_star = cj.adjoint();
            let mixed = &ci.matmul(&cj_star) + &cj_star.matmul(ci);
            let target = if i == j { id.clone() } else { ComplexMatrix::zeros(1 << n, 1 << n) };
            worst = worst.max(mixed.max_abs_diff(&target));
        }
    }
    Ok(worst)
}

/// Largest `|‖c_{n,j,k}‖_p^p − binom(n−1,k−1)|` over `j` and `k`.
pub fn creation_norm_residual(n: usize, p: crate::PExponent) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 1..=n {
        for j in 1..=n {
            let c = creation_restricted(n, j, k)?;
            let value = if p.value() == 2.0 {
                c.as_slice().iter().map(|z| z.norm_sqr()).sum()
            } else {
                crate::schatten::schatten_norm(&c, p, 1.0)?.powf(p.value())
            };
            worst = worst.max((value - binomial(n - 1, k - 1) as f64).abs());
        }
    }
    Ok(worst)
}
