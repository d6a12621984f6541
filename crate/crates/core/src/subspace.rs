//! Finite-dimensional subspaces of matrix spaces and linear maps between them.
//!
//! An [`Ambient`] describes where elements live: one or more rectangular
//! blocks laid out block-diagonally, each carrying a weight for the p-direct
//! sum norm, plus a global trace normalizer (1 for Schatten classes, 2^{−N}
//! for L^p(C_N)). A [`SubspaceBasis`] is an ordered spanning list of
//! elements; a [`SubspaceMap`] is a coefficient matrix over two bases.

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, C64, DEFAULT_DIMENSION_CAP, ZERO};
use crate::schatten::{pdirect_norm_normalized, PExponent};

const GRAM_RTOL: f64 = 1e-10;
const SPAN_RTOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Block {
    pub rows: usize,
    pub cols: usize,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ambient {
    blocks: Vec<Block>,
    normalizer: f64,
}

impl Ambient {
    /// `S^p` of `rows × cols` matrices.
    pub fn matrices(rows: usize, cols: usize) -> Self {
        Self {
            blocks: vec![Block { rows, cols, weight: 1.0 }],
            normalizer: 1.0,
        }
    }

    /// A square space with the given trace normalizer, e.g. L^p(C_N) on Λ_N
    /// with normalizer 2^{−N}.
    pub fn normalized(side: usize, normalizer: f64) -> Self {
        Self {
            blocks: vec![Block { rows: side, cols: side, weight: 1.0 }],
            normalizer,
        }
    }

    /// Weighted p-direct sum of rectangular blocks. Weights must be
    /// nonnegative and sum to 1 within 1e−12; zero weights are allowed for
    /// degenerate boundary cases.
    pub fn weighted(shapes: &[(usize, usize)], weights: &[f64], normalizer: f64) -> Result<Self> {
        if shapes.len() != weights.len() {
            return Err(Error::LengthMismatch {
                expected: shapes.len(),
                found: weights.len(),
            });
        }
        if shapes.is_empty() {
            return Err(Error::DimensionMismatch("direct sum with no blocks".into()));
        }
        for &w in weights {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidWeight(w));
            }
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeight(total));
        }
        if !(normalizer.is_finite() && normalizer > 0.0) {
            return Err(Error::InvalidWeight(normalizer));
        }
        let blocks = shapes
            .iter()
            .zip(weights)
            .map(|(&(rows, cols), &weight)| Block { rows, cols, weight })
            .collect();
        Ok(Self { blocks, normalizer })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn rows(&self) -> usize {
        self.blocks.iter().map(|b| b.rows).sum()
    }

    pub fn cols(&self) -> usize {
        self.blocks.iter().map(|b| b.cols).sum()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    fn offsets(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.blocks.len());
        let (mut r, mut c) = (0, 0);
        for b in &self.blocks {
            out.push((r, c));
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// The diagonal blocks of an element.
    pub fn split(&self, x: &ComplexMatrix) -> Vec<ComplexMatrix> {
        assert_eq!(x.shape(), self.shape(), "element shape does not match ambient");
        self.blocks
            .iter()
            .zip(self.offsets())
            .map(|(b, (r, c))| x.submatrix(r, c, b.rows, b.cols))
            .collect()
    }

    pub fn assemble(&self, parts: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        if parts.len() != self.blocks.len() {
            return Err(Error::LengthMismatch {
                expected: self.blocks.len(),
                found: parts.len(),
            });
        }
        for (p, b) in parts.iter().zip(&self.blocks) {
            if p.shape() != (b.rows, b.cols) {
                return Err(Error::DimensionMismatch(format!(
                    "block {}x{} where {}x{} expected",
                    p.rows(),
                    p.cols(),
                    b.rows,
                    b.cols
                )));
            }
        }
        Ok(linalg::block_diag(parts))
    }

    /// Weighted p-direct-sum norm of an element.
    pub fn norm(&self, x: &ComplexMatrix, p: PExponent) -> f64 {
        let parts = self.split(x);
        let weights: Vec<f64> = self.blocks.iter().map(|b| b.weight).collect();
        pdirect_norm_normalized(&parts, &weights, p, self.normalizer).expect("ambient weights are valid")
    }

    /// The ambient of `S^p_k ⊗ X`: each block grows to `k·rows × k·cols`.
    pub fn amplify(&self, k: usize, cap: usize) -> Result<Self> {
        let blocks: Vec<Block> = self
            .blocks
            .iter()
            .map(|b| Block {
                rows: b.rows * k,
                cols: b.cols * k,
                weight: b.weight,
            })
            .collect();
        let out = Self {
            blocks,
            normalizer: self.normalizer,
        };
        let (rows, cols) = out.shape();
        if rows > cap || cols > cap {
            return Err(Error::DimensionCap { rows, cols, cap });
        }
        Ok(out)
    }

    /// Realizes a `k × k` matrix `[x_ij]` (row-major entries, elements of
    /// this ambient) in the amplified ambient, block by block.
    pub fn amplify_matrix(&self, k: usize, entries: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        if entries.len() != k * k {
            return Err(Error::LengthMismatch {
                expected: k * k,
                found: entries.len(),
            });
        }
        let split: Vec<Vec<ComplexMatrix>> = entries.iter().map(|e| self.split(e)).collect();
        let parts: Vec<ComplexMatrix> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(bi, b)| {
                let mut m = ComplexMatrix::zeros(k * b.rows, k * b.cols);
                for i in 0..k {
                    for j in 0..k {
                        m.set_block(i * b.rows, j * b.cols, &split[i * k + j][bi]);
                    }
                }
                m
            })
            .collect();
        Ok(linalg::block_diag(&parts))
    }
}

#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    name: String,
    ambient: Ambient,
    elements: Vec<ComplexMatrix>,
    gram_inverse: ComplexMatrix,
}

impl SubspaceBasis {
    pub fn new(name: impl Into<String>, ambient: Ambient, elements: Vec<ComplexMatrix>) -> Result<Self> {
        let name = name.into();
        let shape = ambient.shape();
        for e in &elements {
            if e.shape() != shape {
                return Err(Error::DimensionMismatch(format!(
                    "basis `{name}`: element {}x{} in a {}x{} ambient",
                    e.rows(),
                    e.cols(),
                    shape.0,
                    shape.1
                )));
            }
        }
        let d = elements.len();
        let mut gram = ComplexMatrix::zeros(d, d);
        for l in 0..d {
            for m in 0..d {
                gram[(l, m)] = elements[m].hs_inner(&elements[l]);
            }
        }
        let scale = (0..d).map(|i| gram[(i, i)].re).fold(0.0, f64::max);
        if d > 0 && scale == 0.0 {
            return Err(Error::DependentBasis(name));
        }
        let eig = linalg::hermitian_eig(&gram, 1e-9)?;
        if d > 0 && eig.min_eigenvalue() <= GRAM_RTOL * scale {
            return Err(Error::DependentBasis(name));
        }
        let gram_inverse = gram
            .solve(&ComplexMatrix::identity(d))
            .ok_or_else(|| Error::DependentBasis(name.clone()))?;
        Ok(Self {
            name,
            ambient,
            elements,
            gram_inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ComplexMatrix {
        &self.elements[i]
    }

    pub fn combine(&self, coeffs: &[C64]) -> ComplexMatrix {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count");
        let (r, c) = self.ambient.shape();
        let mut out = ComplexMatrix::zeros(r, c);
        for (e, &a) in self.elements.iter().zip(coeffs) {
            if a != ZERO {
                out.axpy(a, e);
            }
        }
        out
    }

    /// Coordinates of `x`; fails with `NotInSpan` when `x` is not in the span.
    pub fn coordinates(&self, x: &ComplexMatrix) -> Result<Vec<C64>> {
        if x.shape() != self.ambient.shape() {
            return Err(Error::DimensionMismatch(format!(
                "element {}x{} for basis `{}`",
                x.rows(),
                x.cols(),
                self.name
            )));
        }
        let b: Vec<C64> = self.elements.iter().map(|e| x.hs_inner(e)).collect();
        let coeffs = self.gram_inverse.mul_vec(&b);
        let residual = (x - &self.combine(&coeffs)).frobenius_norm();
        if residual > SPAN_RTOL * x.frobenius_norm().max(1.0) {
            return Err(Error::NotInSpan {
                basis: self.name.clone(),
                residual,
            });
        }
        Ok(coeffs)
    }

    pub fn contains(&self, x: &ComplexMatrix) -> bool {
        self.coordinates(x).is_ok()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The basis `{E_ij ⊗ x_m}` of `S^p_k ⊗ X`, indexed `(i·k + j)·d + m`.
    pub fn amplify(&self, k: usize) -> Result<Self> {
        self.amplify_capped(k, DEFAULT_DIMENSION_CAP)
    }

    pub fn amplify_capped(&self, k: usize, cap: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::DimensionMismatch("amplification level 0".into()));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let ambient = self.ambient.amplify(k, cap)?;
        let (r, c) = self.ambient.shape();
        let zero = ComplexMatrix::zeros(r, c);
        let mut elements = Vec::with_capacity(k * k * self.dim());
        for i in 0..k {
            for j in 0..k {
                for x in &self.elements {
                    let mut entries = vec![zero.clone(); k * k];
                    entries[i * k + j] = x.clone();
                    elements.push(self.ambient.amplify_matrix(k, &entries)?);
                }
            }
        }
        // Unit blocks of a Gram-nonsingular family: the Gram matrix is
        // I_{k²} ⊗ G, so the inverse is known.
        let gram_inverse = linalg::kron_capped(
            &ComplexMatrix::identity(k * k),
            &self.gram_inverse,
            usize::MAX,
        )?;
        Ok(Self {
            name: format!("M_{k}({})", self.name),
            ambient,
            elements,
            gram_inverse,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SubspaceMap {
    domain: SubspaceBasis,
    codomain: SubspaceBasis,
    coeffs: ComplexMatrix,
}

impl SubspaceMap {
    pub fn new(domain: SubspaceBasis, codomain: SubspaceBasis, coeffs: ComplexMatrix) -> Result<Self> {
        if coeffs.shape() != (codomain.dim(), domain.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix {}x{} for a map from dimension {} to {}",
                coeffs.rows(),
                coeffs.cols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(Self {
            domain,
            codomain,
            coeffs,
        })
    }

    /// The map sending domain element `m` to `images[m]`.
    pub fn from_images(domain: SubspaceBasis, codomain: SubspaceBasis, images: &[ComplexMatrix]) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::LengthMismatch {
                expected: domain.dim(),
                found: images.len(),
            });
        }
        let mut coeffs = ComplexMatrix::zeros(codomain.dim(), domain.dim());
        for (m, img) in images.iter().enumerate() {
            for (l, c) in codomain.coordinates(img)?.into_iter().enumerate() {
                coeffs[(l, m)] = c;
            }
        }
        Self::new(domain, codomain, coeffs)
    }

    /// The map given by an ambient-level operation on each basis element.
    pub fn from_fn(
        domain: SubspaceBasis,
        codomain: SubspaceBasis,
        f: impl Fn(&ComplexMatrix) -> Result<ComplexMatrix>,
    ) -> Result<Self> {
        let images = domain.elements().iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::from_images(domain, codomain, &images)
    }

    pub fn identity(basis: SubspaceBasis) -> Self {
        let d = basis.dim();
        Self {
            domain: basis.clone(),
            codomain: basis,
            coeffs: ComplexMatrix::identity(d),
        }
    }

    pub fn domain(&self) -> &SubspaceBasis {
        &self.domain
    }

    pub fn codomain(&self) -> &SubspaceBasis {
        &self.codomain
    }

    pub fn coeffs(&self) -> &ComplexMatrix {
        &self.coeffs
    }

    pub fn apply_coords(&self, x: &[C64]) -> Vec<C64> {
        self.coeffs.mul_vec(x)
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let c = self.domain.coordinates(x)?;
        Ok(self.codomain.combine(&self.apply_coords(&c)))
    }

    /// `self ∘ inner`. The codomain of `inner` must span the same space as
    /// the domain of `self`.
    pub fn compose(&self, inner: &SubspaceMap) -> Result<SubspaceMap> {
        let images: Vec<ComplexMatrix> = (0..inner.domain.dim())
            .map(|m| {
                let col = inner.coeffs.column(m);
                self.apply(&inner.codomain.combine(&col))
            })
            .collect::<Result<_>>()?;
        Self::from_images(inner.domain.clone(), self.codomain.clone(), &images)
    }

    /// Restriction to a subspace of the domain.
    pub fn restrict(&self, sub: SubspaceBasis) -> Result<SubspaceMap> {
        let mut coeffs = ComplexMatrix::zeros(self.codomain.dim(), sub.dim());
        for (m, e) in sub.elements().iter().enumerate() {
            let image = self.apply_coords(&self.domain.coordinates(e)?);
            for (l, c) in image.into_iter().enumerate() {
                coeffs[(l, m)] = c;
            }
        }
        Self::new(sub, self.codomain.clone(), coeffs)
    }

    /// `I_{S^p_k} ⊗ u`.
    pub fn amplify(&self, k: usize) -> Result<SubspaceMap> {
        self.amplify_capped(k, DEFAULT_DIMENSION_CAP)
    }

    pub fn amplify_capped(&self, k: usize, cap: usize) -> Result<SubspaceMap> {
        let domain = self.domain.amplify_capped(k, cap)?;
        let codomain = self.codomain.amplify_capped(k, cap)?;
        let coeffs = linalg::kron_capped(&ComplexMatrix::identity(k * k), &self.coeffs, usize::MAX)?;
        Self::new(domain, codomain, coeffs)
    }

    /// Largest entrywise deviation between two maps on the same bases.
    pub fn coeff_distance(&self, other: &SubspaceMap) -> f64 {
        self.coeffs.max_abs_diff(&other.coeffs)
    }

    pub fn is_identity_coeffs(&self, tol: f64) -> bool {
        self.coeffs.is_square() && self.coeffs.max_abs_diff(&ComplexMatrix::identity(self.coeffs.rows())) <= tol
    }
}

/// Canonical basis `{E_ij}` of `rows × cols` matrices, row-major.
pub fn matrix_units(rows: usize, cols: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            out.push(ComplexMatrix::unit(rows, cols, i, j));
        }
    }
    out
}
