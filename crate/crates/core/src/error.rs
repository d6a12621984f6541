use thiserror::Error;

use crate::linalg::HermitianEigen;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds tolerance {tol:e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    /// The Jacobi sweep cap was reached; the best decomposition found is attached.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:e})")]
    NoConvergence {
        sweeps: usize,
        off_diagonal: f64,
        best: Box<HermitianEigen>,
    },

    #[error("dimension {rows}x{cols} exceeds the cap of {cap} per side")]
    DimensionCap { rows: usize, cols: usize, cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} outside {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("invalid exponent p = {0}")]
    InvalidExponent(f64),

    #[error("invalid weight {0}")]
    InvalidWeight(f64),

    #[error("non-finite entry in matrix data")]
    NonFinite,

    #[error("denominator norm vanishes")]
    ZeroDenominator,

    #[error("element is not in the span of basis `{basis}` (residual {residual:e})")]
    NotInSpan { basis: String, residual: f64 },

    #[error("basis `{0}` is linearly dependent")]
    DependentBasis(String),

    #[error("spin system is degenerate: the central projection is {0}")]
    SpinSystemDegenerate(&'static str),

    #[error("no final-pair candidate reproduces the map (residuals: identity {with_identity:e}, top word {with_top_word:e})")]
    FactorizationMismatch { with_identity: f64, with_top_word: f64 },
}

pub(crate) fn check_index(index: usize, lo: usize, hi: usize) -> Result<()> {
    if index < lo || index > hi {
        return Err(Error::IndexOutOfRange {
            index: index as i64,
            lo: lo as i64,
            hi: hi as i64,
        });
    }
    Ok(())
}
