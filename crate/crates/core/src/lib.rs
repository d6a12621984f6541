//! Finite-dimensional operator-space laboratory: anti-symmetric Fock spaces,
//! Fermions and Clifford algebras, Schatten and noncommutative L^p norms,
//! amplified norms of maps between matrix subspaces, and the Rademacher
//! model on the hypercube.

pub mod clifford;
pub mod error;
pub mod fock;
pub mod hypercube;
pub mod linalg;
pub mod projections;
pub mod schatten;
pub mod subspace;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianEigen, SingularValues, C64};
pub use schatten::{EstimateKind, NormEstimate, OptimizerConfig, PExponent};
pub use subspace::{Ambient, SubspaceBasis, SubspaceMap};
