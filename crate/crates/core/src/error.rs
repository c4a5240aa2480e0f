use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric")]
    NonSymmetric,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("Gram matrix is not positive semi-definite")]
    NotSemiDefinite,
    #[error("degenerate Gram matrix")]
    Degenerate,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("result is not rational: {0}")]
    IrrationalResult(String),
    #[error("underlying modules differ")]
    ModuleMismatch,
    #[error("map is not an isometric embedding")]
    NotIsometric,
    #[error("expansion is not invariant under lattice translations: {0}")]
    NotLInvariant(String),
    #[error("weight must be a half-integer, got {0}")]
    BadWeight(String),
    #[error("not a Jacobi form of the claimed type: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
