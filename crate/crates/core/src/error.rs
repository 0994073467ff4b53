use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degree {degree} out of range for dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("not a spark: {0}")]
    NotASpark(String),
    #[error("axiom failure: {0}")]
    AxiomFailure(String),
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("cycle does not lie in the cover: {0}")]
    CoverMismatch(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
