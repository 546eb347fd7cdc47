use thiserror::Error;

/// Errors raised by the tensor and decomposition containers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("index ({i}, {j}) out of range for n = {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("dimension mismatch: expected n = {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("term {term}: factor {slot} is the zero matrix")]
    ZeroFactor { term: usize, slot: char },
    #[error("term {term}: non-finite entry")]
    NonFinite { term: usize },
    #[error("n must be positive")]
    EmptyDimension,
}
