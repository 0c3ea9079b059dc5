use thiserror::Error;

/// Errors raised by the library. Every variant describes invalid input; no
/// operation fails for reasons other than its arguments.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),
    #[error("parameters {p} and {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: u64, bound: u64 },
    #[error("multiset is empty")]
    EmptyMultiset,
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("polynomial division leaves a nonzero remainder")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not symmetric under t -> 1/t")]
    NotSymmetric,
    #[error("polynomial is not Alexander-normalized: {0}")]
    NotNormalized(String),
    #[error("invalid V-sequence: {0}")]
    InvalidVSequence(String),
    #[error("coefficients are not those of an L-space knot: {0}")]
    NotLSpaceAlexander(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
