use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("n = {n} is outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid index tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("matrix is not skew-symmetric or has odd order: {0}")]
    NotSkew(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("precision failure: {0}")]
    Precision(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
