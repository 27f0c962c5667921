use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the solvers and their building blocks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element {0} in instance")]
    DuplicateElement(BigInt),

    #[error("element {0} is not in the instance")]
    NotInInstance(BigInt),

    #[error("invalid difference {0}: must be positive")]
    InvalidDifference(BigInt),

    #[error("invalid progression: {0}")]
    InvalidProgression(String),

    #[error("{what} exceeds capacity: {got} > {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("expected {lo} < {hi}")]
    Ordering { lo: BigInt, hi: BigInt },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, limit: usize, got: usize) -> Self {
        Error::Capacity { what, limit, got }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
