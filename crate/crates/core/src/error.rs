use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("multi-index has degree {found}, expected {expected}")]
    DegreeMismatch { expected: i64, found: i64 },

    #[error("partition {partition} has {parts} parts, more than the ambient dimension {ambient}")]
    TooManyParts {
        partition: String,
        parts: usize,
        ambient: usize,
    },

    #[error("eta needs a tensor of left degree at least 1")]
    LeftDegreeZero,

    #[error("evaluation point must be nonzero")]
    ZeroPoint,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {prime} divides a denominator; retry with another prime")]
    DenominatorDivisible { prime: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
