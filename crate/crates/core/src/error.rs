use thiserror::Error;

/// Errors produced by the expansion, statistics and speed routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no root in the given interval")]
    NoRoot,

    #[error("{0} roots in the given interval, expected exactly one")]
    AmbiguousRoot(usize),

    #[error("the number is rational")]
    Rational,

    #[error("expansion has {available} certified coefficients, {needed} needed")]
    InsufficientExpansion { needed: usize, available: usize },

    #[error("partial quotient does not fit in 64 bits")]
    CoefficientOverflow,

    #[error("model assigns zero probability to observed value {0}")]
    SupportMismatch(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("degenerate interval: no coefficient could be certified")]
    DegenerateInterval,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
