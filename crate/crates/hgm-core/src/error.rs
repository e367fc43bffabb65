use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("alpha and beta must be non-empty and of equal length")]
    LengthMismatch,
    #[error("alpha and beta overlap at {0}")]
    Overlap(String),
    #[error("parameters are not defined over Q: {0}")]
    NotCyclotomic(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("specialization argument must be nonzero")]
    ZeroArgument,
    #[error("cannot factor {0}")]
    FactorizationFailed(String),
    #[error("non-integral value where an integer was required: {0}")]
    NonIntegral(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}
