use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    /// A character that should be symmetric was not; signals an engine bug.
    #[error("character is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    /// A computed invariant failed; signals an engine bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("inconsistent exact sequence data: {0}")]
    Contradiction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
