//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by validation, codecs, and the engine operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A file or in-memory description failed structural validation.
    /// The message names the offending field path.
    #[error("validation error: {0}")]
    Validation(String),

    /// JSON (de)serialization failure.
    #[error("codec error: {0}")]
    Codec(String),

    /// An operation precondition was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A search or simulation exceeded its node or wall-clock budget.
    #[error("budget exhausted: {0}")]
    Budget(String),

    /// An internal contract failed; indicates a bug, not a user error.
    #[error("internal invariant failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
