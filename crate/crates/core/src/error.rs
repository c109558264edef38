//! Crate-wide error type.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-domain input (bad dimension vector, unknown
    /// vertex, precondition violation).
    #[error("invalid input: {0}")]
    Input(String),
    /// Parse failure in a quiver file or a serialized polynomial; `line` is
    /// 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A configured resource cap (node budget, feasibility guard) was hit.
    #[error("resource limit: {0}")]
    Resource(String),
    /// An internal invariant failed. Indicates a bug, not a user mistake.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, message: msg.into() }
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
