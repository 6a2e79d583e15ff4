use thiserror::Error;

/// Crate-wide error type. The three variants map onto the CLI exit codes
/// for input errors, resource caps, and internal invariant violations.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input: bad relations, non-group tables,
    /// mismatched carriers, values outside a precondition.
    #[error("invalid input: {0}")]
    Argument(String),

    /// A configured resource cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// A self-check failed; indicates a bug, not a user error.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
