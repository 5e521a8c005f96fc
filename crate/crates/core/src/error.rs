use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (singular matrix,
    /// division by zero, even characteristic, malformed composition).
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured budget would be exceeded.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// The configuration cannot be satisfied (e.g. no splitting prime below the bound).
    #[error("configuration error: {0}")]
    Config(String),
    /// An internal consistency check failed. Always a bug or corrupted input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    /// Two independently computed quantities disagree.
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
