//! Error types shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested quantity is undefined on this input (for example a
    /// subgraph statistic that requires at least one edge).
    #[error("domain error: {0}")]
    DomainError(String),

    /// A combinatorial search exceeded its configured budget. `attempted`
    /// reports the bound that was hit so callers can decide whether to retry
    /// with a larger budget.
    #[error("resource limit exceeded ({what}): attempted {attempted}")]
    ResourceLimit { what: String, attempted: u64 },

    /// Malformed graph text input.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::DomainError(msg.into())
    }

    pub fn resource(what: impl Into<String>, attempted: u64) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            attempted,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
