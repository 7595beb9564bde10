//! Error type shared by every module.

use thiserror::Error;

/// All fallible operations in the crate return this error.
///
/// The variants map one-to-one onto the process exit codes used by the
/// command-line front end (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid configuration, e.g. an unknown (type, rank) pair.
    #[error("configuration error: {0}")]
    Config(String),
    /// Invalid call arguments, e.g. an element outside `W^P`.
    #[error("usage error: {0}")]
    Usage(String),
    /// Input outside the mathematical domain, e.g. a vector that is not a root.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size cap would be exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// An internal consistency check failed; this indicates a bug or a
    /// violated theorem.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// Exit code for the command-line front end: 2 for configuration and
    /// usage errors, 3 for resource caps, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Usage(_) | Error::Domain(_) => 2,
            Error::Resource(_) => 3,
            Error::Internal(_) => 1,
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
