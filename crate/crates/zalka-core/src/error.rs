//! Error type shared by all modules.

/// Errors produced by the toolkit.
///
/// `Domain` marks arguments outside an operation's domain (bad qubit index,
/// mode out of range, mismatched dimensions). `Validation` marks inputs that
/// are structurally well-formed but fail a numerical contract (non-unitary
/// gate in strict mode, incomplete Kraus set, insufficient simulation box).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
