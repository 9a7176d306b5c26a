//! Runner errors, split by exit code: configuration problems (exit 2) and
//! filesystem problems (exit 3).

/// Anything that can stop an experiment run.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Invalid or inconsistent configuration (bad flag value, malformed
    /// config file, parameter out of range).
    #[error("{0}")]
    Config(String),
    /// Filesystem failure (unreadable config path, unwritable output path).
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(msg: impl Into<String>) -> Self {
        CliError::Io(msg.into())
    }

    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

/// Core-library failures surface as configuration errors: every fallible
/// core path is a domain/validation check on caller-supplied parameters.
impl From<zalka_core::error::Error> for CliError {
    fn from(err: zalka_core::error::Error) -> Self {
        CliError::Config(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
