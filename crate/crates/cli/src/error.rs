use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] regent_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Process exit statuses.
pub mod exit {
    pub const HOLDS: i32 = 0;
    pub const REFUTED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const UNKNOWN: i32 = 3;
}
