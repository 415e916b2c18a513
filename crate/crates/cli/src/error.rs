use std::path::PathBuf;

use crate::format::ParseError;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const BUDGET_EXCEEDED: i32 = 3;
    pub const PRECONDITION: i32 = 4;
    pub const TIMEOUT: i32 = 5;
    pub const VERIFY_FAILED: i32 = 6;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {error}", path.display())]
    Parse { path: PathBuf, error: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error(transparent)]
    Core(#[from] fcc_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => exit::INPUT,
            CliError::Usage(_) => exit::USAGE,
            CliError::Precondition(_) => exit::PRECONDITION,
            CliError::Verify(_) => exit::VERIFY_FAILED,
            CliError::Core(fcc_core::Error::InvalidInstance(_))
            | CliError::Core(fcc_core::Error::InvalidPartition(_)) => exit::INPUT,
            CliError::Core(_) => exit::PRECONDITION,
        }
    }
}
