use std::io;

use thiserror::Error;

/// Exit status for a run whose checks all behaved as expected.
pub const EXIT_OK: i32 = 0;
/// Exit status when a check missed its expectation.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for usage, configuration and I/O errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] gmrk_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
