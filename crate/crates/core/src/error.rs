use thiserror::Error;

/// Errors raised while building or validating representations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("unsupported n = {0} (only n = 3 and n = 4 are implemented)")]
    UnsupportedN(u8),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),

    #[error("missing component: {0}")]
    MissingComponent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
