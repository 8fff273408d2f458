use std::path::PathBuf;

use thiserror::Error;
use wqed_core::WqedError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing required key [{section}] {key}")]
    Missing { section: String, key: String },

    #[error(transparent)]
    Core(#[from] WqedError),

    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("unknown preset '{0}' (available: {1})")]
    UnknownPreset(String, String),

    #[error("json encoding failed: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Usage(String),

    #[error("oracle check failed: {0}")]
    OracleFailed(String),
}

impl CliError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
