use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Core(#[from] ampsum_core::Error),

    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn parse(line: usize, message: impl ToString) -> Self {
        CliError::Parse { line, message: message.to_string() }
    }
}
