use std::path::PathBuf;

use simprep_core::Error;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Json { .. } | CliError::Schema(_) => 2,
            CliError::Core(e) => match e {
                Error::MissingCoverEntry(_) => 3,
                Error::NotClosed { .. } | Error::UnboundedSet => 4,
                Error::RecursionBudgetExceeded(_) => 1,
                _ => 2,
            },
            CliError::Read { .. } | CliError::Write(_) | CliError::Csv(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
