//! Front end for the `measfield` workbench: census sweeps, verification
//! suites, and the `witness`, `stone` and `quotient` reports.

pub mod census;
pub mod commands;
pub mod suites;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] measfield::Error),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown schema `{0}`")]
    UnknownSchema(String),
    #[error("census bound {requested} exceeds the configured maximum {max}")]
    BoundExceeded { requested: u64, max: u64 },
    #[error("unsupported output format for `{0}`; use .json or .csv")]
    OutputFormat(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for usage and parse errors, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(measfield::Error::Parse(_))
            | CliError::UnknownSuite(_)
            | CliError::UnknownSchema(_)
            | CliError::BoundExceeded { .. }
            | CliError::OutputFormat(_)
            | CliError::Io { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}
