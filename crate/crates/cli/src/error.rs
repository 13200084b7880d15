use std::process::ExitCode;

use thiserror::Error;

/// Failure of a subcommand, classified by the exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: unreadable files, malformed CSV or JSON, invalid
    /// parameters, degenerate samples.
    #[error("{0}")]
    Data(String),
    /// A numerical routine failed on otherwise valid input.
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn data(msg: impl Into<String>) -> Self {
        CliError::Data(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Data(_) => ExitCode::from(2),
            CliError::Numerical(_) => ExitCode::from(3),
        }
    }
}

impl From<gb2kit::Error> for CliError {
    fn from(e: gb2kit::Error) -> Self {
        if e.is_data_error() {
            CliError::Data(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Data(format!("invalid JSON: {e}"))
    }
}
