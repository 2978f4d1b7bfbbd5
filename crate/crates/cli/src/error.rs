use std::path::PathBuf;

use thiserror::Error;

/// Everything that ends a command with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
    #[error("malformed density file: {0}")]
    Format(String),
    #[error("{}: {}", .0.invariant(), .0)]
    Library(qudiscord::Error),
    #[error("{0}")]
    Usage(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl From<qudiscord::Error> for CliError {
    fn from(e: qudiscord::Error) -> Self {
        CliError::Library(e)
    }
}

impl CliError {
    /// Invariant name when the failure came from the library.
    pub fn invariant(&self) -> Option<&'static str> {
        match self {
            CliError::Library(e) => Some(e.invariant()),
            _ => None,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
