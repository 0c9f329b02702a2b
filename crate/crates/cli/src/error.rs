use std::io;
use std::path::Path;

use thiserror::Error;

pub const EXIT_MALFORMED: i32 = 11;
pub const EXIT_DIMENSION: i32 = 12;
pub const EXIT_CORE: i32 = 13;
pub const EXIT_IO: i32 = 14;
pub const EXIT_USAGE: i32 = 15;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input {path}: {reason}")]
    Malformed { path: String, reason: String },
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("{0}")]
    Core(conekit::Error),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn malformed(path: &Path, reason: impl Into<String>) -> Self {
        CliError::Malformed { path: path.display().to_string(), reason: reason.into() }
    }

    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed { .. } => EXIT_MALFORMED,
            CliError::Dim(_) => EXIT_DIMENSION,
            CliError::Core(_) => EXIT_CORE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

impl From<conekit::Error> for CliError {
    fn from(e: conekit::Error) -> Self {
        match e {
            conekit::Error::Dim(msg) => CliError::Dim(msg),
            other => CliError::Core(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
