use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid measurement: {0}")]
    Invalid(geam_core::Error),
    #[error("measurement failed validation")]
    Rejected,
    #[error("invalid state: {0}")]
    InvalidState(geam_core::Error),
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("sweeps need a qubit measurement, got dimension {0}")]
    NonQubit(usize),
    #[error("{0}")]
    Usage(String),
    #[error("{0} violation(s) beyond tolerance")]
    Violations(usize),
    #[error(transparent)]
    Core(#[from] geam_core::Error),
}

impl CliError {
    /// 2 for unreadable or malformed input, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
