use std::path::PathBuf;

use principalize_core::oracle::OracleError;
use thiserror::Error;

/// Malformed or unreadable input.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    At {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("engine failure: {0}")]
    Engine(principalize_core::Error),
    #[error("oracle failure: {0}")]
    OracleLimit(OracleError),
    #[error("verification failed: {0}")]
    Verification(OracleError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Engine(_) | CliError::OracleLimit(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<principalize_core::Error> for CliError {
    fn from(e: principalize_core::Error) -> Self {
        use principalize_core::Error::*;
        match e {
            InvariantViolation(_) | StepLimitExceeded { .. } => CliError::Engine(e),
            other => CliError::Input(InputError::Invalid(other.to_string())),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::LeafCapExceeded { .. } => CliError::OracleLimit(e),
            OracleError::EmptyIdeal | OracleError::LengthMismatch { .. } => {
                CliError::Input(InputError::Invalid(e.to_string()))
            }
            _ => CliError::Verification(e),
        }
    }
}
