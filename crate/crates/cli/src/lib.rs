//! Batch front-end: every pipeline as a subcommand with JSON output.

pub mod checks;
mod commands;

pub use commands::{execute, Cli, Command, Format, Outcome};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<eisenstein_calculus::EisError> for CliError {
    fn from(e: eisenstein_calculus::EisError) -> Self {
        match e {
            eisenstein_calculus::EisError::Precondition(s) => CliError::Usage(s),
            eisenstein_calculus::EisError::OddOrSmallWeight(w) => CliError::Usage(format!("odd or small weight: {w}")),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<eichler_numerics::NumError> for CliError {
    fn from(e: eichler_numerics::NumError) -> Self {
        match e {
            eichler_numerics::NumError::Precondition(s) => CliError::Usage(s),
            eichler_numerics::NumError::Eisenstein(inner) => inner.into(),
            other => CliError::Failed(other.to_string()),
        }
    }
}
