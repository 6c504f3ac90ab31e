use std::path::PathBuf;

use thiserror::Error;

use crate::config::Command;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown command '{0}' (expected one of: {commands}, replay)", commands = Command::NAMES.join(", "))]
    UnknownCommand(String),
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
    #[error("cannot read manifest {path}: {reason}")]
    Manifest { path: PathBuf, reason: String },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("computation failed: {0}")]
    Compute(#[from] latcover::Error),
}

impl CliError {
    /// Process exit status; `2` is left to argument-parsing errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::UnknownCommand(_) => 3,
            CliError::Shape(_) => 4,
            CliError::Invalid(_) => 5,
            CliError::Manifest { .. } => 6,
            CliError::Io { .. } => 7,
            CliError::Compute(_) => 8,
        }
    }

    pub(crate) fn io(context: impl Into<String>, source: impl Into<std::io::Error>) -> Self {
        CliError::Io {
            context: context.into(),
            source: source.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
