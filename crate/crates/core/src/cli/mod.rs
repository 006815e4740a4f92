//! Batch scenario runner behind the `dscatter` binary.

pub mod csv;
pub mod presets;
pub mod runner;
pub mod scenario;
pub mod selfcheck;

use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI invocation, each mapped to an exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing required key `{0}`")]
    MissingKey(String),

    #[error(transparent)]
    Physics(#[from] crate::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("tolerance breach: {0}")]
    Tolerance(String),
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 validation, 3 resolution guard, 4 numerical tolerance, 1 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::MissingKey(_) | CliError::UnknownPreset(_) => 2,
            CliError::Physics(crate::Error::Resolution { .. } | crate::Error::BinTooCoarse { .. }) => 3,
            CliError::Physics(_) => 2,
            CliError::Tolerance(_) => 4,
            CliError::Io { .. } => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
