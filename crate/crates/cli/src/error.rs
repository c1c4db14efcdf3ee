use std::path::PathBuf;

use qdt_core::QdtError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    /// A record that parsed but violates an invariant.
    #[error("{path}: record `{label}` ({at}): {source}")]
    Invalid {
        path: String,
        label: String,
        at: String,
        #[source]
        source: QdtError,
    },

    #[error("{path}: duplicate label `{label}` ({first} and {second})")]
    DuplicateLabel {
        path: String,
        label: String,
        first: String,
        second: String,
    },

    #[error("no record labelled `{0}`")]
    UnknownLabel(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] QdtError),

    /// The amplitude oracle disagreed with the closed form.
    #[error("oracle check failed: {0}")]
    Oracle(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 for invalid input or usage, 2 for numerical failures, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => 2,
            CliError::Oracle(_) => 2,
            CliError::Io { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
