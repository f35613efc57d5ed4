use std::path::PathBuf;

use hedgehog_core::GeomError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid scene: {0}")]
    Scene(#[from] serde_json::Error),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error("{0}")]
    InvalidArgument(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

/// Process exit status of every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Error = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}
