use std::path::PathBuf;

use qgap_core::chain::ChainError;
use qgap_core::extremal::ExtremalError;
use qgap_core::fem::FemError;
use qgap_core::graph::GraphError;
use qgap_core::reduction::ReductionError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const VALIDATION: i32 = 4;
    pub const CONVERGENCE: i32 = 5;
    pub const VERIFICATION: i32 = 6;
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{origin}: line {line}, column {column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Convergence(String),
    #[error("{0}")]
    Verification(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => exit::IO,
            Error::Usage(_) => exit::USAGE,
            Error::Parse { .. } => exit::PARSE,
            Error::Validation(_) => exit::VALIDATION,
            Error::Convergence(_) => exit::CONVERGENCE,
            Error::Verification(_) => exit::VERIFICATION,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(origin: &str, e: &serde_json::Error) -> Self {
        Error::Parse {
            origin: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

impl From<GraphError> for Error {
    fn from(e: GraphError) -> Self {
        Error::Validation(e.to_string())
    }
}

impl From<ChainError> for Error {
    fn from(e: ChainError) -> Self {
        Error::Validation(e.to_string())
    }
}

impl From<ExtremalError> for Error {
    fn from(e: ExtremalError) -> Self {
        Error::Validation(e.to_string())
    }
}

impl From<ReductionError> for Error {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::PathLimit(_) => Error::Convergence(e.to_string()),
            _ => Error::Validation(e.to_string()),
        }
    }
}

impl From<FemError> for Error {
    fn from(e: FemError) -> Self {
        match e {
            FemError::MeshTooCoarse { .. } => Error::Validation(e.to_string()),
            _ => Error::Convergence(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
