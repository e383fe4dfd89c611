use std::path::PathBuf;

use coxstat_core::{ElementError, GroupError, InterpError, LimitError, MomentError, PolyError, RootSystemError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Json { line: usize, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error("statistic {0} not found")]
    NotFound(String),
    #[error("{0} is not cached and fetching is unavailable")]
    CacheMiss(String),
    #[error("network: {0}")]
    Network(String),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json {
            line: e.line(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
