use thiserror::Error;

use crate::genus::GenusError;
use crate::localize::LocalizeError;
use crate::manifold::ModelError;
use crate::obstruct::ObstructError;
use crate::series::SeriesError;

/// Top-level failure, sorted by exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("resource cap: {0}")]
    Cap(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) => 2,
            Error::Inconsistent(_) => 3,
            Error::Cap(_) => 4,
        }
    }
}

impl From<ModelError> for Error {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::CatalogCheck { .. } => Error::Inconsistent(e.to_string()),
            _ => Error::Validation(format!("[{}] {e}", e.code())),
        }
    }
}

impl From<SeriesError> for Error {
    fn from(e: SeriesError) -> Self {
        Error::Validation(e.to_string())
    }
}

impl From<GenusError> for Error {
    fn from(e: GenusError) -> Self {
        match e {
            GenusError::Model(m) => m.into(),
            GenusError::Series(s) => s.into(),
            GenusError::Unsupported(_) => Error::Validation(e.to_string()),
            GenusError::Inconsistent(_) => Error::Inconsistent(e.to_string()),
        }
    }
}

impl From<LocalizeError> for Error {
    fn from(e: LocalizeError) -> Self {
        match e {
            LocalizeError::Genus(g) => g.into(),
            LocalizeError::Model(m) => m.into(),
            LocalizeError::Series(s) => s.into(),
            _ => Error::Validation(e.to_string()),
        }
    }
}

impl From<ObstructError> for Error {
    fn from(e: ObstructError) -> Self {
        match e {
            ObstructError::Genus(g) => g.into(),
            ObstructError::Cap(_) => Error::Cap(e.to_string()),
            _ => Error::Validation(e.to_string()),
        }
    }
}
