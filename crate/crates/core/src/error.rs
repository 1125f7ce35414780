use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group spec {0:?}: {1}")]
    InvalidSpec(String, String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by bad user input rather than by the engine.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidSpec(..)
                | Error::DimensionMismatch { .. }
                | Error::GroupMismatch(_)
                | Error::UnknownLabel(_)
                | Error::Parse(_)
                | Error::Budget(_)
                | Error::NotApplicable(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
