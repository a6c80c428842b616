use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A result would exceed a size limit (order cap, enumeration budget, ...).
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),
    /// An operation was called outside its documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A graph6 string could not be decoded.
    #[error("graph6 parse error: {0}")]
    Graph6(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// A census record cannot answer a subset question.
    #[error("census in maximal-only mode is value-only; rerun in full mode")]
    ValueOnly,
    /// A computed or loaded result failed re-validation.
    #[error("validation failed: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
