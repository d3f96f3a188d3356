use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An input violates a mathematical invariant (non-coprime pair,
    /// non-definite intersection form, malformed gluing, ...).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
