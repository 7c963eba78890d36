use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("index out of range: {0}")]
    Index(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("truncation orders differ ({0} vs {1})")]
    TruncMismatch(usize, usize),
    #[error("degree guard exceeded: degree {degree} is above the cap {max}")]
    DegreeGuard { degree: usize, max: usize },
    #[error("not a crepant resolution: {0}")]
    NotResolution(String),
    #[error("retry budget of {0} attempts exhausted")]
    RetryExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn index(msg: impl Into<String>) -> Self {
        Error::Index(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
