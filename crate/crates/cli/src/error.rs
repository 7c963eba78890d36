use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Semantic(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Semantic(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<cagv_core::Error> for CliError {
    fn from(e: cagv_core::Error) -> Self {
        match e {
            cagv_core::Error::Syntax { .. } => CliError::Parse(e.to_string()),
            other => CliError::Semantic(other.to_string()),
        }
    }
}
