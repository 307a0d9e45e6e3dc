//! CLI error taxonomy and exit codes: 0 ok, 2 parse, 3 math, 4 invariant.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("math error: {0}")]
    Math(hermita_core::Error),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<hermita_core::Error> for CliError {
    fn from(e: hermita_core::Error) -> Self {
        match e {
            // malformed file contents, not a failed computation
            hermita_core::Error::Parse(_) | hermita_core::Error::InvalidDescriptor(_) => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Math(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Math(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}
