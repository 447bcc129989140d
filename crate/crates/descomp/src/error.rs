use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("malformed formula: {0}")]
    WellFormedness(String),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("vocabulary mismatch: {0}")]
    VocabularyMismatch(String),

    #[error("free variable x{}", .0 + 1)]
    FreeVariable(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
