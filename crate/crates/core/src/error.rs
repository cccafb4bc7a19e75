use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search budget exceeded in stage `{stage}`: space of size {size} exceeds cap {cap}")]
    Budget {
        stage: String,
        size: String,
        cap: u128,
    },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn budget(stage: impl Into<String>, size: impl ToString, cap: u128) -> Self {
        Error::Budget {
            stage: stage.into(),
            size: size.to_string(),
            cap,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
