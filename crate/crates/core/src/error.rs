use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("record `{0}` has no bases")]
    MalformedRecord(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("no informative (non-N) bases")]
    NoInformativeBases,
    #[error("need at least {needed} sequences, have {have}")]
    TooFewSequences { needed: usize, have: usize },
    #[error("window length {got} does not match motif length {expected}")]
    WindowLengthMismatch { expected: usize, got: usize },
    #[error("no scorable sequences")]
    NoScorableSequences,
    #[error("need at least {needed} scores, have {have}")]
    InsufficientScores { needed: usize, have: usize },
    #[error("non-finite descriptor {0:?}")]
    NonFiniteDescriptor([f64; 2]),
    #[error("not in MEME minimal motif format: {0}")]
    NotMemeFormat(String),
    #[error("malformed matrix in motif `{motif}` row {row}: {reason}")]
    MalformedMatrix {
        motif: String,
        row: usize,
        reason: String,
    },
    #[error("invalid motif name `{0}`")]
    InvalidName(String),
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParams { field: String, reason: String },
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParams {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 1 for usage/config problems, 2 for data problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidParams { .. } => 1,
            _ => 2,
        }
    }
}
