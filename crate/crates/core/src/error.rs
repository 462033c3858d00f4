use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("missing field `{0}`")]
    MissingField(String),

    #[error("bad timestamp: {0}")]
    BadTimestamp(String),

    #[error("bad value for field `{field}`: {reason}")]
    BadField { field: String, reason: String },

    #[error("not an absolute http(s) url: {0}")]
    NotAUrl(String),

    #[error("bad window: window_len and stride must be positive and stride <= window_len (got window_len={window_len}, stride={stride})")]
    BadWindow { window_len: i64, stride: i64 },

    #[error("empty text: no shingles to sign")]
    EmptyText,

    #[error("degenerate labels: calibration needs both classes (positives={positives}, negatives={negatives})")]
    DegenerateLabels { positives: usize, negatives: usize },

    #[error("bad scenario config: {0}")]
    BadConfig(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("stage `{stage}` failed: {message}")]
    Stage { stage: String, message: String },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn stage(stage: impl Into<String>, message: impl std::fmt::Display) -> Self {
        Error::Stage {
            stage: stage.into(),
            message: message.to_string(),
        }
    }
}
