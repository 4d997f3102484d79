use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input: bad letters, bad sizes, bad files.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured bound was hit before the computation could finish.
    #[error("resource limit `{limit}` = {bound} exceeded: {detail}")]
    Resource {
        limit: &'static str,
        bound: u64,
        detail: String,
    },

    /// The completion engine and the closure oracle produced different monoids.
    #[error("engine disagreement: {0}")]
    EngineMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed structured text: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn resource(limit: &'static str, bound: u64, detail: impl Into<String>) -> Self {
        Error::Resource {
            limit,
            bound,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
