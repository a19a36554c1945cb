use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown function id `{0}`")]
    UnknownFunction(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("corpus self-check failed for `{id}`: {reason}")]
    SelfCheck { id: String, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("failed to parse `{input}` as a rational: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("i/o error on `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
