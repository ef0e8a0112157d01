use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("malformed scenario file: {0}")]
    Parse(String),

    #[error("invalid field `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Model(#[from] weakcorr_core::Error),
}
