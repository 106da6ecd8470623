use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("series must start with constant term 1, found {0}")]
    NotNormalized(String),
    #[error("series file: {0}")]
    Format(String),
    #[error("series file field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
