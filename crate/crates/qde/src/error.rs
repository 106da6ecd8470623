use thiserror::Error;

#[derive(Debug, Error)]
pub enum QdeError {
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("the zero series has no minimal annihilator")]
    ZeroSeries,
    #[error("annihilator of order {order} and degree {degree} is not unique: nullspace dimension {dimension}")]
    Ambiguous { order: usize, degree: usize, dimension: usize },
    #[error("order {order}, degree {degree}: modular solution did not lift to an exact annihilator")]
    LiftFailed { order: usize, degree: usize },
    #[error("operator file: {0}")]
    Format(String),
    #[error("operator file field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
