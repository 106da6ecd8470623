use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    Parse(String),
    #[error("minimal polynomial must be monic of degree >= 1")]
    BadMinimalPolynomial,
    #[error("elements belong to different number fields")]
    FieldMismatch,
}
