use thiserror::Error;

#[derive(Debug, Error)]
pub enum MonodromyError {
    #[error("operator is not Fuchsian: irregular singularity at {0}")]
    NotFuchsian(String),
    #[error("unsupported: irrational exponents at {point}; indicial polynomial {indicial}")]
    IrrationalExponents { point: String, indicial: String },
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Exact(#[from] exactnum::ExactError),
}
