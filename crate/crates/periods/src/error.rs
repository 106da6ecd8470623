use thiserror::Error;

#[derive(Debug, Error)]
pub enum PeriodError {
    #[error("invalid toric data: {0}")]
    InvalidToric(String),
    #[error("not Fano: degree functional is not positive on the effective cone (ray {0:?})")]
    NotFano(Vec<i64>),
    #[error("bundle not nef: pairing of line bundle {bundle} with {beta:?} is negative")]
    BundleNotNef { bundle: usize, beta: Vec<i64> },
    #[error("invalid weighted projective data: {0}")]
    InvalidWps(String),
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("antisymmetry check failed at t-degree {0}")]
    Antisymmetry(usize),
    #[error("modular evaluation did not stabilize after {0} primes")]
    NoConvergence(usize),
    #[error("series normalization: {0}")]
    Series(#[from] series::SeriesError),
    #[error("manifold description: {0}")]
    Spec(String),
    #[error("closed form and structural evaluations of {0} disagree at degree {1}")]
    CrossCheck(String, usize),
}
