use monodromy::MonodromyError;
use periods::PeriodError;
use qde::QdeError;
use series::SeriesError;
use thiserror::Error;

/// Failures, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Input(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PeriodError> for CliError {
    fn from(e: PeriodError) -> Self {
        match e {
            PeriodError::NoConvergence(_) => CliError::Unsupported(e.to_string()),
            PeriodError::Antisymmetry(_) | PeriodError::CrossCheck(..) => CliError::Mismatch(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<QdeError> for CliError {
    fn from(e: QdeError) -> Self {
        match e {
            QdeError::Ambiguous { .. } | QdeError::LiftFailed { .. } => CliError::Unsupported(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<MonodromyError> for CliError {
    fn from(e: MonodromyError) -> Self {
        match e {
            MonodromyError::Internal(_) => CliError::Mismatch(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}
