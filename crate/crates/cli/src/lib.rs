//! Command-line surface over the periods, qde and monodromy crates, and exact
//! verification against the embedded golden corpus.

pub mod commands;
pub mod error;
pub mod golden;
pub mod source;
pub mod verify;

pub use commands::{cmd_analyze, cmd_period, cmd_qde, QdeOptions};
pub use error::CliError;
pub use verify::{parse_subset, verify, Outcome, Status, Suite, VerifyReport};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "QPERIOD_WORKERS";
/// Environment variable naming the toric weight file for the optional toric suite.
pub const WEIGHTS_ENV: &str = "QPERIOD_TORIC_WEIGHTS";

/// Size the global worker pool from the environment; ignored once the pool exists.
pub fn init_workers() -> Result<(), CliError> {
    let Ok(v) = std::env::var(WORKERS_ENV) else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("{WORKERS_ENV} must be a positive integer, got {v:?}")))?;
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
