//! Operators L = Σ_k p_k(t) D^k with D = t·d/dt, their action on truncated series, and
//! recovery of the minimal annihilating operator of a series.

mod error;
mod io;
mod operator;
mod reconstruct;

pub use error::QdeError;
pub use io::{operator_from_toml, operator_to_toml, read_operator, write_operator};
pub use operator::{equal_up_to_scalar, DiffOperator};
pub use reconstruct::{modular_nullity, reconstruct, Reconstruction, DEFAULT_MARGIN};
