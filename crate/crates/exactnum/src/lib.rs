//! Exact arithmetic: rationals, univariate polynomials over Q, factorization over Q,
//! number fields and word-size modular arithmetic.

pub mod error;
pub mod factor;
pub mod field;
pub mod modular;
pub mod poly;
pub mod rational;

pub use error::ExactError;
pub use factor::{factor_over_q, rational_roots, Factorization};
pub use field::{rational_roots_over_nf, NFElement, NFPoly, NumberField};
pub use poly::UniPoly;
pub use rational::{format_rational, int, parse_integer, parse_rational, rat, BigRational};

pub use num_bigint::BigInt;
