//! Quantum periods G_X(t) = Σ c_d t^d of Fano manifolds.
//!
//! Evaluators cover toric varieties, toric complete intersections, complete
//! intersections in weighted projective space, products, the printed closed-form
//! sums (with harmonic-number corrections), Vandermonde-coefficient extractions and
//! the Strangeway family. Builtins are looked up by name, e.g. `"MW4_11"`.

mod catalog;
mod closed;
mod error;
mod flag;
pub mod modeval;
mod spec_io;
mod strangeway;
mod toric;
mod wps;

pub use catalog::{
    builtin_names, cross_check, fano_index, kernel_for, period_closed_form, period_product, period_structural,
    resolve, structural_spec, ManifoldSpec, TABLE_NAMES,
};
pub use closed::harmonic;
pub use error::PeriodError;
pub use flag::{flag_exact, period_flag_extraction};
pub use spec_io::spec_from_toml;
pub use strangeway::{mm2_17_identity, period_strangeway, strangeway_c};
pub use toric::{enumerate_beta, period_toric, period_toric_ci, BetaPoint, BundleData, ToricData};
pub use wps::{period_wps_ci, WpsCiData};
