//! Local analysis of a Fuchsian operator L = Σ p_k(t) D^k: singular points over Q,
//! localization to θ-form, exponents, Frobenius solutions with logarithms, the Jordan
//! form of (log T_s)/2πi at each point, and the ramification defect rf - 2N.

mod error;
mod frobenius;
mod linalg;
mod points;
mod ramification;

pub use error::MonodromyError;
pub use frobenius::{frobenius_basis, residual_vanishes, FrobeniusSolution};
pub use points::{is_fuchsian, localize, singular_points, FuchsianReport, PointKind, SingularPoint, ThetaForm};
pub use ramification::{
    galois_spot_check, local_log_monodromy, ramification, LocalMonodromy, PointContribution, RamificationReport,
};
