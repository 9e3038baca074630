//! Numerical witness search: certified points of Γ_H^n ∩ V for a rotund,
//! free subvariety V of G^n and a dense blur group H.
//!
//! The pipeline finds a regular point of V, checks that the tangent space of
//! V meets the tangent space of the θ-fiber through it trivially (θ(x, y) =
//! y·exp(-x) componentwise), approximates θ at the point inside H with
//! bounded-denominator exponents, and runs a damped Gauss-Newton iteration
//! on the combined system {V equations, y_i - h_i·exp(x_i)}. Reports carry
//! both residuals and replay deterministically from (V, H, seed, tol, Qmax).

use gamma_config::ConfigError;
use gamma_geometry::GeomError;
use thiserror::Error;

mod approx;
mod regular;
mod verify;
mod witness;

pub use approx::{approximate_in_h, best_rational};
pub use regular::{check_fiber_transversality, find_regular_point};
pub use verify::{verify_witness, VERIFY_DIGITS};
pub use witness::{find_witness, WitnessReport, MAX_SLICINGS, STARTS_PER_SLICING};

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("no sample converged after {0} restarts")]
    MaxRestartsExceeded(u32),
    #[error("every converged sample failed the regularity rank test")]
    SingularLocusOnly,
    #[error("requested precision unreachable: best error {best:e} at denominator bound {qmax}")]
    PrecisionUnreachable { best: f64, qmax: u64 },
    #[error("newton iteration diverged on the witness system")]
    NewtonDiverged,
    #[error("no transversal regular point found; the variety is likely not rotund")]
    NoTransversalPoint,
    #[error("bad input: {0}")]
    BadInput(String),
}
