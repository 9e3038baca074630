//! Exact truncated power series over Q(i), membership in the graph of the
//! exponential differential equation Dy = y Dx, solution construction,
//! and bounded empirical transcendence checks on tuples of graph points.

pub mod axs;
pub mod gamma;
pub mod series;

#[derive(thiserror::Error, Debug)]
pub enum EdeError {
    #[error("series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("constant must be nonzero")]
    ZeroConstant,
    #[error("series order mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("resolution too low: need order {needed}, have {have}")]
    ResolutionTooLow { needed: usize, have: usize },
    #[error("bad input: {0}")]
    BadInput(String),
}

pub use axs::{empirical_ax_schanuel, AxsOutcome};
pub use gamma::{in_gamma_de, make_gamma_point, DiffPoint};
pub use series::{exp_series, PowerSeries};
