//! Finitely presented Gamma-field configurations.
//!
//! A configuration is a finite list of labeled coordinate pairs, a relation
//! ideal over their coordinates, and a lattice of rational combinations
//! declared to lie in the distinguished subgroup Gamma. On top of that this
//! crate computes the predimension delta = td - ldim, searches for
//! relative-closedness failures at bounded rank, blurs the graph of
//! exponentiation by a multiplicative subgroup, assembles subgroup
//! witnesses from numeric point data, and runs the pair check
//! "loc(a/C) x V is strongly rotund".
//!
//! Divisibility of Gamma cannot be stored finitely; a presentation carries
//! a `denominator_bound` instead and purity is checked only up to that
//! bound. Everything symbolic is exact; the witness assembly is the one
//! numeric entry point and records residuals.

pub mod axs;
pub mod blur;
pub mod closed;
pub mod hspec;
pub mod lattice;
pub mod locus;
pub mod predim;
pub mod present;

use algebra_core::CoreError;
use gamma_geometry::GeomError;
use relation_detect::RelError;

#[derive(thiserror::Error, Debug)]
pub enum ConfigError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    /// A bounded-denominator multiple of the point is declared but the
    /// point itself is not; the presentation is not pure at its bound.
    #[error("purity violated at point {index}: multiple {k} is declared but the point is not")]
    NotPure { index: usize, k: u32 },
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("unsupported blurring subgroup: {0}")]
    UnsupportedHSpec(String),
    #[error("tolerance unachievable: {0}")]
    ToleranceUnachievable(String),
    /// Reserved for varieties with coefficients outside the constants;
    /// unreachable while variety coefficients are Gaussian rationals.
    #[error("variety is not defined over the constants")]
    VNotOverConstants,
    #[error("bad input: {0}")]
    BadInput(String),
}

impl From<RelError> for ConfigError {
    fn from(e: RelError) -> Self {
        match e {
            RelError::PrecisionTooLow { digits, tol } => ConfigError::ToleranceUnachievable(
                format!("{digits} working digits cannot certify tolerance {tol:e}"),
            ),
            other => ConfigError::BadInput(other.to_string()),
        }
    }
}

pub use axs::{ax_schanuel_witness, SubgroupWitness};
pub use blur::{blur, split_blur_components};
pub use closed::{is_rel_gamma_closed, Closedness};
pub use hspec::{parse_constant_label, HSpec};
pub use lattice::{rational_rank, snf_rank, Lattice};
pub use locus::{locus_strong_rotund, locus_variety};
pub use predim::{predimension, PredimReport};
pub use present::GammaPresentation;
