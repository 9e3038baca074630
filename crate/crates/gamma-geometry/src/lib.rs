//! Geometry of subvarieties of G^n = (Ga x Gm)^n: the integer-matrix
//! action, rotundity and freeness verdicts, fibre-dimension checks over
//! tangent bundles of multiplicative subgroups, and seeded numeric
//! sampling of points.
//!
//! All symbolic verdicts are exact (Groebner-based, over Q(i)); where a
//! property quantifies over all integer matrices or exponent vectors, the
//! verdict carries the enumeration bound it was established up to.

pub mod fibre;
pub mod freeness;
pub mod intmat;
pub mod rotund;
pub mod sample;
pub mod variety;

use algebra_core::CoreError;

#[derive(thiserror::Error, Debug)]
pub enum GeomError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("malformed variety: {0}")]
    MalformedVariety(String),
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("sampling failed: {0}")]
    SamplingFailed(String),
    #[error("bad input: {0}")]
    BadInput(String),
}

pub use fibre::{fibre_dim_check, FibreReport};
pub use freeness::{
    additive_brute_force, is_additively_free, is_free, is_multiplicatively_free,
    AdditiveFreeness, FreenessVerdict, MultiplicativeFreeness,
};
pub use intmat::IntMat;
pub use rotund::{
    is_rotund, is_rotund_brute_force, is_strongly_rotund, rowspace_representatives,
    RotundityVerdict,
};
pub use sample::{eval_poly, newton_refine, sample_points, CPoint, NumericSystem, Slice};
pub use variety::{dim_image, g_vars, GPoint, GSubvariety};
