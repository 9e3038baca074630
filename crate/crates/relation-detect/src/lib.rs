//! Integer-relation detection over the complex numbers.
//!
//! The pipeline: evaluate inputs to high precision (`mp`), embed them into an
//! integer lattice and reduce it (`lll`), read candidate relations off the
//! transform matrix and verify each one by direct evaluation (`relations`),
//! and post-process single values into bounded-denominator combinations of
//! `1` and `2*pi*i` (`decompose`).

pub mod decompose;
pub mod lll;
pub mod mp;
pub mod relations;

pub use decompose::{decompose_over_basis, Decomposition};
pub use lll::{lll_reduce, LatticeBasis};
pub use mp::{to_f64, BigFloat, MpComplex, MpCtx};
pub use relations::{
    int_rank, integer_relation, multiplicative_relation, qlin_dim, relation_rows,
    relation_rows_mod_basis, RelationCandidate,
};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum RelError {
    /// The requested tolerance cannot be certified at the working precision.
    #[error("working precision of {digits} digits is too low for tolerance {tol:e}")]
    PrecisionTooLow { digits: usize, tol: f64 },
    /// Lattice rows were linearly dependent over Q.
    #[error("lattice basis rows are linearly dependent")]
    DependentRows,
    #[error("bad input: {0}")]
    BadInput(String),
}
