//! Exact commutative algebra over the Gaussian rationals.
//!
//! This crate is the computational substrate for the geometric checkers in
//! the workspace: reduced Groebner bases with a step budget, elimination
//! ideals, Krull dimension via staircase combinatorics, saturation at
//! coordinate units, and exact dense linear algebra. Everything here is
//! deterministic; no floating point enters any code path.

pub mod gauss;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod serial;

pub use gauss::GaussRat;
pub use ideal::{buchberger, Budget, IdealBasis};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use poly::Polynomial;
pub use rat::{rat_from_str, rat_to_string, Rat};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoreError {
    #[error("bad scalar: {0}")]
    BadScalar(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("computation budget exhausted")]
    ResourceExhausted,
    #[error("variable mismatch: {0}")]
    VarMismatch(String),
    #[error("serialization: {0}")]
    Serde(String),
}
