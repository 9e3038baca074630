//! Helpers for exact rational scalars.
//!
//! `Rat` is a reduced big rational with positive denominator (the invariants
//! are maintained by `num-rational` itself). All interchange formats carry
//! rationals as `"p/q"` strings, never as floats, so parsing and printing
//! live here next to the type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

use crate::CoreError;

/// Parses `"p"`, `"-p"` or `"p/q"` into a reduced rational.
///
/// Decimal points are rejected on purpose: every exact interface of this
/// workspace forbids float literals.
pub fn rat_from_str(s: &str) -> Result<Rat, CoreError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(CoreError::BadScalar("empty rational literal".into()));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(CoreError::BadScalar(format!(
            "float-looking literal {s:?}; exact rationals must be written p/q"
        )));
    }
    let mut parts = s.splitn(2, '/');
    let num = parts.next().unwrap().trim();
    let num: BigInt = num
        .parse()
        .map_err(|_| CoreError::BadScalar(format!("bad integer {num:?}")))?;
    let den: BigInt = match parts.next() {
        None => BigInt::one(),
        Some(d) => {
            let d = d.trim();
            d.parse()
                .map_err(|_| CoreError::BadScalar(format!("bad denominator {d:?}")))?
        }
    };
    if den.is_zero() {
        return Err(CoreError::BadScalar(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Prints a rational as `"p"` or `"p/q"`, matching the interchange format.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn common_denominator(rs: &[Rat]) -> BigInt {
    let mut lcm = BigInt::one();
    for r in rs {
        lcm = num_integer::lcm(lcm, r.denom().abs());
    }
    lcm
}
