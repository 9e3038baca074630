//! Gaussian rationals `a + b*i` with `a, b` exact rationals.
//!
//! This is the coefficient field for every ideal computation in the
//! workspace: large enough to express the constants that occur in the
//! geometric checkers (torsion constants, i-multiples), small enough to stay
//! exact.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::rat::{rat_from_str, rat_to_string, Rat};
use crate::CoreError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(crate::rat::rat_int(n), Rat::zero())
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat::new(re, Rat::zero())
    }

    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Squared absolute value `a^2 + b^2`, a rational.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, CoreError> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Parses the two-string form `["a/b", "c/d"]` used on the wire.
    pub fn from_str_pair(re: &str, im: &str) -> Result<Self, CoreError> {
        Ok(GaussRat::new(rat_from_str(re)?, rat_from_str(im)?))
    }

    pub fn to_str_pair(&self) -> (String, String) {
        (rat_to_string(&self.re), rat_to_string(&self.im))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::new(Rat::zero(), Rat::zero())
    }
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::new(Rat::one(), Rat::zero())
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = (&*self).mul(rhs);
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: GaussRat) -> GaussRat {
        (&self).mul(&rhs.inv().expect("division by zero GaussRat"))
    }
}

impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self.mul(&rhs.inv().expect("division by zero GaussRat"))
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rat_to_string(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", rat_to_string(&self.im));
        }
        if self.im.is_positive() {
            write!(
                f,
                "{}+{}*i",
                rat_to_string(&self.re),
                rat_to_string(&self.im)
            )
        } else {
            write!(
                f,
                "{}{}*i",
                rat_to_string(&self.re),
                rat_to_string(&self.im)
            )
        }
    }
}
