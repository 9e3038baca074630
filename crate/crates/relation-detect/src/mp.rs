//! Multiprecision real and complex arithmetic used by the relation finders
//! and the high-precision verification paths.
//!
//! Thin wrappers over `astro-float`: a context object carries the working
//! precision (requested in decimal digits, stored in bits with guard room)
//! and the shared constants cache.

pub use astro_float::BigFloat;

use astro_float::{Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::RelError;

const LOG2_10: f64 = 3.321928094887362;

pub struct MpCtx {
    digits: usize,
    prec: usize,
    rm: RoundingMode,
    cc: Consts,
}

impl MpCtx {
    /// A context carrying `digits` decimal digits of working precision.
    pub fn new(digits: usize) -> Self {
        let digits = digits.max(16);
        let prec = (digits as f64 * LOG2_10).ceil() as usize + 64;
        MpCtx {
            digits,
            prec,
            rm: RoundingMode::ToEven,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn prec_bits(&self) -> usize {
        self.prec
    }

    /// Parses a decimal string (float syntax allowed here: these are the
    /// numeric inputs, not the exact ones).
    pub fn parse_real(&mut self, s: &str) -> Result<BigFloat, RelError> {
        let s = s.trim();
        if s.is_empty()
            || !s
                .chars()
                .all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
        {
            return Err(RelError::BadInput(format!("bad decimal literal {s:?}")));
        }
        let v = BigFloat::parse(s, Radix::Dec, self.prec, self.rm, &mut self.cc);
        if v.is_nan() {
            return Err(RelError::BadInput(format!("unparseable number {s:?}")));
        }
        Ok(v)
    }

    pub fn from_f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.prec)
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_f64(0.0, self.prec)
    }

    pub fn add(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, self.rm)
    }

    pub fn sub(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, self.rm)
    }

    pub fn mul(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, self.rm)
    }

    pub fn div(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, self.rm)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.prec, self.rm, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.prec, self.rm, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.prec, self.rm, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.prec, self.rm, &mut self.cc)
    }

    pub fn sqrt(&mut self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, self.rm)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, self.rm)
    }

    pub fn two_pi(&mut self) -> BigFloat {
        let pi = self.pi();
        let two = self.from_f64(2.0);
        self.mul(&pi, &two)
    }

    /// Principal-value atan2 built from atan plus quadrant corrections.
    pub fn atan2(&mut self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        if x.is_zero() && y.is_zero() {
            return self.zero();
        }
        if x.is_zero() {
            let pi = self.pi();
            let two = self.from_f64(2.0);
            let half_pi = self.div(&pi, &two);
            return if y.is_negative() { half_pi.neg() } else { half_pi };
        }
        let ratio = self.div(y, x);
        let base = ratio.atan(self.prec, self.rm, &mut self.cc);
        if x.is_negative() {
            let pi = self.pi();
            if y.is_negative() {
                self.sub(&base, &pi)
            } else {
                self.add(&base, &pi)
            }
        } else {
            base
        }
    }

    /// Compares |a| with a small positive threshold given as f64.
    pub fn abs_less_than(&mut self, a: &BigFloat, thresh: f64) -> bool {
        let t = self.from_f64(thresh);
        match a.abs().cmp(&t) {
            Some(c) => c < 0,
            None => false,
        }
    }
}

/// Extracts the top 64 mantissa bits to convert to f64. Saturates on
/// overflow; NaN maps to NaN.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let (m, _n, s, e, _inexact) = x.as_raw_parts().expect("finite float has raw parts");
    let top = *m.last().unwrap();
    let next = if m.len() > 1 { m[m.len() - 2] } else { 0 };
    let frac = (top as f64) + (next as f64) / 18446744073709551616.0;
    let val = frac * 2f64.powi(e - 64);
    if s.is_negative() {
        -val
    } else {
        val
    }
}

fn mantissa_bigint(words: &[astro_float::Word]) -> BigInt {
    let mut m = BigInt::zero();
    for w in words.iter().rev() {
        m = (m << 64) + BigInt::from(*w);
    }
    m
}

/// Rounds to the nearest integer (ties away from zero).
pub fn to_bigint_rounded(x: &BigFloat) -> BigInt {
    let Some((words, nbits, s, e, _)) = x.as_raw_parts() else {
        return BigInt::zero();
    };
    if x.is_zero() {
        return BigInt::zero();
    }
    let m = mantissa_bigint(words);
    let shift = e as i64 - nbits as i64;
    let v = if shift >= 0 {
        m << shift
    } else {
        let sh = (-shift) as u64;
        if sh > (nbits as u64) + 2 {
            BigInt::zero()
        } else {
            let half = BigInt::one() << (sh - 1);
            (m + half) >> sh
        }
    };
    if s.is_negative() {
        -v
    } else {
        v
    }
}

/// Floor to an integer.
pub fn to_bigint_floor(x: &BigFloat) -> BigInt {
    let Some((words, nbits, s, e, _)) = x.as_raw_parts() else {
        return BigInt::zero();
    };
    if x.is_zero() {
        return BigInt::zero();
    }
    let m = mantissa_bigint(words);
    let shift = e as i64 - nbits as i64;
    if shift >= 0 {
        let v = m << shift;
        return if s.is_negative() { -v } else { v };
    }
    let sh = (-shift) as u64;
    if sh >= (nbits as u64) + 64 {
        return if s.is_negative() {
            -BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let trunc = &m >> sh;
    let exact = (&trunc << sh) == m;
    if s.is_negative() {
        if exact {
            -trunc
        } else {
            -trunc - 1
        }
    } else {
        trunc
    }
}

#[derive(Clone, Debug)]
pub struct MpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpComplex {
    pub fn from_f64(ctx: &MpCtx, re: f64, im: f64) -> Self {
        MpComplex {
            re: ctx.from_f64(re),
            im: ctx.from_f64(im),
        }
    }

    pub fn parse(ctx: &mut MpCtx, re: &str, im: &str) -> Result<Self, RelError> {
        Ok(MpComplex {
            re: ctx.parse_real(re)?,
            im: ctx.parse_real(im)?,
        })
    }

    pub fn zero(ctx: &MpCtx) -> Self {
        MpComplex {
            re: ctx.zero(),
            im: ctx.zero(),
        }
    }

    pub fn one(ctx: &MpCtx) -> Self {
        MpComplex::from_f64(ctx, 1.0, 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &MpComplex, ctx: &mut MpCtx) -> MpComplex {
        MpComplex {
            re: ctx.add(&self.re, &o.re),
            im: ctx.add(&self.im, &o.im),
        }
    }

    pub fn sub(&self, o: &MpComplex, ctx: &mut MpCtx) -> MpComplex {
        MpComplex {
            re: ctx.sub(&self.re, &o.re),
            im: ctx.sub(&self.im, &o.im),
        }
    }

    pub fn mul(&self, o: &MpComplex, ctx: &mut MpCtx) -> MpComplex {
        let ac = ctx.mul(&self.re, &o.re);
        let bd = ctx.mul(&self.im, &o.im);
        let ad = ctx.mul(&self.re, &o.im);
        let bc = ctx.mul(&self.im, &o.re);
        MpComplex {
            re: ctx.sub(&ac, &bd),
            im: ctx.add(&ad, &bc),
        }
    }

    pub fn scale_int(&self, k: i64, ctx: &mut MpCtx) -> MpComplex {
        let k = ctx.from_f64(k as f64);
        MpComplex {
            re: ctx.mul(&self.re, &k),
            im: ctx.mul(&self.im, &k),
        }
    }

    pub fn inv(&self, ctx: &mut MpCtx) -> MpComplex {
        let n = self.abs_sq(ctx);
        let re = ctx.div(&self.re, &n);
        let im = ctx.div(&self.im, &n);
        MpComplex { re, im: im.neg() }
    }

    pub fn abs_sq(&self, ctx: &mut MpCtx) -> BigFloat {
        let a = ctx.mul(&self.re, &self.re);
        let b = ctx.mul(&self.im, &self.im);
        ctx.add(&a, &b)
    }

    pub fn abs(&self, ctx: &mut MpCtx) -> BigFloat {
        let s = self.abs_sq(ctx);
        ctx.sqrt(&s)
    }

    /// Principal branch logarithm: `ln|z| + i·atan2(im, re)`.
    pub fn ln_principal(&self, ctx: &mut MpCtx) -> MpComplex {
        let abs2 = self.abs_sq(ctx);
        let l = ctx.ln(&abs2);
        let half = ctx.from_f64(0.5);
        MpComplex {
            re: ctx.mul(&l, &half),
            im: ctx.atan2(&self.im, &self.re),
        }
    }

    pub fn exp(&self, ctx: &mut MpCtx) -> MpComplex {
        let r = ctx.exp(&self.re);
        let c = ctx.cos(&self.im);
        let s = ctx.sin(&self.im);
        MpComplex {
            re: ctx.mul(&r, &c),
            im: ctx.mul(&r, &s),
        }
    }

    /// Integer power by binary exponentiation; negative powers invert.
    pub fn powi(&self, k: i64, ctx: &mut MpCtx) -> MpComplex {
        if k == 0 {
            return MpComplex::one(ctx);
        }
        let mut base = if k < 0 { self.inv(ctx) } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = MpComplex::one(ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            base = base.mul(&base, ctx);
            e >>= 1;
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }
}
