//! Decomposition of a complex number over the basis `{1, 2*pi*i}` with
//! bounded-denominator rational coefficients, via continued-fraction
//! convergents.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::mp::{to_bigint_floor, to_f64, MpComplex, MpCtx};
use crate::RelError;

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    /// Real coefficient p/q of the basis element 1.
    pub p: i64,
    pub q: i64,
    /// Coefficient r/s of the basis element 2*pi*i.
    pub r: i64,
    pub s: i64,
    /// |z - (p/q + (r/s)*2*pi*i)| as f64.
    pub error: f64,
}

/// The continued-fraction convergent of `x` with the largest denominator
/// not exceeding `qmax`. Deterministic; terminates when the residue is
/// exhausted at working precision.
pub fn cf_convergent(x: &BigFloat, qmax: u64, ctx: &mut MpCtx) -> (BigInt, BigInt) {
    let qmax = BigInt::from(qmax.max(1));
    let mut p_prev = BigInt::one();
    let mut q_prev = BigInt::zero();
    let mut p = to_bigint_floor(x);
    let mut q = BigInt::one();
    let a0 = p.clone();

    let a0f = big_to_float(&a0, ctx);
    let mut frac = ctx.sub(x, &a0f);
    // Stop expanding once the residue is below the precision floor.
    let floor_thresh = 10f64.powi(-((ctx.digits() as i32) - 4));
    loop {
        if ctx.abs_less_than(&frac, floor_thresh) {
            break;
        }
        let one = ctx.from_f64(1.0);
        let inv = ctx.div(&one, &frac);
        let a = to_bigint_floor(&inv);
        let af = big_to_float(&a, ctx);
        frac = ctx.sub(&inv, &af);

        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        if q_next > qmax {
            break;
        }
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    (p, q)
}

fn big_to_float(n: &BigInt, ctx: &mut MpCtx) -> BigFloat {
    // Integers of interest stay well within the working precision.
    let s = n.to_string();
    ctx.parse_real(&s).expect("integer literal parses")
}

/// Writes `z ~ p/q + (r/s) * 2*pi*i` with denominators bounded by `qmax`,
/// or returns `None` when the best such approximation misses by more than
/// `tol`.
pub fn decompose_over_basis(
    z: &MpComplex,
    qmax: u64,
    tol: f64,
    ctx: &mut MpCtx,
) -> Result<Option<Decomposition>, RelError> {
    if !(tol > 0.0) {
        return Err(RelError::BadInput("tolerance must be positive".into()));
    }
    let (p, q) = cf_convergent(&z.re, qmax, ctx);
    let two_pi = ctx.two_pi();
    let ratio = ctx.div(&z.im, &two_pi);
    let (r, s) = cf_convergent(&ratio, qmax, ctx);

    let approx_re = rational_to_float(&p, &q, ctx);
    let rs = rational_to_float(&r, &s, ctx);
    let approx_im = ctx.mul(&rs, &two_pi);
    let diff = MpComplex {
        re: ctx.sub(&z.re, &approx_re),
        im: ctx.sub(&z.im, &approx_im),
    };
    let err_mp = diff.abs(ctx);
    let error = to_f64(&err_mp);

    let (Some(p), Some(q), Some(r), Some(s)) = (
        to_i64(&p),
        to_i64(&q),
        to_i64(&r),
        to_i64(&s),
    ) else {
        return Err(RelError::BadInput("decomposition overflow".into()));
    };

    if !(error <= tol) {
        return Ok(None);
    }
    Ok(Some(Decomposition { p, q, r, s, error }))
}

fn rational_to_float(p: &BigInt, q: &BigInt, ctx: &mut MpCtx) -> BigFloat {
    let pf = big_to_float(p, ctx);
    let qf = big_to_float(q, ctx);
    ctx.div(&pf, &qf)
}

fn to_i64(n: &BigInt) -> Option<i64> {
    use num_traits::ToPrimitive;
    let v = n.to_i64()?;
    Some(v)
}

/// Best rational approximation oracle used by tests: exhaustive over all
/// denominators up to `qmax`.
pub fn brute_force_best(x: f64, qmax: u64) -> (i64, i64) {
    let mut best = (x.round() as i64, 1i64);
    let mut best_err = (x - best.0 as f64).abs();
    for q in 1..=qmax as i64 {
        let p = (x * q as f64).round() as i64;
        let err = (x - p as f64 / q as f64).abs();
        if err + 1e-18 < best_err {
            best = (p, q);
            best_err = err;
        }
    }
    let g = num_integer::gcd(best.0, best.1);
    (best.0 / g, best.1 / g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_inputs_decompose_exactly() {
        let mut ctx = MpCtx::new(40);
        let z = MpComplex::from_f64(&ctx, 0.5, 0.0);
        let d = decompose_over_basis(&z, 10, 1e-12, &mut ctx)
            .unwrap()
            .unwrap();
        assert_eq!((d.p, d.q, d.r, d.s), (1, 2, 0, 1));
        assert!(d.error < 1e-30);
    }

    #[test]
    fn pure_angular_part() {
        let mut ctx = MpCtx::new(40);
        // 2*pi*i * 3/4
        let two_pi = ctx.two_pi();
        let f = ctx.from_f64(0.75);
        let im = ctx.mul(&two_pi, &f);
        let z = MpComplex { re: ctx.zero(), im };
        let d = decompose_over_basis(&z, 10, 1e-12, &mut ctx)
            .unwrap()
            .unwrap();
        assert_eq!((d.p, d.q, d.r, d.s), (0, 1, 3, 4));
    }

    #[test]
    fn mixed_decomposition() {
        let mut ctx = MpCtx::new(40);
        // 1/2 + pi*i = 1/2 + (1/2) * 2*pi*i
        let pi = ctx.pi();
        let z = MpComplex {
            re: ctx.from_f64(0.5),
            im: pi,
        };
        let d = decompose_over_basis(&z, 10, 1e-12, &mut ctx)
            .unwrap()
            .unwrap();
        assert_eq!((d.p, d.q, d.r, d.s), (1, 2, 1, 2));
    }

    #[test]
    fn ln2_best_denominator_bounded_approximation() {
        let mut ctx = MpCtx::new(40);
        let two = ctx.from_f64(2.0);
        let l = ctx.ln(&two);
        let (p, q) = cf_convergent(&l, 10, &mut ctx);
        // convergents of ln 2: 0/1, 1/1, 2/3, 7/10, 9/13, ...
        assert_eq!((p, q), (BigInt::from(7), BigInt::from(10)));
        // agreement with the exhaustive oracle
        assert_eq!(brute_force_best(std::f64::consts::LN_2, 10), (7, 10));
    }

    #[test]
    fn negative_values_use_floor_correctly() {
        let mut ctx = MpCtx::new(40);
        let x = ctx.from_f64(-1.25);
        let (p, q) = cf_convergent(&x, 10, &mut ctx);
        assert_eq!((p, q), (BigInt::from(-5), BigInt::from(4)));
    }

    #[test]
    fn misses_are_reported_as_none() {
        let mut ctx = MpCtx::new(40);
        // pi is far from any small-denominator rational
        let z = MpComplex {
            re: ctx.pi(),
            im: ctx.zero(),
        };
        let d = decompose_over_basis(&z, 5, 1e-9, &mut ctx).unwrap();
        assert!(d.is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn round_trips_planted_rationals(
            p in -40i64..40, q in 1i64..12, r in -40i64..40, s in 1i64..12
        ) {
            let mut ctx = MpCtx::new(40);
            let pf = ctx.from_f64(p as f64);
            let qf = ctx.from_f64(q as f64);
            let re = ctx.div(&pf, &qf);
            let two_pi = ctx.two_pi();
            let rf = ctx.from_f64(r as f64);
            let sf = ctx.from_f64(s as f64);
            let rs = ctx.div(&rf, &sf);
            let im = ctx.mul(&two_pi, &rs);
            let z = MpComplex { re, im };
            let d = decompose_over_basis(&z, 12, 1e-12, &mut ctx).unwrap().unwrap();
            let g = num_integer::gcd(p, q);
            prop_assert_eq!(d.p, p / g);
            prop_assert_eq!(d.q, q / g);
            let g = num_integer::gcd(r, s);
            prop_assert_eq!(d.r, r / g);
            prop_assert_eq!(d.s, s / g);
        }
    }
}
