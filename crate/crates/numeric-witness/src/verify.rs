//! Independent recheck of witness reports in software extended precision.

use algebra_core::{GaussRat, Polynomial, Rat};
use gamma_config::HSpec;
use gamma_geometry::GSubvariety;
use num_bigint::BigInt;
use num_traits::Zero;
use relation_detect::{BigFloat, MpComplex, MpCtx};

use crate::witness::WitnessReport;

/// Digits used for the recheck; three times what the f64 search can carry.
pub const VERIFY_DIGITS: usize = 48;

fn rat_to_bf(r: &Rat, ctx: &mut MpCtx) -> BigFloat {
    let n = ctx
        .parse_real(&r.numer().to_string())
        .expect("integer literal");
    let d = ctx
        .parse_real(&r.denom().to_string())
        .expect("integer literal");
    ctx.div(&n, &d)
}

fn gauss_to_mp(c: &GaussRat, ctx: &mut MpCtx) -> MpComplex {
    MpComplex {
        re: rat_to_bf(&c.re, ctx),
        im: rat_to_bf(&c.im, ctx),
    }
}

fn eval_poly_mp(p: &Polynomial, z: &[MpComplex], ctx: &mut MpCtx) -> MpComplex {
    let mut acc = MpComplex::zero(ctx);
    for (m, c) in p.terms() {
        let mut w = gauss_to_mp(c, ctx);
        for (v, e) in m.iter() {
            let pow = z[v].powi(e as i64, ctx);
            w = w.mul(&pow, ctx);
        }
        acc = acc.add(&w, ctx);
    }
    acc
}

/// Recomputes both residuals from scratch at `VERIFY_DIGITS` digits and
/// checks the structural invariants (denominator bound, blur-group shape).
/// True iff everything is consistent and both residuals stay below 10·tol.
pub fn verify_witness(r: &WitnessReport, v: &GSubvariety, h: &HSpec) -> bool {
    let n = v.n();
    if r.point.n() != n || r.h_exponents.len() != n {
        return false;
    }
    if !(r.tol > 0.0) || r.qmax == 0 {
        return false;
    }
    let coords = r.point.coords();
    if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return false;
    }
    if r.point.y.iter().any(|y| y.norm() == 0.0) {
        return false;
    }
    let qmax = BigInt::from(r.qmax);
    for (p, t) in &r.h_exponents {
        if p.denom() > &qmax || t.denom() > &qmax {
            return false;
        }
    }
    match h {
        HSpec::Trivial => {
            if r.h_exponents.iter().any(|(p, t)| !p.is_zero() || !t.is_zero()) {
                return false;
            }
        }
        HSpec::LatticeExp(_) => {
            if h.basis_values().is_err() {
                return false;
            }
        }
        _ => return false,
    }

    let mut ctx = MpCtx::new(VERIFY_DIGITS);
    let z: Vec<MpComplex> = coords
        .iter()
        .map(|c| MpComplex::from_f64(&ctx, c.re, c.im))
        .collect();
    let bound = 10.0 * r.tol;
    for gen in v.ideal().gens() {
        let val = eval_poly_mp(gen, &z, &mut ctx);
        let abs = val.abs(&mut ctx);
        if !ctx.abs_less_than(&abs, bound) {
            return false;
        }
    }
    let two_pi = ctx.two_pi();
    for i in 0..n {
        let (p, t) = &r.h_exponents[i];
        let log_h = MpComplex {
            re: rat_to_bf(p, &mut ctx),
            im: {
                let tau = rat_to_bf(t, &mut ctx);
                ctx.mul(&tau, &two_pi)
            },
        };
        let w = z[i].add(&log_h, &mut ctx).exp(&mut ctx);
        let diff = z[n + i].sub(&w, &mut ctx);
        let abs = diff.abs(&mut ctx);
        if !ctx.abs_less_than(&abs, bound) {
            return false;
        }
    }
    true
}
