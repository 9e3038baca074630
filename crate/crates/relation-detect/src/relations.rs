//! Integer-relation detection on multiprecision complex inputs.
//!
//! The search lattice augments the identity with a scaled copy of the real
//! and imaginary parts of the inputs; LLL then surfaces integer
//! combinations that nearly vanish. Every candidate is re-verified by
//! direct multiprecision evaluation before it is reported, so a returned
//! relation is always numerically confirmed at the stated tolerance.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::lll::lll_reduce;
use crate::mp::{to_bigint_rounded, to_f64, MpComplex, MpCtx};
use crate::RelError;

#[derive(Clone, Debug, Serialize)]
pub struct RelationCandidate {
    /// Integer coefficients of the relation (one per input value).
    pub coefficients: Vec<i64>,
    /// Multiprecision residual of the verified relation, as f64.
    pub residual: f64,
    /// Decimal scaling exponent used to build the search lattice.
    pub scale_digits: usize,
    /// Coefficient bound the search was run with.
    pub bound: i64,
}

/// Minimum margin, in decimal digits, that the working precision must keep
/// above the requested tolerance.
const GUARD_DIGITS: usize = 8;

fn check_precision(tol: f64, ctx: &MpCtx) -> Result<(), RelError> {
    if !(tol > 0.0) {
        return Err(RelError::BadInput("tolerance must be positive".into()));
    }
    let needed = -tol.log10() + GUARD_DIGITS as f64;
    if (ctx.digits() as f64) < needed {
        return Err(RelError::PrecisionTooLow {
            digits: ctx.digits(),
            tol,
        });
    }
    Ok(())
}

/// Searches for integer vectors `m` with `sum m_i * xs_i ~ 0`.
///
/// Only the first `required` coordinates are subject to `bound` and at
/// least one of them must be nonzero; trailing coordinates (auxiliary
/// columns such as a 2*pi*i entry) are unconstrained. Candidate rows from
/// the reduced lattice are verified by direct evaluation; rows failing
/// verification are skipped. Deterministic: rows are tried in order of
/// (norm, lexicographic) and the first confirmed relation wins.
pub fn relation_rows(
    xs: &[MpComplex],
    required: usize,
    bound: i64,
    tol: f64,
    ctx: &mut MpCtx,
) -> Result<Vec<Vec<i64>>, RelError> {
    let n = xs.len();
    if n == 0 || required == 0 || required > n {
        return Err(RelError::BadInput("empty relation problem".into()));
    }
    if bound <= 0 {
        return Err(RelError::BadInput("bound must be positive".into()));
    }
    check_precision(tol, ctx)?;

    let scale_digits = ctx.digits().saturating_sub(5);
    let scale = ctx.parse_real(&format!("1e{scale_digits}"))?;

    let any_imag = xs.iter().any(|z| !z.im.is_zero());
    let extra = if any_imag { 2 } else { 1 };
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (i, z) in xs.iter().enumerate() {
        let mut row = vec![BigInt::zero(); n + extra];
        row[i] = BigInt::from(1);
        let sre = ctx.mul(&z.re, &scale);
        row[n] = to_bigint_rounded(&sre);
        if any_imag {
            let sim = ctx.mul(&z.im, &scale);
            row[n + 1] = to_bigint_rounded(&sim);
        }
        rows.push(row);
    }

    let reduced = lll_reduce(&rows, (99, 100))?;

    // Sort candidate rows by norm then lexicographically for determinism.
    let mut order: Vec<usize> = (0..reduced.rows.len()).collect();
    let norm = |r: &Vec<BigInt>| -> BigInt { r.iter().map(|x| x * x).sum() };
    order.sort_by(|&a, &b| {
        norm(&reduced.rows[a])
            .cmp(&norm(&reduced.rows[b]))
            .then_with(|| reduced.rows[a].cmp(&reduced.rows[b]))
    });

    let mut found: Vec<Vec<i64>> = Vec::new();
    for idx in order {
        // The first n transform entries are the integer combination applied
        // to the inputs.
        let m = &reduced.transform[idx];
        let head = &m[..required];
        if head.iter().all(|x| x.is_zero()) {
            continue;
        }
        if head.iter().any(|x| x.abs() > BigInt::from(bound)) {
            continue;
        }
        let Some(m64) = m
            .iter()
            .map(|x| x.to_i64())
            .collect::<Option<Vec<i64>>>()
        else {
            continue;
        };
        // verify by direct evaluation
        let mut acc = MpComplex::zero(ctx);
        for (k, z) in xs.iter().enumerate() {
            if m64[k] != 0 {
                let t = z.scale_int(m64[k], ctx);
                acc = acc.add(&t, ctx);
            }
        }
        let resid = acc.abs(ctx);
        if below(&resid, tol, ctx) {
            // canonical sign: first nonzero required coefficient positive
            let mut m64 = m64;
            if m64[..required]
                .iter()
                .find(|&&x| x != 0)
                .is_some_and(|&x| x < 0)
            {
                for v in m64.iter_mut() {
                    *v = -*v;
                }
            }
            if !found.contains(&m64) {
                found.push(m64);
            }
        }
    }
    Ok(found)
}

fn below(x: &BigFloat, thresh: f64, ctx: &mut MpCtx) -> bool {
    ctx.abs_less_than(x, thresh)
}

fn residual_of(m: &[i64], xs: &[MpComplex], ctx: &mut MpCtx) -> f64 {
    let mut acc = MpComplex::zero(ctx);
    for (k, z) in xs.iter().enumerate() {
        if m[k] != 0 {
            let t = z.scale_int(m[k], ctx);
            acc = acc.add(&t, ctx);
        }
    }
    let a = acc.abs(ctx);
    to_f64(&a)
}

/// Finds one integer relation `sum m_i x_i = 0` with `|m_i| <= bound`, or
/// `None` if no verified relation at the tolerance appears in the reduced
/// lattice.
pub fn integer_relation(
    xs: &[MpComplex],
    bound: i64,
    tol: f64,
    ctx: &mut MpCtx,
) -> Result<Option<RelationCandidate>, RelError> {
    let rows = relation_rows(xs, xs.len(), bound, tol, ctx)?;
    let Some(best) = rows.into_iter().next() else {
        return Ok(None);
    };
    let residual = residual_of(&best, xs, ctx);
    Ok(Some(RelationCandidate {
        coefficients: best,
        residual,
        scale_digits: ctx.digits().saturating_sub(5),
        bound,
    }))
}

/// Searches for a multiplicative relation `prod y_i^{m_i} = 1` among
/// nonzero complex numbers, by finding an integer relation among their
/// principal logarithms and `2*pi*i`. The returned coefficients cover the
/// inputs only; the relation is verified by evaluating the power product.
pub fn multiplicative_relation(
    ys: &[MpComplex],
    bound: i64,
    tol: f64,
    ctx: &mut MpCtx,
) -> Result<Option<RelationCandidate>, RelError> {
    if ys.is_empty() {
        return Err(RelError::BadInput("no inputs".into()));
    }
    for y in ys {
        if y.is_zero() {
            return Err(RelError::BadInput(
                "multiplicative relations need nonzero inputs".into(),
            ));
        }
    }
    check_precision(tol, ctx)?;
    let n = ys.len();
    let mut logs: Vec<MpComplex> = ys.iter().map(|y| y.ln_principal(ctx)).collect();
    let two_pi = ctx.two_pi();
    logs.push(MpComplex {
        re: ctx.zero(),
        im: two_pi,
    });

    // The logarithm relation tolerance scales with the product bound; keep
    // it tight and let the power-product verification have the final word.
    let log_tol = (tol / (n as f64)).max(1e-300);
    let rows = relation_rows(&logs, n, bound, log_tol, ctx)?;
    for row in rows {
        let m = &row[..n];
        // verify the actual power product
        let mut prod = MpComplex::one(ctx);
        for (y, &e) in ys.iter().zip(m) {
            if e != 0 {
                let t = y.powi(e, ctx);
                prod = prod.mul(&t, ctx);
            }
        }
        let one = MpComplex::one(ctx);
        let diff = prod.sub(&one, ctx);
        let resid = diff.abs(ctx);
        if below(&resid, tol, ctx) {
            return Ok(Some(RelationCandidate {
                coefficients: m.to_vec(),
                residual: to_f64(&resid),
                scale_digits: ctx.digits().saturating_sub(5),
                bound,
            }));
        }
    }
    Ok(None)
}

/// Returns all verified relation rows among `xs ++ basis` where the `xs`
/// part is bounded and not all zero; used for rational-linear dimension
/// counting and subgroup assembly. Each row has length
/// `xs.len() + basis.len() (+ trailing auxiliary columns stripped)`.
pub fn relation_rows_mod_basis(
    xs: &[MpComplex],
    basis: &[MpComplex],
    bound: i64,
    tol: f64,
    ctx: &mut MpCtx,
) -> Result<Vec<Vec<i64>>, RelError> {
    let mut all: Vec<MpComplex> = xs.to_vec();
    all.extend_from_slice(basis);
    let rows = relation_rows(&all, xs.len(), bound, tol, ctx)?;
    Ok(rows
        .into_iter()
        .map(|r| r[..xs.len() + basis.len()].to_vec())
        .collect())
}

/// Rank of an integer matrix over the rationals.
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x /= pivot.clone();
        }
        for i in 0..nrows {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &m[rank][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Dimension of the span of `xs` over Q modulo the span of `basis`:
/// `xs.len()` minus the number of independent bounded relations found.
pub fn qlin_dim(
    xs: &[MpComplex],
    basis: &[MpComplex],
    bound: i64,
    tol: f64,
    ctx: &mut MpCtx,
) -> Result<usize, RelError> {
    if xs.is_empty() {
        return Ok(0);
    }
    let rows = relation_rows_mod_basis(xs, basis, bound, tol, ctx)?;
    let heads: Vec<Vec<i64>> = rows.iter().map(|r| r[..xs.len()].to_vec()).collect();
    Ok(xs.len() - int_rank(&heads))
}
