//! Numeric search for the proper algebraic subgroup promised by the
//! Ax-Schanuel axiom.
//!
//! Given pairs asserted to lie in Gamma and a basis for the constants, we
//! look for integer vectors m with sum(m_i x_i) in the rational span of
//! the basis; each such vector is a defining row of a subgroup J with the
//! input contained in a constant translate of TJ. When every point is
//! already constant the degenerate J = {1} applies.

use crate::ConfigError;
use num_complex::Complex64;
use relation_detect::{int_rank, relation_rows_mod_basis, to_f64, MpComplex, MpCtx};
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct SubgroupWitness {
    /// Defining rows of J: points of J satisfy m . u = 0 and v^m = 1.
    pub m_rows: Vec<Vec<i64>>,
    /// Per row, the constant value of m . x.
    pub x_coset: Vec<Complex64>,
    /// Per row, the constant value of y^m.
    pub y_coset: Vec<Complex64>,
    /// Per row, the verified size of the detected linear combination.
    pub residuals: Vec<f64>,
}

impl SubgroupWitness {
    pub fn rank(&self) -> usize {
        self.m_rows.len()
    }

    pub fn to_json(&self) -> Value {
        let c = |z: &Complex64| json!([z.re, z.im]);
        json!({
            "m": self.m_rows,
            "x_coset": self.x_coset.iter().map(c).collect::<Vec<_>>(),
            "y_coset": self.y_coset.iter().map(c).collect::<Vec<_>>(),
            "residuals": self.residuals,
        })
    }
}

fn ctx_for(tol: f64) -> MpCtx {
    let digits = (-tol.log10()).ceil().max(0.0) as usize + 10;
    MpCtx::new(digits.max(16))
}

fn combo_residual(row: &[i64], vals: &[MpComplex], ctx: &mut MpCtx) -> f64 {
    let mut acc = MpComplex::from_f64(ctx, 0.0, 0.0);
    for (k, v) in row.iter().zip(vals) {
        if *k != 0 {
            let t = v.scale_int(*k, ctx);
            acc = acc.add(&t, ctx);
        }
    }
    to_f64(&acc.abs(ctx))
}

fn power_product(ys: &[Complex64], m: &[i64]) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (y, &k) in ys.iter().zip(m) {
        if k != 0 {
            acc *= y.powi(k as i32);
        }
    }
    acc
}

/// Searches for a proper subgroup witness at coefficient bound `bound`.
/// Returns None when no bounded relation exists; for all-constant input
/// the degenerate J = {1} (identity matrix) is reported directly.
pub fn ax_schanuel_witness(
    points: &[(Complex64, Complex64)],
    c_basis: &[Complex64],
    bound: i64,
    tol: f64,
) -> Result<Option<SubgroupWitness>, ConfigError> {
    let n = points.len();
    if n == 0 {
        return Err(ConfigError::BadInput("no points given".into()));
    }
    if !(bound >= 1 && bound <= i32::MAX as i64) {
        return Err(ConfigError::BadInput(format!(
            "coefficient bound {bound} out of range"
        )));
    }
    if !(tol > 0.0) {
        return Err(ConfigError::BadInput("tolerance must be positive".into()));
    }
    if tol < 1e-12 {
        return Err(ConfigError::ToleranceUnachievable(format!(
            "tolerance {tol:e} is below double-precision input resolution"
        )));
    }
    for (i, (x, y)) in points.iter().enumerate() {
        if !(x.re.is_finite() && x.im.is_finite() && y.re.is_finite() && y.im.is_finite()) {
            return Err(ConfigError::BadInput(format!(
                "point {i} has a non-finite coordinate"
            )));
        }
        if y.norm() == 0.0 {
            return Err(ConfigError::BadInput(format!(
                "point {i} has zero multiplicative part"
            )));
        }
    }
    if c_basis
        .iter()
        .any(|b| !(b.re.is_finite() && b.im.is_finite()))
    {
        return Err(ConfigError::BadInput("non-finite constant basis".into()));
    }

    let mut ctx = ctx_for(tol);
    let xs: Vec<MpComplex> = points
        .iter()
        .map(|(x, _)| MpComplex::from_f64(&ctx, x.re, x.im))
        .collect();
    let basis: Vec<MpComplex> = c_basis
        .iter()
        .map(|b| MpComplex::from_f64(&ctx, b.re, b.im))
        .collect();
    let ys: Vec<Complex64> = points.iter().map(|&(_, y)| y).collect();
    let x64: Vec<Complex64> = points.iter().map(|&(x, _)| x).collect();

    // degenerate case: every x-part constant means J = {1} works
    let mut const_resid = Vec::with_capacity(n);
    for z in &xs {
        let r = if basis.is_empty() {
            let size = to_f64(&z.abs(&mut ctx));
            (size <= tol).then_some(size)
        } else {
            let rows = relation_rows_mod_basis(
                std::slice::from_ref(z),
                &basis,
                bound,
                tol,
                &mut ctx,
            )?;
            rows.first().map(|row| {
                let mut vals = vec![z.clone()];
                vals.extend(basis.iter().cloned());
                combo_residual(row, &vals, &mut ctx) / row[0].unsigned_abs() as f64
            })
        };
        match r {
            Some(r) => const_resid.push(r),
            None => break,
        }
    }
    if const_resid.len() == n {
        let m_rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let y_coset = ys.clone();
        return Ok(Some(SubgroupWitness {
            m_rows,
            x_coset: x64,
            y_coset,
            residuals: const_resid,
        }));
    }

    let rows = relation_rows_mod_basis(&xs, &basis, bound, tol, &mut ctx)?;
    let mut heads: Vec<Vec<i64>> = Vec::new();
    let mut witness = SubgroupWitness {
        m_rows: Vec::new(),
        x_coset: Vec::new(),
        y_coset: Vec::new(),
        residuals: Vec::new(),
    };
    let mut vals = xs.clone();
    vals.extend(basis.iter().cloned());
    for row in rows {
        if heads.len() == n {
            break;
        }
        let head = row[..n].to_vec();
        let mut cand = heads.clone();
        cand.push(head.clone());
        if int_rank(&cand) <= heads.len() {
            continue;
        }
        witness.residuals.push(combo_residual(&row, &vals, &mut ctx));
        witness
            .x_coset
            .push(head.iter().zip(&x64).map(|(&k, x)| k as f64 * x).sum());
        witness.y_coset.push(power_product(&ys, &head));
        witness.m_rows.push(head.clone());
        heads = cand;
    }
    if witness.m_rows.is_empty() {
        Ok(None)
    } else {
        Ok(Some(witness))
    }
}
