//! Freeness of a subvariety of G^n: no equation sum m_i x_i = c on the
//! additive block, no equation prod y_i^{m_i} = c on the multiplicative
//! block (m integral, not all zero).
//!
//! The additive side is exact linear algebra on normal forms. The
//! multiplicative side is a bounded search: candidate exponent vectors come
//! either from a full sweep of the box |m_i| <= B or, for large boxes, from
//! lattice reduction on logarithms of sampled y-coordinates; every
//! candidate is then confirmed or rejected symbolically.

use std::collections::BTreeSet;

use algebra_core::linalg::{kernel_basis, primitive_integer_vector, split_re_im};
use algebra_core::{CoreError, GaussRat, Monomial, MonomialOrder, Polynomial};
use num_bigint::BigInt;
use num_complex::Complex64;
use relation_detect::{relation_rows, MpComplex, MpCtx};
use serde_json::{json, Value};

use crate::sample::sample_points;
use crate::variety::{monomials_of_row, GSubvariety};
use crate::GeomError;

/// Exponents below this box size are swept exhaustively; larger boxes go
/// through lattice detection on sampled logarithms.
const SWEEP_LIMIT: u64 = 3000;

/// Numeric gate before a candidate is handed to elimination. Loose on
/// purpose: a spurious pass only costs an elimination that then rejects.
const PROBE_TOL: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq)]
pub enum AdditiveFreeness {
    Free,
    NotFree { m: Vec<BigInt>, c: GaussRat },
}

#[derive(Clone, Debug, PartialEq)]
pub enum MultiplicativeFreeness {
    FreeUpTo { bound: i64 },
    NotFree { m: Vec<BigInt>, c: GaussRat },
    Unknown,
}

/// Combined verdict of both freeness checks.
#[derive(Clone, Debug, PartialEq)]
pub enum FreenessVerdict {
    FreeUpTo { bound: i64 },
    NotFreeAdditive { m: Vec<BigInt>, c: GaussRat },
    NotFreeMultiplicative { m: Vec<BigInt>, c: GaussRat },
    Unknown,
}

fn witness_json(m: &[BigInt], c: &GaussRat) -> Value {
    let (re, im) = c.to_str_pair();
    json!({
        "m": m.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "c": [re, im],
    })
}

impl AdditiveFreeness {
    pub fn to_json(&self) -> Value {
        match self {
            AdditiveFreeness::Free => json!({ "status": "Free" }),
            AdditiveFreeness::NotFree { m, c } => {
                let mut v = witness_json(m, c);
                v["status"] = json!("NotFree");
                v
            }
        }
    }
}

impl MultiplicativeFreeness {
    pub fn to_json(&self) -> Value {
        match self {
            MultiplicativeFreeness::FreeUpTo { bound } => {
                json!({ "status": "FreeUpTo", "bound": bound })
            }
            MultiplicativeFreeness::NotFree { m, c } => {
                let mut v = witness_json(m, c);
                v["status"] = json!("NotFree");
                v
            }
            MultiplicativeFreeness::Unknown => json!({ "status": "Unknown" }),
        }
    }
}

impl FreenessVerdict {
    pub fn to_json(&self) -> Value {
        match self {
            FreenessVerdict::FreeUpTo { bound } => {
                json!({ "status": "FreeUpTo", "bound": bound })
            }
            FreenessVerdict::NotFreeAdditive { m, c } => {
                let mut v = witness_json(m, c);
                v["status"] = json!("NotFree");
                v["kind"] = json!("additive");
                v
            }
            FreenessVerdict::NotFreeMultiplicative { m, c } => {
                let mut v = witness_json(m, c);
                v["status"] = json!("NotFree");
                v["kind"] = json!("multiplicative");
                v
            }
            FreenessVerdict::Unknown => json!({ "status": "Unknown" }),
        }
    }
}

/// Exact check for an affine-linear equation sum m_i x_i = c holding on V.
///
/// Reduces each x_i to normal form modulo the ideal; an integer combination
/// is constant exactly when it kills every nonconstant monomial appearing
/// in those normal forms, which is a rational kernel computation.
pub fn is_additively_free(v: &GSubvariety) -> Result<AdditiveFreeness, GeomError> {
    let n = v.n();
    let nfs: Vec<Polynomial> = (0..n)
        .map(|i| v.ideal().normal_form(&Polynomial::var(v.x_index(i))))
        .collect::<Result<_, _>>()?;
    let mut monos: BTreeSet<Monomial> = BTreeSet::new();
    for nf in &nfs {
        for (m, _) in nf.terms() {
            if !m.is_one() {
                monos.insert(m.clone());
            }
        }
    }
    let rows: Vec<Vec<GaussRat>> = monos
        .iter()
        .map(|mono| nfs.iter().map(|nf| nf.coefficient(mono)).collect())
        .collect();
    let kernel = kernel_basis(&split_re_im(&rows), n);
    let Some(first) = kernel.first() else {
        return Ok(AdditiveFreeness::Free);
    };
    let rat_vec: Vec<_> = first.iter().map(|g| g.re.clone()).collect();
    let m = primitive_integer_vector(&rat_vec)
        .expect("kernel basis vectors are nonzero");
    let mut c = GaussRat::from_int(0);
    for (mi, nf) in m.iter().zip(&nfs) {
        let coef = GaussRat::from_rat(num_rational::BigRational::from_integer(mi.clone()));
        c = c + coef * nf.constant_part();
    }
    Ok(AdditiveFreeness::NotFree { m, c })
}

// ---- univariate helpers for the character-image route ----

fn uni_lead(p: &Polynomial) -> (u16, GaussRat) {
    let (m, c) = p
        .leading_term(MonomialOrder::GrevLex)
        .expect("nonzero univariate polynomial");
    (m.exponent(0), c.clone())
}

fn uni_divrem(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    let (bd, bc) = uni_lead(b);
    let bc_inv = bc.inv().expect("nonzero leading coefficient");
    let mut q = Polynomial::zero();
    let mut r = a.clone();
    while !r.is_zero() {
        let (rd, rc) = uni_lead(&r);
        if rd < bd {
            break;
        }
        let t = Polynomial::term(rc * bc_inv.clone(), Monomial::var(0, rd - bd));
        q = q.add(&t);
        r = r.sub(&t.mul(b));
    }
    (q, r)
}

fn uni_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = uni_divrem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_zero() {
        a
    } else {
        a.monic(MonomialOrder::GrevLex)
    }
}

fn uni_squarefree_part(g: &Polynomial) -> Polynomial {
    let d = g.partial(0);
    if d.is_zero() {
        return g.monic(MonomialOrder::GrevLex);
    }
    let gcd = uni_gcd(g, &d);
    let (q, _) = uni_divrem(g, &gcd);
    q.monic(MonomialOrder::GrevLex)
}

/// Value of the character y^m on V when it is constant, decided per
/// candidate by two independent routes:
///
/// 1. membership: y^{m+} - c y^{m-} lies in the (saturated) ideal, with c
///    read off by proportionality of normal forms;
/// 2. geometry: the closure of the image of the character map on V is a
///    single point, found by eliminating down to a fresh image variable.
///
/// Route 2 catches relations that hold on the variety without the witness
/// polynomial lying in the given (possibly non-radical) ideal. A finite
/// image with more than one point contradicts asserted irreducibility, so
/// such candidates are rejected.
fn confirm_candidate(
    v: &GSubvariety,
    m: &[BigInt],
    numeric_pass: bool,
) -> Result<Option<GaussRat>, GeomError> {
    let n = v.n();
    let (plus, minus) = monomials_of_row(m, n, n)?;
    let one = GaussRat::from_int(1);
    let p_plus = Polynomial::term(one.clone(), plus);
    let p_minus = Polynomial::term(one.clone(), minus);

    let nf_plus = v.ideal().normal_form(&p_plus)?;
    let nf_minus = v.ideal().normal_form(&p_minus)?;
    if !nf_plus.is_zero() && !nf_minus.is_zero() {
        let (_, lc_p) = nf_plus
            .leading_term(MonomialOrder::GrevLex)
            .expect("nonzero");
        let (_, lc_m) = nf_minus
            .leading_term(MonomialOrder::GrevLex)
            .expect("nonzero");
        let c = lc_p.clone() * lc_m.inv()?;
        if nf_plus == nf_minus.scale(&c) {
            return Ok(Some(c));
        }
    }
    if !numeric_pass {
        return Ok(None);
    }

    // eliminate everything but a fresh variable v with v y^{m-} = y^{m+}
    let ext = v.ideal().extend_ring(&["v_char".to_string()]);
    let v_idx = 2 * n;
    let mut gens = ext.gens().to_vec();
    gens.push(Polynomial::var(v_idx).mul(&p_minus).sub(&p_plus));
    let ext = algebra_core::IdealBasis::new(ext.vars().to_vec(), gens, MonomialOrder::GrevLex);
    let y_indices: Vec<usize> = (0..n).map(|i| v.y_index(i)).collect();
    let sat = ext.saturate_units(&y_indices)?;
    let image = sat.eliminate(&[v_idx])?;
    let mut g = Polynomial::zero();
    for gen in image.gens() {
        g = uni_gcd(&g, gen);
    }
    if g.is_zero() || g.is_constant() {
        return Ok(None);
    }
    let s = uni_squarefree_part(&g);
    let (deg, lead) = uni_lead(&s);
    if deg != 1 {
        return Ok(None);
    }
    let c = -(s.constant_part() * lead.inv()?);
    Ok(Some(c))
}

fn canonical_sign(m: &mut [i64]) -> bool {
    match m.iter().find(|&&x| x != 0) {
        None => false,
        Some(&x) if x > 0 => true,
        Some(_) => {
            for x in m.iter_mut() {
                *x = -*x;
            }
            true
        }
    }
}

fn sweep_candidates(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut m = vec![-bound; n];
    loop {
        if matches!(m.iter().find(|&&x| x != 0), Some(&x) if x > 0) {
            out.push(m.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if m[i] < bound {
                m[i] += 1;
                for x in m.iter_mut().skip(i + 1) {
                    *x = -bound;
                }
                break;
            }
        }
    }
}

fn lattice_candidates(
    ws: &[Complex64],
    bound: i64,
) -> Result<Vec<Vec<i64>>, GeomError> {
    let mut ctx = MpCtx::new(16);
    let mut xs: Vec<MpComplex> = Vec::with_capacity(ws.len() + 1);
    for w in ws {
        let z = MpComplex::from_f64(&ctx, w.re, w.im);
        if z.is_zero() {
            return Err(GeomError::BadInput("zero y-coordinate in sample".into()));
        }
        xs.push(z.ln_principal(&mut ctx));
    }
    let two_pi = ctx.two_pi();
    xs.push(MpComplex {
        re: ctx.zero(),
        im: two_pi,
    });
    // the 2 pi i coefficient may exceed the exponent bound, so widen the
    // row bound and filter the exponent head afterwards
    let row_bound = bound.saturating_mul(ws.len() as i64 + 1);
    let rows = relation_rows(&xs, ws.len() + 1, row_bound, 1e-6, &mut ctx)
        .map_err(|e| GeomError::BadInput(format!("lattice step failed: {e}")))?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for row in rows {
        let mut m: Vec<i64> = row[..ws.len()].to_vec();
        if !canonical_sign(&mut m) {
            continue;
        }
        if m.iter().any(|&x| x.abs() > bound) {
            continue;
        }
        if seen.insert(m.clone()) {
            out.push(m);
        }
    }
    Ok(out)
}

fn power_probe(ws: &[Complex64], m: &[i64]) -> f64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (w, &e) in ws.iter().zip(m) {
        acc *= w.powi(e as i32);
    }
    (acc - Complex64::new(1.0, 0.0)).norm()
}

/// Searches for a constant multiplicative character y^m = c with
/// 0 < max|m_i| <= bound. `NotFree` always carries a symbolically confirmed
/// witness; `Unknown` is returned when a confirmation ran out of budget.
pub fn is_multiplicatively_free(
    v: &GSubvariety,
    bound: i64,
    seed: u64,
) -> Result<MultiplicativeFreeness, GeomError> {
    if bound <= 0 {
        return Err(GeomError::BadInput("bound must be positive".into()));
    }
    let n = v.n();
    let pts = sample_points(v, 2, seed)?;
    let ws: Vec<Complex64> = (0..n).map(|i| pts[0].y[i] / pts[1].y[i]).collect();

    let box_size = (2 * bound as u64 + 1).checked_pow(n as u32);
    let candidates = match box_size {
        Some(sz) if sz <= SWEEP_LIMIT => sweep_candidates(n, bound),
        _ => lattice_candidates(&ws, bound)?,
    };

    let mut exhausted = false;
    for m in candidates {
        let numeric_pass = power_probe(&ws, &m) < PROBE_TOL;
        let m_big: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
        match confirm_candidate(v, &m_big, numeric_pass) {
            Ok(Some(c)) => return Ok(MultiplicativeFreeness::NotFree { m: m_big, c }),
            Ok(None) => {}
            Err(GeomError::Core(CoreError::ResourceExhausted)) => exhausted = true,
            Err(e) => return Err(e),
        }
    }
    if exhausted {
        Ok(MultiplicativeFreeness::Unknown)
    } else {
        Ok(MultiplicativeFreeness::FreeUpTo { bound })
    }
}

/// Both freeness checks, additive first.
pub fn is_free(v: &GSubvariety, bound: i64, seed: u64) -> Result<FreenessVerdict, GeomError> {
    if let AdditiveFreeness::NotFree { m, c } = is_additively_free(v)? {
        return Ok(FreenessVerdict::NotFreeAdditive { m, c });
    }
    Ok(match is_multiplicatively_free(v, bound, seed)? {
        MultiplicativeFreeness::NotFree { m, c } => {
            FreenessVerdict::NotFreeMultiplicative { m, c }
        }
        MultiplicativeFreeness::Unknown => FreenessVerdict::Unknown,
        MultiplicativeFreeness::FreeUpTo { bound } => FreenessVerdict::FreeUpTo { bound },
    })
}

/// Brute-force additive oracle: normal form of sum m_i x_i for every
/// nonzero integer vector with |m_i| <= bound, reported when constant.
pub fn additive_brute_force(
    v: &GSubvariety,
    bound: i64,
) -> Result<Option<(Vec<BigInt>, GaussRat)>, GeomError> {
    let n = v.n();
    for m in sweep_candidates(n, bound) {
        let mut f = Polynomial::zero();
        for (i, &mi) in m.iter().enumerate() {
            let coef = GaussRat::from_rat(num_rational::BigRational::from_integer(mi.into()));
            f = f.add(&Polynomial::var(v.x_index(i)).scale(&coef));
        }
        let nf = v.ideal().normal_form(&f)?;
        if nf.is_constant() {
            let m_big = m.iter().map(|&x| BigInt::from(x)).collect();
            return Ok(Some((m_big, nf.constant_part())));
        }
    }
    Ok(None)
}
