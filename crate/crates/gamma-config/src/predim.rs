//! Predimension of new points over a subconfiguration.
//!
//! A new point is a rational combination of the presented pairs, taken in
//! the group: its x-part is the linear combination of x-coordinates, its
//! y-part the corresponding power product of y-coordinates. Transcendence
//! degree is read off Krull dimensions of eliminated loci; linear dimension
//! over the declared part comes from integer ranks.

use crate::lattice::snf_rank;
use crate::present::GammaPresentation;
use crate::ConfigError;
use algebra_core::{GaussRat, IdealBasis, Monomial, MonomialOrder, Polynomial, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PredimReport {
    pub td: i64,
    pub ldim: i64,
    pub delta: i64,
}

impl PredimReport {
    pub fn to_json(&self) -> Value {
        json!({ "td": self.td, "ldim": self.ldim, "delta": self.delta })
    }
}

/// delta(b / A) = td(b / A) - ldim_Q(b / Gamma(A)) for points `b` given as
/// rational combinations of the presented pairs and `A` a set of pair
/// indices.
///
/// Purity is enforced first: a point with a declared multiple (up to the
/// presentation's denominator bound) must itself be declared.
pub fn predimension(
    p: &GammaPresentation,
    a: &[usize],
    b: &[Vec<Rat>],
) -> Result<PredimReport, ConfigError> {
    let a = validate_subset(p, a)?;
    validate_points(p, &a, b)?;
    let td = if b.is_empty() {
        0
    } else {
        extended_dimension(p, &a, b)? - restricted_dimension(p, &a)?
    };
    let gamma_a = p.sublattice(&a).basis_rat_rows();
    let base = snf_rank(&gamma_a, p.n_pairs()) as i64;
    let mut stacked = gamma_a;
    stacked.extend(b.iter().cloned());
    let ldim = snf_rank(&stacked, p.n_pairs()) as i64 - base;
    Ok(PredimReport {
        td,
        ldim,
        delta: td - ldim,
    })
}

pub(crate) fn validate_subset(
    p: &GammaPresentation,
    a: &[usize],
) -> Result<Vec<usize>, ConfigError> {
    if let Some(&bad) = a.iter().find(|&&i| i >= p.n_pairs()) {
        return Err(ConfigError::MalformedPresentation(format!(
            "subset index {bad} out of range for {} pairs",
            p.n_pairs()
        )));
    }
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    Ok(a)
}

fn validate_points(
    p: &GammaPresentation,
    a: &[usize],
    b: &[Vec<Rat>],
) -> Result<(), ConfigError> {
    let m = p.n_pairs();
    for q in b {
        if q.len() != m {
            return Err(ConfigError::MalformedPresentation(format!(
                "point has {} coefficients, expected {m}",
                q.len()
            )));
        }
    }
    if b.is_empty() {
        return Ok(());
    }
    let lat_p = p.lattice();
    let lat_a = p.sublattice(a);
    for (i, q) in b.iter().enumerate() {
        if lat_p.contains(q) {
            continue;
        }
        for k in 2..=p.denominator_bound() {
            let kk = BigInt::from(k);
            let scaled: Vec<Rat> = q.iter().map(|x| x * &kk).collect();
            if lat_a.contains(&scaled) {
                return Err(ConfigError::NotPure { index: i, k });
            }
        }
    }
    Ok(())
}

/// Krull dimension of the locus of the pairs indexed by `a` (sorted).
pub(crate) fn restricted_dimension(
    p: &GammaPresentation,
    a: &[usize],
) -> Result<i64, ConfigError> {
    if a.is_empty() {
        return Ok(0);
    }
    let mut keep: Vec<usize> = a.iter().map(|&i| p.x_var(i)).collect();
    keep.extend(a.iter().map(|&i| p.y_var(i)));
    Ok(p.relations().eliminate(&keep)?.dimension()?)
}

/// Krull dimension of the joint locus of the pairs indexed by `a` together
/// with the combination points `b`, computed in a ring extended by one
/// fresh pair per point.
fn extended_dimension(
    p: &GammaPresentation,
    a: &[usize],
    b: &[Vec<Rat>],
) -> Result<i64, ConfigError> {
    let m = p.n_pairs();
    let t = b.len();
    let fresh = p.fresh_pair_labels("b", t);
    let mut extra: Vec<String> = fresh.iter().map(|(fx, _)| fx.clone()).collect();
    extra.extend(fresh.iter().map(|(_, fy)| fy.clone()));
    let ext = p.relations().extend_ring(&extra);
    let mut gens = ext.gens().to_vec();
    gens.extend(combination_equations(m, 2 * m, 2 * m + t, b)?);
    let ideal = IdealBasis::new(ext.vars().to_vec(), gens, MonomialOrder::GrevLex);
    let units: Vec<usize> = (m..2 * m).chain(2 * m + t..2 * m + 2 * t).collect();
    let ideal = ideal.saturate_units(&units)?;
    let mut keep: Vec<usize> = a.iter().map(|&i| p.x_var(i)).collect();
    keep.extend(a.iter().map(|&i| p.y_var(i)));
    keep.extend(2 * m..2 * m + 2 * t);
    Ok(ideal.eliminate(&keep)?.dimension()?)
}

/// Defining equations of combination points in an extended ring: for the
/// i-th point with coefficients q and common denominator L,
///   L * bx_i = sum_k (L q_k) x_k
///   by_i^L * prod_{L q_k < 0} y_k^(-L q_k) = prod_{L q_k > 0} y_k^(L q_k).
pub(crate) fn combination_equations(
    m: usize,
    bx_base: usize,
    by_base: usize,
    b: &[Vec<Rat>],
) -> Result<Vec<Polynomial>, ConfigError> {
    let too_big = || {
        ConfigError::BadInput(
            "combination coefficients exceed the representable exponent range".into(),
        )
    };
    let mut eqs = Vec::with_capacity(2 * b.len());
    for (i, q) in b.iter().enumerate() {
        let mut l = BigInt::one();
        for c in q {
            l = l.lcm(c.denom());
        }
        let l_exp = l.to_u16().ok_or_else(too_big)?;
        let ints: Vec<BigInt> = q.iter().map(|c| (c * &l).to_integer()).collect();
        let mut add = Polynomial::term(
            GaussRat::from_rat(Rat::from_integer(l.clone())),
            Monomial::var(bx_base + i, 1),
        );
        let mut neg = Monomial::var(by_base + i, l_exp);
        let mut pos = Monomial::one();
        for (k, pk) in ints.iter().enumerate() {
            if pk.is_zero() {
                continue;
            }
            add = add.sub(&Polynomial::term(
                GaussRat::from_rat(Rat::from_integer(pk.clone())),
                Monomial::var(k, 1),
            ));
            let e = pk.abs().to_u16().ok_or_else(too_big)?;
            if pk.is_negative() {
                neg = neg.mul(&Monomial::var(m + k, e));
            } else {
                pos = pos.mul(&Monomial::var(m + k, e));
            }
        }
        let mul = Polynomial::term(GaussRat::from_int(1), neg)
            .sub(&Polynomial::term(GaussRat::from_int(1), pos));
        eqs.push(add);
        eqs.push(mul);
    }
    Ok(eqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hspec::HSpec;
    use algebra_core::{parse_poly, rat_from_str};

    fn rats(sp: &[&str]) -> Vec<Rat> {
        sp.iter().map(|s| rat_from_str(s).unwrap()).collect()
    }

    fn present(
        m: usize,
        rel_srcs: &[&str],
        decls: &[&[&str]],
        bound: u32,
    ) -> GammaPresentation {
        let gens: Vec<(String, String)> = (1..=m)
            .map(|i| (format!("x{i}"), format!("y{i}")))
            .collect();
        let vars: Vec<String> = gens
            .iter()
            .map(|(a, _)| a.clone())
            .chain(gens.iter().map(|(_, b)| b.clone()))
            .collect();
        let rels: Vec<_> = rel_srcs
            .iter()
            .map(|s| parse_poly(s, &vars).unwrap())
            .collect();
        let ideal = IdealBasis::new(vars, rels, MonomialOrder::GrevLex);
        let decls: Vec<Vec<Rat>> = decls.iter().map(|r| rats(r)).collect();
        GammaPresentation::new(gens, vec![], ideal, decls, HSpec::Trivial, bound).unwrap()
    }

    #[test]
    fn generic_pair_has_predimension_one() {
        let p = present(1, &[], &[], 8);
        let r = predimension(&p, &[], &[rats(&["1"])]).unwrap();
        assert_eq!((r.td, r.ldim, r.delta), (2, 1, 1));
    }

    #[test]
    fn diagonal_pair_has_predimension_zero() {
        let p = present(1, &["y1 - x1"], &[], 8);
        let r = predimension(&p, &[], &[rats(&["1"])]).unwrap();
        assert_eq!((r.td, r.ldim, r.delta), (1, 1, 0));
    }

    #[test]
    fn declared_point_costs_nothing() {
        let p = present(1, &[], &[&["1"]], 8);
        let r = predimension(&p, &[0], &[rats(&["1"])]).unwrap();
        assert_eq!((r.td, r.ldim, r.delta), (0, 0, 0));
    }

    #[test]
    fn purity_violation_detected() {
        let p = present(1, &[], &[&["1"]], 8);
        let err = predimension(&p, &[0], &[rats(&["1/2"])]).unwrap_err();
        match err {
            ConfigError::NotPure { index, k } => assert_eq!((index, k), (0, 2)),
            other => panic!("expected NotPure, got {other}"),
        }
        // bound 1 never consults multiples, so the same point passes
        let p1 = present(1, &[], &[&["1"]], 1);
        assert!(predimension(&p1, &[0], &[rats(&["1/2"])]).is_ok());
    }

    #[test]
    fn fractional_point_over_nothing() {
        let p = present(1, &[], &[], 8);
        let r = predimension(&p, &[], &[rats(&["1/2"])]).unwrap();
        assert_eq!((r.td, r.ldim, r.delta), (2, 1, 1));
    }

    #[test]
    fn algebraic_but_independent_point_costs() {
        // x2 = 2 x1, y2 = y1^2: the second pair is algebraic over the first
        // but linearly independent from the (empty) declared part.
        let p = present(2, &["x2 - 2*x1", "y2 - y1^2"], &[], 8);
        let r = predimension(&p, &[0], &[rats(&["0", "1"])]).unwrap();
        assert_eq!((r.td, r.ldim, r.delta), (0, 1, -1));
    }

    #[test]
    fn empty_point_list() {
        let p = present(1, &[], &[], 8);
        let r = predimension(&p, &[0], &[]).unwrap();
        assert_eq!((r.td, r.ldim, r.delta), (0, 0, 0));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let p = present(1, &[], &[], 8);
        assert!(matches!(
            predimension(&p, &[5], &[]),
            Err(ConfigError::MalformedPresentation(_))
        ));
        assert!(matches!(
            predimension(&p, &[], &[rats(&["1", "2"])]),
            Err(ConfigError::MalformedPresentation(_))
        ));
        assert!(matches!(
            predimension(&p, &[], &[rats(&["1/100000"])]),
            Err(ConfigError::BadInput(_))
        ));
    }

    #[test]
    fn report_serializes() {
        let r = PredimReport {
            td: 2,
            ldim: 1,
            delta: 1,
        };
        assert_eq!(r.to_json(), json!({"td": 2, "ldim": 1, "delta": 1}));
    }
}
