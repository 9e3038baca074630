//! Empirical transcendence testing on tuples of graph points: exact
//! kernel computations over the series coefficients decide whether the
//! x-parts satisfy a rational linear relation modulo constants and, if
//! not, whether any polynomial of bounded degree vanishes on the
//! coordinates. Finding nothing at the bound is evidence (never proof)
//! that the transcendence degree is full.

use algebra_core::linalg::{kernel_basis, primitive_integer_vector, split_re_im};
use algebra_core::{GaussRat, Monomial, MonomialOrder, Polynomial};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::gamma::{in_gamma_de, DiffPoint};
use crate::series::PowerSeries;
use crate::EdeError;

#[derive(Clone, Debug, PartialEq)]
pub enum AxsOutcome {
    /// Some n+1 of the 2n coordinates carry no relation at the bound:
    /// bounded evidence that the transcendence degree is at least n+1.
    NoRelationAtBound,
    /// Every n+1 coordinates are polynomially dependent at the bound; one
    /// witnessing polynomial in x1..xn, y1..yn (grevlex-monic) is
    /// returned. Unreachable for genuine graph points with independent
    /// x-parts, so this flags truncation artifacts or corrupted inputs.
    RelationFound(Polynomial),
    /// Integer rows m with sum_i m_i x_i constant; rows span the rational
    /// relation space of the x-parts modulo constants.
    SubgroupFound(Vec<Vec<BigInt>>),
}

impl AxsOutcome {
    pub fn to_json(&self, n: usize) -> Value {
        match self {
            AxsOutcome::NoRelationAtBound => json!({ "status": "NoRelationAtBound" }),
            AxsOutcome::RelationFound(p) => {
                let vars = coordinate_vars(n);
                json!({
                    "status": "RelationFound",
                    "poly": algebra_core::serial::poly_to_json(p, &vars),
                })
            }
            AxsOutcome::SubgroupFound(rows) => json!({
                "status": "SubgroupFound",
                "m": rows
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }),
        }
    }
}

fn coordinate_vars(n: usize) -> Vec<String> {
    let mut vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    vars.extend((1..=n).map(|i| format!("y{i}")));
    vars
}

/// Rational kernel of the x-coefficient matrix, constant terms excluded.
fn x_relation_rows(points: &[DiffPoint], n_ord: usize) -> Vec<Vec<BigInt>> {
    let rows: Vec<Vec<GaussRat>> = (1..=n_ord)
        .map(|k| points.iter().map(|p| p.x.coeff(k)).collect())
        .collect();
    let kernel = kernel_basis(&split_re_im(&rows), points.len());
    kernel
        .iter()
        .map(|v| {
            let rats: Vec<_> = v.iter().map(|g| g.re.clone()).collect();
            primitive_integer_vector(&rats).expect("kernel vectors are nonzero")
        })
        .collect()
}

/// Exponent vectors of total degree <= d over `width` variables, graded
/// then lexicographic, starting with the constant monomial.
fn monomial_exponents(width: usize, d: usize) -> Vec<Vec<u16>> {
    fn layer(out: &mut Vec<Vec<u16>>, cur: &mut Vec<u16>, pos: usize, left: u16) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            layer(out, cur, pos + 1, left - e);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; width];
    for total in 0..=d as u16 {
        layer(&mut out, &mut cur, 0, total);
    }
    out
}

/// All size-k index subsets of 0..m in lexicographic order.
fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == i - 1 + m - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Degree-bounded relation search on one coordinate subset: kernel of the
/// matrix whose columns are the monomial-product series. Returns the first
/// kernel vector as a polynomial over the global coordinate ring.
fn subset_relation(
    coords: &[&PowerSeries],
    subset: &[usize],
    exps: &[Vec<u16>],
    n_ord: usize,
) -> Result<Option<Polynomial>, EdeError> {
    let mut products = Vec::with_capacity(exps.len());
    for e in exps {
        let mut s = PowerSeries::one(n_ord);
        for (pos, &ej) in e.iter().enumerate() {
            for _ in 0..ej {
                s = s.mul(&coords[subset[pos]].truncate(n_ord))?;
            }
        }
        products.push(s);
    }
    let rows: Vec<Vec<GaussRat>> = (0..=n_ord)
        .map(|k| products.iter().map(|s| s.coeff(k)).collect())
        .collect();
    let kernel = kernel_basis(&rows, exps.len());
    let Some(v) = kernel.first() else {
        return Ok(None);
    };
    let mut poly = Polynomial::zero();
    for (c, e) in v.iter().zip(exps) {
        if c.is_zero() {
            continue;
        }
        let mut mono = Monomial::one();
        for (pos, &ej) in e.iter().enumerate() {
            if ej > 0 {
                mono.set_exponent(subset[pos], ej);
            }
        }
        poly = poly.add(&Polynomial::term(c.clone(), mono));
    }
    Ok(Some(poly.monic(MonomialOrder::GrevLex)))
}

/// Searches for (i) a rational linear relation among the x-parts modulo
/// constants, then (ii) polynomial relations of total degree <= deg_bound
/// with constant coefficients on every set of n+1 of the 2n coordinate
/// series. One independent subset is evidence that the transcendence
/// degree is at least n+1, reported as NoRelationAtBound.
pub fn empirical_ax_schanuel(
    points: &[DiffPoint],
    deg_bound: usize,
    n_ord: usize,
) -> Result<AxsOutcome, EdeError> {
    if points.is_empty() {
        return Err(EdeError::BadInput("need at least one point".into()));
    }
    let n = points.len();
    for p in points {
        if !in_gamma_de(p, n_ord)? {
            return Err(EdeError::BadInput(
                "a point fails the differential equation".into(),
            ));
        }
    }
    let floor = 3 * (deg_bound + 1) * n;
    if n_ord < floor {
        return Err(EdeError::ResolutionTooLow {
            needed: floor,
            have: n_ord,
        });
    }

    let subgroup = x_relation_rows(points, n_ord);
    if !subgroup.is_empty() {
        return Ok(AxsOutcome::SubgroupFound(subgroup));
    }

    let exps = monomial_exponents(n + 1, deg_bound);
    if exps.len() > n_ord + 1 {
        // more monomials than coefficient equations: every kernel vector
        // would be a truncation artifact, not evidence
        return Err(EdeError::ResolutionTooLow {
            needed: exps.len() - 1,
            have: n_ord,
        });
    }
    let coords: Vec<&PowerSeries> = points
        .iter()
        .map(|p| &p.x)
        .chain(points.iter().map(|p| &p.y))
        .collect();
    let mut first_relation = None;
    for subset in subsets(2 * n, n + 1) {
        match subset_relation(&coords, &subset, &exps, n_ord)? {
            None => return Ok(AxsOutcome::NoRelationAtBound),
            Some(p) => {
                if first_relation.is_none() {
                    first_relation = Some(p);
                }
            }
        }
    }
    Ok(AxsOutcome::RelationFound(
        first_relation.expect("2n >= n+1 gives at least one subset"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::exp_series;
    use algebra_core::parse_poly;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn graph_point(x: PowerSeries) -> DiffPoint {
        DiffPoint::new(x.clone(), exp_series(&x).unwrap())
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(width + d, d) exponent vectors of degree <= d
        assert_eq!(monomial_exponents(2, 3).len(), 10);
        assert_eq!(monomial_exponents(4, 2).len(), 15);
        assert_eq!(monomial_exponents(4, 3).len(), 35);
        assert_eq!(monomial_exponents(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn single_exponential_has_no_low_degree_relation() {
        let p = graph_point(PowerSeries::t(16));
        let out = empirical_ax_schanuel(&[p], 3, 16).unwrap();
        assert_eq!(out, AxsOutcome::NoRelationAtBound);
    }

    #[test]
    fn planted_linear_x_relation_is_reported_as_a_subgroup() {
        let p1 = graph_point(PowerSeries::t(24));
        let p2 = graph_point(PowerSeries::t(24).scale(&g(2)));
        let out = empirical_ax_schanuel(&[p1, p2], 2, 24).unwrap();
        assert_eq!(
            out,
            AxsOutcome::SubgroupFound(vec![vec![BigInt::from(2), BigInt::from(-1)]])
        );
    }

    #[test]
    fn constant_shifts_do_not_hide_the_subgroup() {
        // x2 = 2 x1 + 5 is still a relation modulo constants
        let p1 = graph_point(PowerSeries::t(24));
        let x2 = PowerSeries::t(24).scale(&g(2));
        let y2 = exp_series(&x2).unwrap().scale(&g(3));
        let shifted_x2 = x2.add(&PowerSeries::constant(g(5), 24)).unwrap();
        let p2 = DiffPoint::new(shifted_x2, y2);
        assert!(in_gamma_de(&p2, 24).unwrap());
        let out = empirical_ax_schanuel(&[p1, p2], 2, 24).unwrap();
        assert!(matches!(out, AxsOutcome::SubgroupFound(_)));
    }

    #[test]
    fn independent_exponentials_in_g2_are_clean() {
        let t = PowerSeries::t(24);
        let p1 = graph_point(t.clone());
        let p2 = graph_point(t.mul(&t).unwrap());
        let out = empirical_ax_schanuel(&[p1, p2], 2, 24).unwrap();
        assert_eq!(out, AxsOutcome::NoRelationAtBound);
    }

    #[test]
    fn gaussian_multiple_is_not_a_rational_subgroup_and_td_stays_full() {
        // x2 = i x1 is a Q(i)-relation but not a rational one, and the
        // triple {x1, y1, y2} stays independent, so the verdict is clean
        let t = PowerSeries::t(24);
        let p1 = graph_point(t.clone());
        let p2 = graph_point(t.scale(&GaussRat::i()));
        let out = empirical_ax_schanuel(&[p1, p2], 2, 24).unwrap();
        assert_eq!(out, AxsOutcome::NoRelationAtBound);
    }

    #[test]
    fn truncation_artifacts_trip_the_relation_branch() {
        // x2 = x1 + t^24 differs from x1 only at the last stored order, so
        // (x2 - x1) times any coordinate is invisible after truncation and
        // every triple looks dependent; the artifact is reported, not
        // mistaken for NoRelationAtBound
        let t = PowerSeries::t(24);
        let x2 = {
            let mut c = vec![GaussRat::from_int(0); 25];
            c[1] = g(1);
            c[24] = g(1);
            PowerSeries::from_coeffs(c).unwrap()
        };
        let p1 = graph_point(t);
        let p2 = graph_point(x2);
        let out = empirical_ax_schanuel(&[p1, p2], 2, 24).unwrap();
        // the witness is (x1 - x2)(y1 - 1) = -t^24 (e^t - 1), whose series
        // starts at t^25 and is invisible through order 24
        let vars = coordinate_vars(2);
        let expected = parse_poly("x1*y1 - x2*y1 - x1 + x2", &vars).unwrap();
        assert_eq!(out, AxsOutcome::RelationFound(expected));
    }

    #[test]
    fn resolution_floor_is_enforced() {
        let p = graph_point(PowerSeries::t(24));
        let err = empirical_ax_schanuel(&[p], 7, 23).unwrap_err();
        assert!(matches!(
            err,
            EdeError::ResolutionTooLow {
                needed: 24,
                have: 23
            }
        ));
    }

    #[test]
    fn underdetermined_polynomial_search_is_refused() {
        // n=1, D=7: 36 monomials in two variables but only 25 coefficient
        // rows at N=24, so kernel vectors would be meaningless
        let p = graph_point(PowerSeries::t(24));
        let err = empirical_ax_schanuel(&[p], 7, 24).unwrap_err();
        assert!(matches!(
            err,
            EdeError::ResolutionTooLow {
                needed: 35,
                have: 24
            }
        ));
    }

    #[test]
    fn subset_enumeration_is_lexicographic() {
        assert_eq!(
            subsets(4, 3),
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        assert_eq!(subsets(2, 2), vec![vec![0, 1]]);
        assert_eq!(subsets(1, 2), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn points_off_the_graph_are_rejected() {
        let p = DiffPoint::new(PowerSeries::t(16), PowerSeries::one(16));
        let err = empirical_ax_schanuel(&[p], 1, 16).unwrap_err();
        assert!(matches!(err, EdeError::BadInput(_)));
    }

    #[test]
    fn outcome_json_shapes() {
        let sub = AxsOutcome::SubgroupFound(vec![vec![BigInt::from(2), BigInt::from(-1)]]);
        assert_eq!(
            sub.to_json(2),
            serde_json::json!({"status": "SubgroupFound", "m": [["2", "-1"]]})
        );
        assert_eq!(
            AxsOutcome::NoRelationAtBound.to_json(1)["status"],
            "NoRelationAtBound"
        );
    }
}
