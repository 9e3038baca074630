//! Cross-cutting invariants: the blur identity for predimension, predimension
//! monotonicity under extra relations, rank-oracle agreement, closedness
//! witnesses against the predimension oracle, and witness residual stability
//! at higher precision.

use algebra_core::{parse_poly, rat_from_str, IdealBasis, MonomialOrder, Rat};
use gamma_config::{
    ax_schanuel_witness, blur, is_rel_gamma_closed, predimension, rational_rank, snf_rank,
    split_blur_components, Closedness, ConfigError, GammaPresentation, HSpec,
};
use num_complex::Complex64;
use proptest::prelude::*;
use relation_detect::{to_f64, MpComplex, MpCtx};

fn rats(sp: &[&str]) -> Vec<Rat> {
    sp.iter().map(|s| rat_from_str(s).unwrap()).collect()
}

fn present(
    m: usize,
    rel_srcs: &[&str],
    constants: &[usize],
    decls: &[&[&str]],
    bound: u32,
) -> Result<GammaPresentation, ConfigError> {
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
    GammaPresentation::new(gens, constants.to_vec(), ideal, decls, HSpec::Trivial, bound)
}

/// Presentations declaring their pairs as graph points, used for blurring.
fn blur_corpus() -> Vec<GammaPresentation> {
    vec![
        present(1, &[], &[], &[&["1"]], 4).unwrap(),
        present(1, &["y1 - x1"], &[], &[&["1"]], 4).unwrap(),
        present(1, &["x1 - 1"], &[], &[&["1"]], 4).unwrap(),
        present(2, &["x2 - 2*x1", "y2 - y1^2"], &[], &[&["1", "0"], &["0", "1"]], 4).unwrap(),
        present(2, &[], &[], &[&["1", "0"], &["0", "1"]], 4).unwrap(),
        present(2, &["y1*y2 - 1"], &[], &[&["1", "0"], &["0", "1"]], 4).unwrap(),
    ]
}

#[test]
fn blur_identity_for_lattice_blurs() {
    // Two-element bases multiply the combination denominators, which in turn
    // raise the exponents in the saturated elimination; keep those runs on
    // the single-pair presentations and use the cheap basis everywhere.
    for p in blur_corpus() {
        check_blur_identity(&p, &["1"], &["1/2"]);
        if p.n_pairs() == 1 {
            check_blur_identity(&p, &["1", "2*pi*i"], &["-2/3", "1/4"]);
        }
    }
}

fn check_blur_identity(p: &GammaPresentation, basis: &[&str], h_part: &[&str]) {
    let m = p.n_pairs();
    let spec = HSpec::LatticeExp(basis.iter().map(|s| s.to_string()).collect());
    let q = blur(p, &spec).unwrap();
    let (orig, h_idx) = split_blur_components(&q).unwrap();
    assert_eq!(orig.len(), m);
    assert_eq!(h_idx.len(), basis.len());
    for a in subsets_of(m) {
        let mut a_blurred = a.clone();
        a_blurred.extend(h_idx.iter().cloned());
        for orig_part in orig_points(m) {
            let mut shifted = orig_part.clone();
            shifted.extend(rats(h_part));
            let blurred = predimension(&q, &a_blurred, &[shifted]).unwrap();
            let plain = predimension(p, &a, &[orig_part.clone()]).unwrap();
            assert_eq!(
                blurred, plain,
                "blur identity failed: {basis:?} {a:?} {orig_part:?}"
            );
        }
    }
}

#[test]
fn blur_identity_for_tuples() {
    let p = present(2, &["x2 - 2*x1", "y2 - y1^2"], &[], &[&["1", "0"], &["0", "1"]], 4)
        .unwrap();
    let q = blur(&p, &HSpec::LatticeExp(vec!["1".into()])).unwrap();
    let (_, h_idx) = split_blur_components(&q).unwrap();
    let mut a_blurred = vec![0];
    a_blurred.extend(h_idx);
    let tuple_blurred = vec![rats(&["1", "0", "1/2"]), rats(&["0", "1", "-1/3"])];
    let tuple_plain = vec![rats(&["1", "0"]), rats(&["0", "1"])];
    let blurred = predimension(&q, &a_blurred, &tuple_blurred).unwrap();
    let plain = predimension(&p, &[0], &tuple_plain).unwrap();
    assert_eq!(blurred, plain);
}

#[test]
fn blur_identity_for_constants_field() {
    // pair 0 is the constant (0, y1); A contains it on both sides
    let p = present(2, &["x1"], &[0], &[&["0", "1"]], 4).unwrap();
    let q = blur(&p, &HSpec::ConstantsField("F".into())).unwrap();
    let (_, c_idx) = split_blur_components(&q).unwrap();
    assert_eq!(c_idx, vec![2]);
    let mut a_blurred = vec![0];
    a_blurred.extend(c_idx);
    for h_coef in ["1/2", "-1", "5/12"] {
        let shifted = [rats(&["0", "1"]), rats(&[h_coef])].concat();
        let blurred = predimension(&q, &a_blurred, &[shifted]).unwrap();
        let plain = predimension(&p, &[0], &[rats(&["0", "1"])]).unwrap();
        assert_eq!(blurred, plain, "constants-field blur identity at {h_coef}");
    }
}

fn subsets_of(m: usize) -> Vec<Vec<usize>> {
    (0..1usize << m)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// A few combination points over the original pairs, small denominators.
fn orig_points(m: usize) -> Vec<Vec<Rat>> {
    let mut out = vec![vec![Rat::from_integer(1.into()); m]];
    let mut e1 = vec![Rat::from_integer(0.into()); m];
    e1[0] = Rat::from_integer(2.into());
    out.push(e1);
    if m > 1 {
        let mut mixed = vec![Rat::from_integer(0.into()); m];
        mixed[0] = rat_from_str("1").unwrap();
        mixed[1] = rat_from_str("-1").unwrap();
        out.push(mixed);
    }
    out
}

#[test]
fn whole_presentation_is_closed_at_every_bound() {
    for p in blur_corpus() {
        let all: Vec<usize> = (0..p.n_pairs()).collect();
        for r in 1..=2 {
            for b in 1..=3 {
                let v = is_rel_gamma_closed(&p, &all, r, b).unwrap();
                assert!(matches!(v, Closedness::ClosedUpTo { .. }));
            }
        }
    }
}

#[test]
fn closedness_witnesses_satisfy_the_predimension_oracle() {
    for p in blur_corpus() {
        for a in subsets_of(p.n_pairs()) {
            match is_rel_gamma_closed(&p, &a, 2, 2).unwrap() {
                Closedness::NotClosed { witness, report } => {
                    let again = predimension(&p, &a, &witness).unwrap();
                    assert_eq!(again, report);
                    assert!(report.delta <= 0);
                    let gamma_a = p.sublattice(&a);
                    assert!(witness.iter().any(|w| !gamma_a.contains(w)));
                }
                Closedness::ClosedUpTo { .. } => {
                    // single declared rows must each be fine on their own
                    for row in p.gamma_decls() {
                        if p.sublattice(&a).contains(row) {
                            continue;
                        }
                        let r = predimension(&p, &a, &[row.clone()]).unwrap();
                        assert!(r.delta > 0, "missed witness {row:?} over {a:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn declared_combinations_never_trip_purity() {
    for p in blur_corpus() {
        let decls = p.gamma_decls().to_vec();
        for (i, d) in decls.iter().enumerate() {
            for (j, e) in decls.iter().enumerate() {
                if i == j {
                    continue;
                }
                let sum: Vec<Rat> = d.iter().zip(e).map(|(x, y)| x + y).collect();
                let r = predimension(&p, &[], &[sum]);
                assert!(!matches!(r, Err(ConfigError::NotPure { .. })));
            }
        }
    }
}

#[test]
fn witness_residuals_hold_at_higher_precision() {
    let z = Complex64::new(0.7, 0.3);
    let points = vec![(z, z.exp()), (2.0 * z, (2.0 * z).exp())];
    let basis = vec![Complex64::new(1.0, 0.0)];
    let tol = 1e-9;
    let w = ax_schanuel_witness(&points, &basis, 3, tol)
        .unwrap()
        .expect("doubled point must produce a witness");
    assert!(w.rank() >= 1);
    // re-evaluate every detected relation at 40 digits
    let mut ctx = MpCtx::new(40);
    for (i, row) in w.m_rows.iter().enumerate() {
        assert!(w.residuals[i] <= tol);
        let mut acc = MpComplex::from_f64(&ctx, 0.0, 0.0);
        for (k, (x, _)) in row.iter().zip(&points) {
            let t = MpComplex::from_f64(&ctx, x.re, x.im).scale_int(*k, &mut ctx);
            acc = acc.add(&t, &mut ctx);
        }
        // the combination must still land on its reported coset value
        let coset = MpComplex::from_f64(&ctx, w.x_coset[i].re, w.x_coset[i].im);
        let diff = acc.sub(&coset, &mut ctx);
        let resid = to_f64(&diff.abs(&mut ctx));
        assert!(resid <= 10.0 * tol, "re-evaluated residual {resid}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_oracles_agree(
        rows in proptest::collection::vec(
            proptest::collection::vec((-4i64..=4, 1u64..=4), 3),
            0..5,
        )
    ) {
        let rows: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|&(n, d)| Rat::new(n.into(), d.into())).collect())
            .collect();
        prop_assert_eq!(snf_rank(&rows, 3), rational_rank(&rows, 3));
    }

    #[test]
    fn extra_relations_never_raise_predimension(
        mask in 0u8..64,
        extra in 0usize..6,
        bnum in -2i64..=2,
        bden in 1u64..=2,
        a_mask in 0u8..4,
    ) {
        let pool = [
            "y1 - x1",
            "y2 - x2",
            "x2 - 2*x1",
            "y2 - y1^2",
            "x1 + x2 - 1",
            "y1*y2 - 1",
        ];
        let chosen: Vec<&str> = (0..6)
            .filter(|i| mask >> i & 1 == 1 && *i != extra)
            .map(|i| pool[i])
            .collect();
        let mut larger = chosen.clone();
        larger.push(pool[extra]);
        let (Ok(p_small), Ok(p_big)) = (
            present(2, &chosen, &[], &[], 4),
            present(2, &larger, &[], &[], 4),
        ) else {
            // the sampled relation set is inconsistent on the torus
            return Ok(());
        };
        let a: Vec<usize> = (0..2).filter(|i| a_mask >> i & 1 == 1).collect();
        let b = vec![vec![Rat::new(bnum.into(), bden.into()), Rat::new(1.into(), 1.into())]];
        let small = predimension(&p_small, &a, &b).unwrap();
        let big = predimension(&p_big, &a, &b).unwrap();
        prop_assert!(big.td <= small.td, "td grew: {} > {}", big.td, small.td);
        prop_assert_eq!(big.ldim, small.ldim);
        prop_assert!(big.delta <= small.delta);
    }
}
