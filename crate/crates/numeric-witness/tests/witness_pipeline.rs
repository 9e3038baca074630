//! End-to-end pipeline properties: success reports re-verify at higher
//! precision, runs replay bit-for-bit, the numeric transversality
//! obstruction agrees with the exact rotundity checker, and tightening the
//! tolerance keeps Newton inside the same basin.

use algebra_core::parse_poly;
use gamma_config::HSpec;
use gamma_geometry::{g_vars, is_rotund, GSubvariety, RotundityVerdict};
use num_bigint::BigInt;
use numeric_witness::{find_regular_point, find_witness, verify_witness, WitnessError};

fn variety(n: usize, srcs: &[&str]) -> GSubvariety {
    let vars = g_vars(n);
    let gens: Vec<_> = srcs.iter().map(|s| parse_poly(s, &vars).unwrap()).collect();
    GSubvariety::new(n, gens, true).unwrap()
}

fn dense() -> HSpec {
    HSpec::LatticeExp(vec!["1".into(), "2*pi*i".into()])
}

/// Rotund varieties of dimension n, the success corpus.
fn good_corpus() -> Vec<GSubvariety> {
    vec![
        variety(1, &["y1 - x1"]),
        variety(1, &["x1 - 1"]),
        variety(2, &["y1 - x2", "y2 - x1"]),
        variety(2, &["y1 - x1 - x2", "y2 - x1*x2"]),
    ]
}

/// Varieties of dimension n that fail rotundity; the fiber obstruction must
/// stop the pipeline.
fn bad_corpus() -> Vec<GSubvariety> {
    vec![
        variety(2, &["x2", "y2 - 1"]),
        variety(2, &["x2 - 2*x1", "y2 - y1^2"]),
        variety(2, &["x1 + x2 - 1", "y1*y2 - 2"]),
    ]
}

#[test]
fn success_reports_verify_at_higher_precision() {
    for (k, v) in good_corpus().iter().enumerate() {
        let r = find_witness(v, &dense(), 2, 1e-9, 50)
            .unwrap_or_else(|e| panic!("corpus entry {k}: {e:?}"));
        assert!(r.residual_variety < 1e-9, "entry {k}");
        assert!(r.residual_gamma < 1e-9, "entry {k}");
        assert!(
            verify_witness(&r, v, &dense()),
            "entry {k} failed the high-precision recheck"
        );
        let qmax = BigInt::from(r.qmax);
        for (p, t) in &r.h_exponents {
            assert!(p.denom() <= &qmax && t.denom() <= &qmax);
        }
    }
}

#[test]
fn runs_replay_bit_for_bit() {
    let v = variety(2, &["y1 - x2", "y2 - x1"]);
    let a = find_witness(&v, &dense(), 9, 1e-9, 50).unwrap();
    let b = find_witness(&v, &dense(), 9, 1e-9, 50).unwrap();
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());

    let p = find_regular_point(&v, 41).unwrap();
    let q = find_regular_point(&v, 41).unwrap();
    assert_eq!(p.coords(), q.coords());
}

#[test]
fn good_corpus_is_certified_rotund() {
    for v in good_corpus() {
        assert!(matches!(
            is_rotund(&v, 3).unwrap(),
            RotundityVerdict::RotundUpTo { .. }
        ));
    }
}

#[test]
fn rotundity_failures_never_produce_a_witness() {
    for (k, v) in bad_corpus().iter().enumerate() {
        assert!(
            matches!(is_rotund(v, 3).unwrap(), RotundityVerdict::NotRotund { .. }),
            "entry {k} should fail the exact rotundity check"
        );
        match find_witness(v, &dense(), 0, 1e-9, 50) {
            Err(WitnessError::NoTransversalPoint) | Err(WitnessError::NewtonDiverged) => {}
            other => panic!("entry {k}: expected an obstruction, got {other:?}"),
        }
    }
}

#[test]
fn tighter_tolerance_stays_in_the_newton_basin() {
    let v = variety(1, &["y1 - x1"]);
    let loose = find_witness(&v, &HSpec::Trivial, 10, 1e-6, 1).unwrap();
    let tight = find_witness(&v, &HSpec::Trivial, 10, 1e-9, 1).unwrap();
    let dist = (loose.point.x[0] - tight.point.x[0]).norm();
    assert!(dist < 10.0 * 1e-6, "basin jump of {dist:e}");

    let v2 = variety(2, &["y1 - x2", "y2 - x1"]);
    let loose2 = find_witness(&v2, &dense(), 4, 1e-6, 50).unwrap();
    let tight2 = find_witness(&v2, &dense(), 4, 1e-9, 50).unwrap();
    for i in 0..2 {
        assert!((loose2.point.x[i] - tight2.point.x[i]).norm() < 10.0 * 1e-6);
        assert!((loose2.point.y[i] - tight2.point.y[i]).norm() < 10.0 * 1e-6);
    }
}
