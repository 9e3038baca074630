//! End-to-end exercises of the public algebra surface: basis computation,
//! elimination chains, saturation, dimension and serialization.

use algebra_core::ideal::Budget;
use algebra_core::serial::{ideal_from_json, ideal_to_json, poly_to_json};
use algebra_core::{parse_poly, CoreError, IdealBasis, MonomialOrder, Polynomial};

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn ideal(srcs: &[&str], names: &[&str], order: MonomialOrder) -> IdealBasis {
    let v = vars(names);
    let gens: Vec<Polynomial> = srcs.iter().map(|s| parse_poly(s, &v).unwrap()).collect();
    IdealBasis::new(v, gens, order)
}

#[test]
fn twisted_cubic_elimination() {
    let i = ideal(
        &["y - x^2", "z - x^3"],
        &["x", "y", "z"],
        MonomialOrder::GrevLex,
    );
    assert_eq!(i.dimension().unwrap(), 1);
    let yz = i.eliminate(&[1, 2]).unwrap();
    let v = vars(&["y", "z"]);
    assert_eq!(yz.gens(), &[parse_poly("y^3 - z^2", &v).unwrap()]);
    assert_eq!(yz.dimension().unwrap(), 1);
    // Every original generator maps to zero after re-adjoining x.
    let back = yz.extend_ring(&["x".to_string()]);
    assert!(!back
        .contains(&parse_poly("y - x^2", &vars(&["y", "z", "x"])).unwrap())
        .unwrap());
}

#[test]
fn membership_across_orders_agrees() {
    let lex = ideal(
        &["x^2 + y^2 + z^2 - 1", "x - y", "z - x*y"],
        &["x", "y", "z"],
        MonomialOrder::Lex,
    );
    let grev = lex.with_order(MonomialOrder::GrevLex);
    let v = vars(&["x", "y", "z"]);
    let probes = [
        "x - y",
        "z - x^2",
        "2*x^2 + z^2 - 1",
        "x^3",
        "z - y^2",
        "x + y + z",
    ];
    for probe in probes {
        let p = parse_poly(probe, &v).unwrap();
        assert_eq!(
            lex.contains(&p).unwrap(),
            grev.contains(&p).unwrap(),
            "membership disagrees between orders for {probe}"
        );
    }
}

#[test]
fn saturation_strips_unit_locus_components() {
    // (x*y, y*z) saturated at y is (x, z).
    let i = ideal(&["x*y", "y*z"], &["x", "y", "z"], MonomialOrder::GrevLex);
    let s = i.saturate_units(&[1]).unwrap();
    let expect = ideal(&["x", "z"], &["x", "y", "z"], MonomialOrder::GrevLex);
    assert!(s.ideal_eq(&expect).unwrap());
    assert_eq!(s.dimension().unwrap(), 1);
}

#[test]
fn unit_saturation_of_torus_like_set() {
    // y^2 = y on the locus where y is a unit forces y = 1; combined with
    // x*y = x nothing more happens.
    let i = ideal(&["y^2 - y", "x*y - x"], &["x", "y"], MonomialOrder::GrevLex);
    let s = i.saturate_units(&[1]).unwrap();
    let expect = ideal(&["y - 1"], &["x", "y"], MonomialOrder::GrevLex);
    assert!(s.ideal_eq(&expect).unwrap());
}

#[test]
fn budget_exhaustion_is_reported_not_looped() {
    let i = ideal(
        &["x^4*y - z^2", "y^3 - x*z", "z^3 - x^2*y^2 - 1"],
        &["x", "y", "z"],
        MonomialOrder::Lex,
    );
    let mut budget = Budget::new(10);
    match i.groebner_with(&mut budget) {
        Err(CoreError::ResourceExhausted) => {}
        other => panic!("expected ResourceExhausted, got {other:?}"),
    }
}

#[test]
fn serialized_bases_are_byte_stable() {
    let mk = || {
        ideal(
            &["x^2 - i*y", "y^2 + 3/7*x - 1"],
            &["x", "y"],
            MonomialOrder::GrevLex,
        )
    };
    let a = mk();
    let b = mk();
    let ja = serde_json::to_string(&ideal_to_json(&a)).unwrap();
    let jb = serde_json::to_string(&ideal_to_json(&b)).unwrap();
    assert_eq!(ja, jb);
    let round = ideal_from_json(&serde_json::from_str(&ja).unwrap()).unwrap();
    assert_eq!(round, a);

    // Groebner bases serialize deterministically too.
    let ga: Vec<String> = a
        .groebner()
        .unwrap()
        .iter()
        .map(|g| serde_json::to_string(&poly_to_json(g, a.vars())).unwrap())
        .collect();
    let gb: Vec<String> = b
        .groebner()
        .unwrap()
        .iter()
        .map(|g| serde_json::to_string(&poly_to_json(g, b.vars())).unwrap())
        .collect();
    assert_eq!(ga, gb);
}

#[test]
fn generators_reduce_to_zero_in_own_basis() {
    let cases = [
        vec!["x^2 - y", "x*y - 1"],
        vec!["x + y + z", "x*y + y*z + x*z", "x*y*z - 1"],
        vec!["x^2 + i", "y - x^3"],
    ];
    for gens in cases {
        let names: &[&str] = if gens.iter().any(|g| g.contains('z')) {
            &["x", "y", "z"]
        } else {
            &["x", "y"]
        };
        let i = ideal(&gens, names, MonomialOrder::GrevLex);
        for g in i.gens() {
            assert!(i.contains(g).unwrap(), "generator escaped its own ideal");
        }
        // A Groebner basis of a Groebner basis is itself.
        let gb = i.groebner().unwrap().to_vec();
        let again = IdealBasis::new(i.vars().to_vec(), gb.clone(), i.order());
        assert_eq!(again.groebner().unwrap(), gb.as_slice());
    }
}

#[test]
fn gaussian_coefficients_flow_through_elimination() {
    // x = i*t, y = t^2 eliminates to y + x^2 (since x^2 = -t^2).
    let i = ideal(
        &["x - i*t", "y - t^2"],
        &["t", "x", "y"],
        MonomialOrder::GrevLex,
    );
    let xy = i.eliminate(&[1, 2]).unwrap();
    let v = vars(&["x", "y"]);
    assert_eq!(xy.gens(), &[parse_poly("x^2 + y", &v).unwrap()]);
}
