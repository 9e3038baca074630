//! Blurring a configuration by a multiplicative group of constants.
//!
//! Blurring by H coarsens the graph-of-exp points to Gamma_H, whose
//! members are graph points times {0} x H. Here that is presented by
//! appending one generator pair per H-basis element (x-part zero) and
//! declaring it with denominator lcm(1..=denominator_bound), the bounded
//! stand-in for divisibility of H.

use crate::hspec::{validate_basis, HSpec};
use crate::present::GammaPresentation;
use crate::ConfigError;
use algebra_core::{IdealBasis, MonomialOrder, Polynomial, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub(crate) fn lcm_upto(d: u32) -> BigInt {
    (2..=d).fold(BigInt::one(), |l, k| l.lcm(&BigInt::from(k)))
}

fn unit_frac_row(m: usize, i: usize, l: &BigInt) -> Vec<Rat> {
    let mut row = vec![Rat::zero(); m];
    row[i] = Rat::new(BigInt::one(), l.clone());
    row
}

/// Blurs an unblurred presentation by `h`, appending generators for the
/// basis of H and declaring their bounded-denominator multiples.
pub fn blur(p: &GammaPresentation, h: &HSpec) -> Result<GammaPresentation, ConfigError> {
    if !p.blur().is_trivial() {
        return Err(ConfigError::UnsupportedHSpec(
            "presentation is already blurred".into(),
        ));
    }
    let m = p.n_pairs();
    let l = lcm_upto(p.denominator_bound());
    match h {
        HSpec::Trivial => Ok(p.clone()),
        HSpec::FullGm => {
            let mut decls = p.gamma_decls().to_vec();
            for i in 0..m {
                decls.push(unit_frac_row(m, i, &l));
            }
            GammaPresentation::new(
                p.generators().to_vec(),
                p.constants().to_vec(),
                p.relations().clone(),
                decls,
                HSpec::FullGm,
                p.denominator_bound(),
            )
        }
        HSpec::LatticeExp(basis) => {
            validate_basis(basis)?;
            let s = basis.len();
            append_pairs(p, "h", s, HSpec::LatticeExp(basis.clone()), &l, |_, _| None)
        }
        HSpec::ConstantsField(tag) => {
            let ties: Vec<usize> = p.constants().to_vec();
            let s = ties.len();
            append_pairs(
                p,
                "c",
                s,
                HSpec::ConstantsField(tag.clone()),
                &l,
                move |j, offsets| {
                    // tie the appended y-part to the j-th constant pair
                    let (m, s) = offsets;
                    Some(
                        Polynomial::var(2 * m + s + j)
                            .sub(&Polynomial::var(m + s + ties[j])),
                    )
                },
            )
        }
    }
}

/// Appends `s` pairs (x-part forced to zero), remapping the old relation
/// ring around them and declaring each new pair at denominator `l`.
fn append_pairs(
    p: &GammaPresentation,
    base: &str,
    s: usize,
    tag: HSpec,
    l: &BigInt,
    extra_rel: impl Fn(usize, (usize, usize)) -> Option<Polynomial>,
) -> Result<GammaPresentation, ConfigError> {
    let m = p.n_pairs();
    if s == 0 {
        return GammaPresentation::new(
            p.generators().to_vec(),
            p.constants().to_vec(),
            p.relations().clone(),
            p.gamma_decls().to_vec(),
            tag,
            p.denominator_bound(),
        );
    }
    let fresh = p.fresh_pair_labels(base, s);
    let mut gens = p.generators().to_vec();
    gens.extend(fresh);
    let vars: Vec<String> = gens
        .iter()
        .map(|(gx, _)| gx.clone())
        .chain(gens.iter().map(|(_, gy)| gy.clone()))
        .collect();
    // old ring: x_i at i, y_i at m+i; new ring: x_i at i, y_i at m+s+i
    let map: Vec<usize> = (0..m).chain(m + s..2 * m + s).collect();
    let mut rels: Vec<Polynomial> = p
        .relations()
        .gens()
        .iter()
        .map(|g| g.remap_vars(&map))
        .collect();
    for j in 0..s {
        rels.push(Polynomial::var(m + j));
        if let Some(r) = extra_rel(j, (m, s)) {
            rels.push(r);
        }
    }
    let ideal = IdealBasis::new(vars, rels, MonomialOrder::GrevLex);
    let mut decls: Vec<Vec<Rat>> = p
        .gamma_decls()
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.resize(m + s, Rat::zero());
            r
        })
        .collect();
    for j in 0..s {
        decls.push(unit_frac_row(m + s, m + j, l));
    }
    let mut constants = p.constants().to_vec();
    constants.extend(m..m + s);
    GammaPresentation::new(gens, constants, ideal, decls, tag, p.denominator_bound())
}

/// Splits a blurred presentation's pair indices into (original, appended).
///
/// For a lattice blur the appended block has the basis's length; for a
/// constants-field blur the appended pairs are recognized by their
/// declaration rows. This is a reporting convenience and assumes the
/// presentation came out of [`blur`].
pub fn split_blur_components(
    p: &GammaPresentation,
) -> Result<(Vec<usize>, Vec<usize>), ConfigError> {
    let m = p.n_pairs();
    let s = match p.blur() {
        HSpec::Trivial | HSpec::FullGm => 0,
        HSpec::LatticeExp(basis) => basis.len(),
        HSpec::ConstantsField(_) => {
            let l = lcm_upto(p.denominator_bound());
            let mut s = 0;
            while s < m {
                let i = m - 1 - s;
                let row = unit_frac_row(m, i, &l);
                if p.gamma_decls().iter().any(|r| r == &row) {
                    s += 1;
                } else {
                    break;
                }
            }
            s
        }
    };
    if s >= m {
        return Err(ConfigError::MalformedPresentation(
            "blur components exhaust the presentation".into(),
        ));
    }
    Ok(((0..m - s).collect(), (m - s..m).collect()))
}
