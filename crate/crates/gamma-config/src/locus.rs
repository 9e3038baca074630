//! The strong-rotundity side of the Ax-Schanuel pair check.
//!
//! For a tuple `a` of declared points, W = loc(a) x V is assembled on
//! disjoint coordinate blocks and handed to the strict rotundity checker.
//! The locus is taken over the prime field: the configuration's relations
//! are all the algebraic structure available at this scale.

use crate::predim::combination_equations;
use crate::present::GammaPresentation;
use crate::ConfigError;
use crate::lattice::snf_rank;
use algebra_core::{IdealBasis, MonomialOrder, Polynomial, Rat};
use gamma_geometry::{is_strongly_rotund, GSubvariety, RotundityVerdict};

/// Zariski closure of the image of the combination points `a` in G^t.
pub fn locus_variety(
    p: &GammaPresentation,
    a: &[Vec<Rat>],
) -> Result<GSubvariety, ConfigError> {
    validate_tuple(p, a)?;
    if a.is_empty() {
        return Err(ConfigError::BadInput(
            "cannot build the locus of an empty tuple".into(),
        ));
    }
    let m = p.n_pairs();
    let t = a.len();
    let fresh = p.fresh_pair_labels("a", t);
    let mut extra: Vec<String> = fresh.iter().map(|(fx, _)| fx.clone()).collect();
    extra.extend(fresh.iter().map(|(_, fy)| fy.clone()));
    let ext = p.relations().extend_ring(&extra);
    let mut gens = ext.gens().to_vec();
    gens.extend(combination_equations(m, 2 * m, 2 * m + t, a)?);
    let ideal = IdealBasis::new(ext.vars().to_vec(), gens, MonomialOrder::GrevLex);
    let units: Vec<usize> = (m..2 * m).chain(2 * m + t..2 * m + 2 * t).collect();
    let ideal = ideal.saturate_units(&units)?;
    let keep: Vec<usize> = (2 * m..2 * m + 2 * t).collect();
    let projected = ideal.eliminate(&keep)?;
    Ok(GSubvariety::new(t, projected.gens().to_vec(), true)?)
}

/// Builds W = loc(a) x V and runs the strict rotundity check at `bound`.
/// With empty `a` this is exactly the check on V.
pub fn locus_strong_rotund(
    p: &GammaPresentation,
    a: &[Vec<Rat>],
    v: &GSubvariety,
    bound: i64,
) -> Result<RotundityVerdict, ConfigError> {
    validate_tuple(p, a)?;
    if a.is_empty() {
        return Ok(is_strongly_rotund(v, bound)?);
    }
    let m = p.n_pairs();
    let gamma_c = p.sublattice(p.constants()).basis_rat_rows();
    let base = snf_rank(&gamma_c, m);
    let mut stacked = gamma_c;
    stacked.extend(a.iter().cloned());
    if snf_rank(&stacked, m) != base + a.len() {
        return Err(ConfigError::BadInput(
            "tuple is Q-linearly dependent over the declared constants".into(),
        ));
    }
    let loc = locus_variety(p, a)?;
    let t = loc.n();
    let nv = v.n();
    let n = t + nv;
    let loc_map: Vec<usize> = (0..t).chain(n..n + t).collect();
    let v_map: Vec<usize> = (t..t + nv).chain(n + t..2 * n).collect();
    let mut gens: Vec<Polynomial> = loc
        .ideal()
        .gens()
        .iter()
        .map(|g| g.remap_vars(&loc_map))
        .collect();
    gens.extend(v.ideal().gens().iter().map(|g| g.remap_vars(&v_map)));
    let w = GSubvariety::new(n, gens, v.irreducible_asserted())?;
    Ok(is_strongly_rotund(&w, bound)?)
}

fn validate_tuple(p: &GammaPresentation, a: &[Vec<Rat>]) -> Result<(), ConfigError> {
    let m = p.n_pairs();
    for q in a {
        if q.len() != m {
            return Err(ConfigError::MalformedPresentation(format!(
                "tuple point has {} coefficients, expected {m}",
                q.len()
            )));
        }
    }
    let lat = p.lattice();
    if let Some(i) = (0..a.len()).find(|&i| !lat.contains(&a[i])) {
        return Err(ConfigError::BadInput(format!(
            "tuple point {i} is not a declared Gamma-point"
        )));
    }
    Ok(())
}
