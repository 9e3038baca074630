//! Bounded search for failures of relative Gamma-closedness.
//!
//! A is relatively closed in P when every tuple with predimension <= 0
//! over A already lies in Gamma(A). The search ranges over integer
//! combinations of the declared rows with bounded coefficients, so a clean
//! verdict is evidence up to the stated bounds, not a proof.

use crate::predim::{predimension, validate_subset, PredimReport};
use crate::present::GammaPresentation;
use crate::ConfigError;
use algebra_core::{rat_to_string, CoreError, Rat};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeSet;

/// Distinct candidate points enumerated before giving up.
const CANDIDATE_LIMIT: usize = 512;
/// Predimension evaluations allowed across all tuple sizes.
const PREDIM_CALL_LIMIT: usize = 4000;

#[derive(Clone, Debug)]
pub enum Closedness {
    /// No violating tuple among <= max_points combinations with
    /// coefficients bounded by height.
    ClosedUpTo { max_points: u32, height: u32 },
    /// A tuple outside Gamma(A) with delta(b/A) <= 0.
    NotClosed {
        witness: Vec<Vec<Rat>>,
        report: PredimReport,
    },
}

impl Closedness {
    pub fn to_json(&self) -> Value {
        match self {
            Closedness::ClosedUpTo { max_points, height } => json!({
                "status": "ClosedUpTo",
                "max_points": max_points,
                "height": height,
            }),
            Closedness::NotClosed { witness, report } => json!({
                "status": "NotClosed",
                "witness": witness
                    .iter()
                    .map(|row| row.iter().map(rat_to_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "report": report.to_json(),
            }),
        }
    }
}

/// Searches tuples of length <= `rank_bound` built from integer
/// combinations (coefficients bounded by `comb_bound`) of the declared
/// rows for a witness that A is not relatively Gamma-closed in P.
pub fn is_rel_gamma_closed(
    p: &GammaPresentation,
    a: &[usize],
    rank_bound: u32,
    comb_bound: u32,
) -> Result<Closedness, ConfigError> {
    if rank_bound == 0 || comb_bound == 0 {
        return Err(ConfigError::BadInput(
            "rank and combination bounds must be at least 1".into(),
        ));
    }
    let a = validate_subset(p, a)?;
    let candidates = candidate_points(p, &a, comb_bound)?;
    let mut calls = 0usize;
    for size in 1..=rank_bound as usize {
        if size > candidates.len() {
            break;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            calls += 1;
            if calls > PREDIM_CALL_LIMIT {
                return Err(ConfigError::Core(CoreError::ResourceExhausted));
            }
            let tuple: Vec<Vec<Rat>> = idx.iter().map(|&i| candidates[i].clone()).collect();
            let report = predimension(p, &a, &tuple)?;
            if report.delta <= 0 {
                return Ok(Closedness::NotClosed {
                    witness: tuple,
                    report,
                });
            }
            if !advance(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    Ok(Closedness::ClosedUpTo {
        max_points: rank_bound,
        height: comb_bound,
    })
}

/// Nonzero integer combinations of the declared rows with coefficients in
/// [-bound, bound], deduplicated, sign-normalized, and with members of
/// Gamma(A) dropped (they can never witness a failure).
fn candidate_points(
    p: &GammaPresentation,
    a: &[usize],
    bound: u32,
) -> Result<Vec<Vec<Rat>>, ConfigError> {
    let decls = p.gamma_decls();
    let s = decls.len();
    if s == 0 {
        return Ok(Vec::new());
    }
    let width = 2 * (bound as usize) + 1;
    let mut states = 1usize;
    for _ in 0..s {
        states = states.saturating_mul(width);
        if states > 4 * CANDIDATE_LIMIT {
            return Err(ConfigError::Core(CoreError::ResourceExhausted));
        }
    }
    let lat_a = p.sublattice(a);
    let m = p.n_pairs();
    let b = bound as i64;
    let mut coeffs = vec![-b; s];
    let mut seen = BTreeSet::new();
    loop {
        // canonical sign: first nonzero coefficient positive
        if coeffs.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
            let mut v = vec![Rat::zero(); m];
            for (c, row) in coeffs.iter().zip(decls) {
                if *c == 0 {
                    continue;
                }
                let cc = BigInt::from(*c);
                for (slot, q) in v.iter_mut().zip(row) {
                    *slot += q * &cc;
                }
            }
            if !v.iter().all(Zero::is_zero) && !lat_a.contains(&v) {
                seen.insert(v);
                if seen.len() > CANDIDATE_LIMIT {
                    return Err(ConfigError::Core(CoreError::ResourceExhausted));
                }
            }
        }
        // odometer over coefficient space
        let mut k = 0;
        loop {
            if k == s {
                return Ok(seen.into_iter().collect());
            }
            if coeffs[k] < b {
                coeffs[k] += 1;
                break;
            }
            coeffs[k] = -b;
            k += 1;
        }
    }
}

fn advance(idx: &mut [usize], n: usize) -> bool {
    let size = idx.len();
    let mut k = size;
    while k > 0 {
        k -= 1;
        if idx[k] < n - (size - k) {
            idx[k] += 1;
            for j in k + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
