//! Finitely presented configurations: labeled points of Ga x Gm, algebraic
//! relations between their coordinates, and declared Gamma-membership.

use crate::hspec::HSpec;
use crate::lattice::Lattice;
use crate::ConfigError;
use algebra_core::serial::{ideal_from_json, ideal_to_json};
use algebra_core::{IdealBasis, MonomialOrder, Rat};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::str::FromStr;

/// A finite presentation of a Gamma-field configuration.
///
/// `generators[i]` is the label pair for the i-th point (x-part, y-part).
/// The coordinate ring has all x-labels first, then all y-labels, and the
/// relation ideal is stored saturated at the y-coordinates, which are units.
/// `gamma_decls` rows are rational vectors over pair indices; the declared
/// part of Gamma is their integer span. `denominator_bound` caps the
/// multiples consulted when checking purity.
#[derive(Clone, Debug)]
pub struct GammaPresentation {
    generators: Vec<(String, String)>,
    constants: Vec<usize>,
    relations: IdealBasis,
    gamma_decls: Vec<Vec<Rat>>,
    blur: HSpec,
    denominator_bound: u32,
}

impl GammaPresentation {
    pub fn new(
        generators: Vec<(String, String)>,
        constants: Vec<usize>,
        relations: IdealBasis,
        gamma_decls: Vec<Vec<Rat>>,
        blur: HSpec,
        denominator_bound: u32,
    ) -> Result<GammaPresentation, ConfigError> {
        let m = generators.len();
        if m == 0 {
            return Err(ConfigError::MalformedPresentation(
                "presentation needs at least one generator pair".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for (gx, gy) in &generators {
            for label in [gx, gy] {
                if label.is_empty() {
                    return Err(ConfigError::MalformedPresentation(
                        "empty generator label".into(),
                    ));
                }
                if !seen.insert(label.clone()) {
                    return Err(ConfigError::MalformedPresentation(format!(
                        "duplicate generator label '{label}'"
                    )));
                }
            }
        }
        let mut constants = constants;
        constants.sort_unstable();
        constants.dedup();
        if let Some(&bad) = constants.iter().find(|&&i| i >= m) {
            return Err(ConfigError::MalformedPresentation(format!(
                "constant index {bad} out of range for {m} pairs"
            )));
        }
        let expected: Vec<String> = generators
            .iter()
            .map(|(gx, _)| gx.clone())
            .chain(generators.iter().map(|(_, gy)| gy.clone()))
            .collect();
        if relations.vars() != expected.as_slice() {
            return Err(ConfigError::MalformedPresentation(
                "relation ring must list all x-labels then all y-labels".into(),
            ));
        }
        for row in &gamma_decls {
            if row.len() != m {
                return Err(ConfigError::MalformedPresentation(format!(
                    "gamma declaration has {} coefficients, expected {m}",
                    row.len()
                )));
            }
        }
        if denominator_bound == 0 {
            return Err(ConfigError::MalformedPresentation(
                "denominator bound must be at least 1".into(),
            ));
        }
        let y_indices: Vec<usize> = (m..2 * m).collect();
        let relations = relations
            .with_order(MonomialOrder::GrevLex)
            .saturate_units(&y_indices)?;
        if relations.is_unit_ideal()? {
            return Err(ConfigError::MalformedPresentation(
                "relations are inconsistent on (Ga x Gm)^m".into(),
            ));
        }
        Ok(GammaPresentation {
            generators,
            constants,
            relations,
            gamma_decls,
            blur,
            denominator_bound,
        })
    }

    pub fn n_pairs(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[(String, String)] {
        &self.generators
    }

    pub fn constants(&self) -> &[usize] {
        &self.constants
    }

    /// Relation ideal, already saturated at the y-coordinates.
    pub fn relations(&self) -> &IdealBasis {
        &self.relations
    }

    pub fn gamma_decls(&self) -> &[Vec<Rat>] {
        &self.gamma_decls
    }

    pub fn blur(&self) -> &HSpec {
        &self.blur
    }

    pub fn denominator_bound(&self) -> u32 {
        self.denominator_bound
    }

    /// Ring variables: all x-labels, then all y-labels.
    pub fn coordinate_vars(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|(gx, _)| gx.clone())
            .chain(self.generators.iter().map(|(_, gy)| gy.clone()))
            .collect()
    }

    /// Column index of the x-coordinate of pair `i` in the relation ring.
    pub fn x_var(&self, i: usize) -> usize {
        debug_assert!(i < self.n_pairs());
        i
    }

    /// Column index of the y-coordinate of pair `i` in the relation ring.
    pub fn y_var(&self, i: usize) -> usize {
        debug_assert!(i < self.n_pairs());
        self.n_pairs() + i
    }

    /// The declared Gamma-lattice over pair indices.
    pub fn lattice(&self) -> Lattice {
        Lattice::from_rows(self.n_pairs(), &self.gamma_decls)
    }

    /// Declared vectors supported on the given pairs: Gamma(A) for A the
    /// index set.
    pub fn sublattice(&self, indices: &[usize]) -> Lattice {
        let mut keep = vec![false; self.n_pairs()];
        for &i in indices {
            keep[i] = true;
        }
        self.lattice().restrict_support(&keep)
    }

    pub fn is_declared(&self, v: &[Rat]) -> bool {
        self.lattice().contains(v)
    }

    /// Label pairs `{base}x{j}`, `{base}y{j}` avoiding existing labels.
    pub(crate) fn fresh_pair_labels(&self, base: &str, count: usize) -> Vec<(String, String)> {
        let taken: BTreeSet<&str> = self
            .generators
            .iter()
            .flat_map(|(gx, gy)| [gx.as_str(), gy.as_str()])
            .collect();
        let mut out = Vec::with_capacity(count);
        let mut j = 1usize;
        while out.len() < count {
            let lx = format!("{base}x{j}");
            let ly = format!("{base}y{j}");
            if !taken.contains(lx.as_str()) && !taken.contains(ly.as_str()) {
                out.push((lx, ly));
            }
            j += 1;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let gamma: Vec<Value> = self
            .gamma_decls
            .iter()
            .map(|row| {
                let entries: Vec<Value> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, q)| !q.is_zero())
                    .map(|(k, q)| json!([k, [int_json(q.numer()), int_json(q.denom())]]))
                    .collect();
                Value::Array(entries)
            })
            .collect();
        json!({
            "generators": self.generators.iter().map(|(gx, gy)| json!([gx, gy])).collect::<Vec<_>>(),
            "constants": self.constants,
            "relations": ideal_to_json(&self.relations),
            "gamma": gamma,
            "blur": self.blur.to_json(),
            "denominator_bound": self.denominator_bound,
        })
    }

    pub fn from_json(v: &Value) -> Result<GammaPresentation, ConfigError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ConfigError::MalformedPresentation("expected an object".into()))?;
        let gens_v = obj
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| ConfigError::MalformedPresentation("missing 'generators'".into()))?;
        let mut generators = Vec::with_capacity(gens_v.len());
        for g in gens_v {
            let pair = g.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                ConfigError::MalformedPresentation("each generator is a [x,y] label pair".into())
            })?;
            let gx = pair[0].as_str().ok_or_else(bad_label)?;
            let gy = pair[1].as_str().ok_or_else(bad_label)?;
            generators.push((gx.to_string(), gy.to_string()));
        }
        let mut constants = Vec::new();
        if let Some(cs) = obj.get("constants") {
            let cs = cs.as_array().ok_or_else(|| {
                ConfigError::MalformedPresentation("'constants' must be an array".into())
            })?;
            for c in cs {
                let i = c.as_u64().ok_or_else(|| {
                    ConfigError::MalformedPresentation("constant indices are integers".into())
                })?;
                constants.push(i as usize);
            }
        }
        let relations = match obj.get("relations") {
            Some(r) => ideal_from_json(r)?,
            None => {
                return Err(ConfigError::MalformedPresentation(
                    "missing 'relations'".into(),
                ))
            }
        };
        let m = generators.len();
        let mut gamma_decls = Vec::new();
        if let Some(gv) = obj.get("gamma") {
            let gv = gv.as_array().ok_or_else(|| {
                ConfigError::MalformedPresentation("'gamma' must be an array".into())
            })?;
            for decl in gv {
                let entries = decl.as_array().ok_or_else(|| {
                    ConfigError::MalformedPresentation(
                        "each gamma declaration is an array of [index, [num, den]]".into(),
                    )
                })?;
                let mut row = vec![Rat::zero(); m];
                for e in entries {
                    let e = e.as_array().filter(|a| a.len() == 2).ok_or_else(bad_entry)?;
                    let k = e[0].as_u64().ok_or_else(bad_entry)? as usize;
                    if k >= m {
                        return Err(ConfigError::MalformedPresentation(format!(
                            "gamma declaration index {k} out of range"
                        )));
                    }
                    let frac = e[1].as_array().filter(|a| a.len() == 2).ok_or_else(bad_entry)?;
                    let num = int_from_json(&frac[0])?;
                    let den = int_from_json(&frac[1])?;
                    if den.is_zero() {
                        return Err(ConfigError::MalformedPresentation(
                            "gamma coefficient with zero denominator".into(),
                        ));
                    }
                    row[k] = &row[k] + Rat::new(num, den);
                }
                gamma_decls.push(row);
            }
        }
        let blur = match obj.get("blur") {
            Some(b) => HSpec::from_json(b)?,
            None => HSpec::Trivial,
        };
        let denominator_bound = obj
            .get("denominator_bound")
            .and_then(Value::as_u64)
            .unwrap_or(1);
        let denominator_bound = u32::try_from(denominator_bound).map_err(|_| {
            ConfigError::MalformedPresentation("denominator bound out of range".into())
        })?;
        GammaPresentation::new(
            generators,
            constants,
            relations,
            gamma_decls,
            blur,
            denominator_bound,
        )
    }
}

fn bad_label() -> ConfigError {
    ConfigError::MalformedPresentation("generator labels must be strings".into())
}

fn bad_entry() -> ConfigError {
    ConfigError::MalformedPresentation("gamma entries have the form [index, [num, den]]".into())
}

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(n) => json!(n),
        None => json!(x.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt, ConfigError> {
    if let Some(n) = v.as_i64() {
        return Ok(BigInt::from(n));
    }
    if let Some(s) = v.as_str() {
        if let Ok(x) = BigInt::from_str(s) {
            return Ok(x);
        }
    }
    Err(ConfigError::MalformedPresentation(format!(
        "expected an integer, got {v}"
    )))
}
