//! The blurring subgroup H of the multiplicative group.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::ConfigError;

#[derive(Clone, Debug, PartialEq)]
pub enum HSpec {
    /// H = {1}: no blurring at all.
    Trivial,
    /// H = exp(Q b_1 + ... + Q b_s) for the labeled exponents b_j. The
    /// basis is asserted to be Q-linearly independent; approximate
    /// exponentiation is `LatticeExp(["1", "2*pi*i"])`.
    LatticeExp(Vec<String>),
    /// H = gm(C), the multiplicative group of the constants subfield.
    ConstantsField(String),
    /// H = gm(F); blurring by it turns Gamma into the whole group G(F).
    FullGm,
}

impl HSpec {
    pub fn is_trivial(&self) -> bool {
        matches!(self, HSpec::Trivial)
    }

    /// Numeric values of a finite exponent basis: empty for the trivial
    /// subgroup, the parsed labels for `LatticeExp`. The other kinds have
    /// no finite exponent basis.
    pub fn basis_values(&self) -> Result<Vec<Complex64>, ConfigError> {
        match self {
            HSpec::Trivial => Ok(Vec::new()),
            HSpec::LatticeExp(labels) => labels.iter().map(|l| parse_constant_label(l)).collect(),
            other => Err(ConfigError::BadInput(format!(
                "{other:?} has no finite exponent basis"
            ))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            HSpec::Trivial => json!({"kind": "Trivial"}),
            HSpec::LatticeExp(basis) => json!({"kind": "LatticeExp", "basis": basis}),
            HSpec::ConstantsField(tag) => json!({"kind": "ConstantsField", "tag": tag}),
            HSpec::FullGm => json!({"kind": "FullGm"}),
        }
    }

    pub fn from_json(v: &Value) -> Result<HSpec, ConfigError> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| ConfigError::BadInput("blur spec needs a kind".into()))?;
        match kind {
            "Trivial" => Ok(HSpec::Trivial),
            "LatticeExp" => {
                let basis: Vec<String> = v
                    .get("basis")
                    .and_then(Value::as_array)
                    .ok_or_else(|| ConfigError::BadInput("LatticeExp needs a basis".into()))?
                    .iter()
                    .map(|b| {
                        b.as_str()
                            .map(str::to_owned)
                            .ok_or_else(|| ConfigError::BadInput("basis labels must be strings".into()))
                    })
                    .collect::<Result<_, _>>()?;
                validate_basis(&basis)?;
                Ok(HSpec::LatticeExp(basis))
            }
            "ConstantsField" => {
                let tag = v
                    .get("tag")
                    .and_then(Value::as_str)
                    .ok_or_else(|| ConfigError::BadInput("ConstantsField needs a tag".into()))?;
                Ok(HSpec::ConstantsField(tag.to_owned()))
            }
            "FullGm" => Ok(HSpec::FullGm),
            other => Err(ConfigError::BadInput(format!(
                "unknown blur kind {other:?}"
            ))),
        }
    }
}

pub(crate) fn validate_basis(basis: &[String]) -> Result<(), ConfigError> {
    if basis.is_empty() {
        return Err(ConfigError::UnsupportedHSpec(
            "exponent basis must be nonempty".into(),
        ));
    }
    for (i, l) in basis.iter().enumerate() {
        let z = parse_constant_label(l)?;
        if z.norm() == 0.0 {
            return Err(ConfigError::UnsupportedHSpec(format!(
                "basis exponent {l:?} is zero"
            )));
        }
        if basis[..i].contains(l) {
            return Err(ConfigError::UnsupportedHSpec(format!(
                "duplicate basis exponent {l:?}"
            )));
        }
    }
    Ok(())
}

/// Parses a constant label: a `*`-separated product of factors, each a
/// rational literal, `pi`, or `i`. Examples: "1", "2*pi*i", "-1/2*pi".
pub fn parse_constant_label(s: &str) -> Result<Complex64, ConfigError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ConfigError::BadInput("empty constant label".into()));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for factor in s.split('*') {
        match factor.trim() {
            "pi" => acc *= std::f64::consts::PI,
            "i" => acc *= Complex64::i(),
            lit => {
                let r = algebra_core::rat_from_str(lit)
                    .map_err(|e| ConfigError::BadInput(format!("label {s:?}: {e}")))?;
                acc *= num_traits::ToPrimitive::to_f64(&r).ok_or_else(|| {
                    ConfigError::BadInput(format!("label {s:?} does not fit in an f64"))
                })?;
            }
        }
    }
    Ok(acc)
}
