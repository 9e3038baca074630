//! JSON interchange for polynomials and ideal bases.
//!
//! Coefficients travel as exact rational strings (`"p/q"` pairs for real and
//! imaginary part); float literals are rejected. Exponent maps are keyed by
//! variable name.

use serde_json::{json, Map, Value};

use crate::gauss::GaussRat;
use crate::ideal::IdealBasis;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::CoreError;

fn bad(msg: impl Into<String>) -> CoreError {
    CoreError::Serde(msg.into())
}

/// Serializes a polynomial in the ambient ring given by `vars`. Terms are
/// emitted in descending grevlex order so output is deterministic.
pub fn poly_to_json(p: &Polynomial, vars: &[String]) -> Value {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| MonomialOrder::GrevLex.cmp(b, a));
    let terms: Vec<Value> = terms
        .into_iter()
        .map(|(m, c)| {
            let (re, im) = c.to_str_pair();
            let mut exps = Map::new();
            for (i, e) in m.iter() {
                let name = vars
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("_v{i}"));
                exps.insert(name, json!(e));
            }
            json!({"coef": [re, im], "exps": Value::Object(exps)})
        })
        .collect();
    json!({"vars": vars, "terms": terms})
}

/// Parses a polynomial against an ambient variable list. The object's own
/// `vars` entry, when present, must be a subset of the ambient variables.
pub fn poly_from_json_in(v: &Value, ambient: &[String]) -> Result<Polynomial, CoreError> {
    let obj = v.as_object().ok_or_else(|| bad("polynomial must be an object"))?;
    if let Some(own) = obj.get("vars") {
        for name in as_string_list(own)? {
            if !ambient.contains(&name) {
                return Err(bad(format!(
                    "polynomial variable {name:?} is not an ambient variable"
                )));
            }
        }
    }
    let terms = obj
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| bad("polynomial needs a \"terms\" array"))?;
    let mut p = Polynomial::zero();
    for t in terms {
        let t = t.as_object().ok_or_else(|| bad("term must be an object"))?;
        let coef = t
            .get("coef")
            .and_then(|c| c.as_array())
            .ok_or_else(|| bad("term needs \"coef\": [re, im]"))?;
        if coef.len() != 2 {
            return Err(bad("\"coef\" must have exactly two entries"));
        }
        let re = coef[0]
            .as_str()
            .ok_or_else(|| bad("coefficients must be exact rational strings, not numbers"))?;
        let im = coef[1]
            .as_str()
            .ok_or_else(|| bad("coefficients must be exact rational strings, not numbers"))?;
        let c = GaussRat::from_str_pair(re, im)?;
        let mut m = Monomial::one();
        if let Some(exps) = t.get("exps") {
            let exps = exps
                .as_object()
                .ok_or_else(|| bad("\"exps\" must be an object"))?;
            for (name, e) in exps {
                let idx = ambient
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| bad(format!("unknown variable {name:?} in exponent map")))?;
                let e = e
                    .as_u64()
                    .ok_or_else(|| bad(format!("exponent of {name:?} must be a non-negative integer")))?;
                if e > u16::MAX as u64 {
                    return Err(bad(format!("exponent of {name:?} too large")));
                }
                if e > 0 && m.exponent(idx) != 0 {
                    return Err(bad(format!("variable {name:?} repeated in exponent map")));
                }
                m.set_exponent(idx, e as u16);
            }
        }
        p.add_term(&c, &m);
    }
    Ok(p)
}

/// Parses a standalone polynomial object carrying its own `vars` list.
pub fn poly_from_json(v: &Value) -> Result<(Polynomial, Vec<String>), CoreError> {
    let obj = v.as_object().ok_or_else(|| bad("polynomial must be an object"))?;
    let vars = as_string_list(
        obj.get("vars")
            .ok_or_else(|| bad("standalone polynomial needs \"vars\""))?,
    )?;
    let p = poly_from_json_in(v, &vars)?;
    Ok((p, vars))
}

pub fn order_to_str(order: MonomialOrder) -> &'static str {
    match order {
        MonomialOrder::Lex => "lex",
        MonomialOrder::GrevLex => "grevlex",
        MonomialOrder::Elim(_) => "elim",
    }
}

pub fn order_from_str(s: &str) -> Result<MonomialOrder, CoreError> {
    match s {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        other => Err(bad(format!("unknown order tag {other:?}"))),
    }
}

pub fn ideal_to_json(ideal: &IdealBasis) -> Value {
    let gens: Vec<Value> = ideal
        .gens()
        .iter()
        .map(|g| poly_to_json(g, ideal.vars()))
        .collect();
    json!({
        "vars": ideal.vars(),
        "order": order_to_str(ideal.order()),
        "gens": gens,
    })
}

pub fn ideal_from_json(v: &Value) -> Result<IdealBasis, CoreError> {
    let obj = v.as_object().ok_or_else(|| bad("ideal must be an object"))?;
    let vars = as_string_list(obj.get("vars").ok_or_else(|| bad("ideal needs \"vars\""))?)?;
    let order = match obj.get("order") {
        None => MonomialOrder::GrevLex,
        Some(o) => order_from_str(
            o.as_str()
                .ok_or_else(|| bad("\"order\" must be a string"))?,
        )?,
    };
    let gens = obj
        .get("gens")
        .and_then(|g| g.as_array())
        .ok_or_else(|| bad("ideal needs a \"gens\" array"))?;
    let gens = gens
        .iter()
        .map(|g| poly_from_json_in(g, &vars))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdealBasis::new(vars, gens, order))
}

fn as_string_list(v: &Value) -> Result<Vec<String>, CoreError> {
    let arr = v.as_array().ok_or_else(|| bad("expected a string array"))?;
    arr.iter()
        .map(|s| {
            s.as_str()
                .map(str::to_owned)
                .ok_or_else(|| bad("expected a string array"))
        })
        .collect()
}
