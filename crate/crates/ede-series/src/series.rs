//! Truncated formal power series over Q(i) with termwise derivation.
//!
//! A series carries its truncation order N and exactly N+1 coefficients;
//! binary operations require equal truncation orders. Products truncate
//! back to order N, so every identity asserted downstream is "through
//! order N" at best and the derivative drops one order.

use algebra_core::GaussRat;
use serde_json::{json, Value};

use crate::EdeError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<GaussRat>,
}

impl PowerSeries {
    /// Series from explicit coefficients c_0..c_N.
    pub fn from_coeffs(coeffs: Vec<GaussRat>) -> Result<Self, EdeError> {
        if coeffs.is_empty() {
            return Err(EdeError::BadInput("series needs at least order 0".into()));
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn zero(n: usize) -> Self {
        PowerSeries {
            coeffs: vec![GaussRat::from_int(0); n + 1],
        }
    }

    pub fn constant(c: GaussRat, n: usize) -> Self {
        let mut s = PowerSeries::zero(n);
        s.coeffs[0] = c;
        s
    }

    pub fn one(n: usize) -> Self {
        PowerSeries::constant(GaussRat::from_int(1), n)
    }

    /// The series t (zero when the truncation order is 0).
    pub fn t(n: usize) -> Self {
        let mut s = PowerSeries::zero(n);
        if n >= 1 {
            s.coeffs[1] = GaussRat::from_int(1);
        }
        s
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> GaussRat {
        self.coeffs.get(k).cloned().unwrap_or_else(|| GaussRat::from_int(0))
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, n: usize) -> PowerSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(n + 1);
        coeffs.resize(n + 1, GaussRat::from_int(0));
        PowerSeries { coeffs }
    }

    fn check_len(&self, other: &PowerSeries) -> Result<(), EdeError> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(EdeError::LengthMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries, EdeError> {
        self.check_len(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(PowerSeries { coeffs })
    }

    pub fn sub(&self, other: &PowerSeries) -> Result<PowerSeries, EdeError> {
        self.check_len(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(PowerSeries { coeffs })
    }

    /// Product truncated back to the common order.
    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries, EdeError> {
        self.check_len(other)?;
        let n = self.order();
        let mut coeffs = vec![GaussRat::from_int(0); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn scale(&self, c: &GaussRat) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// Termwise derivative; the truncation order drops by one (a constant
    /// of order 0 maps to the zero series of order 0).
    pub fn d(&self) -> PowerSeries {
        if self.coeffs.len() == 1 {
            return PowerSeries::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| GaussRat::from_int(k as i64) * a.clone())
            .collect();
        PowerSeries { coeffs }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "N": self.order(),
            "coeffs": self
                .coeffs
                .iter()
                .map(|c| {
                    let (re, im) = c.to_str_pair();
                    json!([re, im])
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<PowerSeries, EdeError> {
        let n = v
            .get("N")
            .and_then(Value::as_u64)
            .ok_or_else(|| EdeError::BadInput("series JSON needs an integer N".into()))?
            as usize;
        let arr = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| EdeError::BadInput("series JSON needs a coeffs array".into()))?;
        if arr.len() != n + 1 {
            return Err(EdeError::BadInput(format!(
                "expected {} coefficients for order {n}, got {}",
                n + 1,
                arr.len()
            )));
        }
        let coeffs = arr
            .iter()
            .map(|pair| {
                let parts = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| EdeError::BadInput("coefficient must be [re, im]".into()))?;
                let re = parts[0]
                    .as_str()
                    .ok_or_else(|| EdeError::BadInput("coefficient parts are strings".into()))?;
                let im = parts[1]
                    .as_str()
                    .ok_or_else(|| EdeError::BadInput("coefficient parts are strings".into()))?;
                GaussRat::from_str_pair(re, im)
                    .map_err(|e| EdeError::BadInput(format!("bad coefficient: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PowerSeries::from_coeffs(coeffs)
    }
}

/// Exponential of a series with zero constant term: the unique y with
/// y(0) = 1 and Dy = y Dx through the truncation order, via the recurrence
/// k c_k = sum_{j=1..k} j a_j c_{k-j}.
pub fn exp_series(x: &PowerSeries) -> Result<PowerSeries, EdeError> {
    if !x.coeff(0).is_zero() {
        return Err(EdeError::NonzeroConstantTerm);
    }
    let n = x.order();
    let mut c = vec![GaussRat::from_int(0); n + 1];
    c[0] = GaussRat::from_int(1);
    for k in 1..=n {
        let mut acc = GaussRat::from_int(0);
        for j in 1..=k {
            let a = x.coeff(j);
            if a.is_zero() {
                continue;
            }
            acc = acc + GaussRat::from_int(j as i64) * a * c[k - j].clone();
        }
        let k_inv = GaussRat::from_int(k as i64).inv().expect("k >= 1");
        c[k] = acc * k_inv;
    }
    Ok(PowerSeries { coeffs: c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra_core::{rat_from_str, Rat};

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn q(s: &str) -> GaussRat {
        GaussRat::from_rat(rat_from_str(s).unwrap())
    }

    fn series(coeffs: &[i64]) -> PowerSeries {
        PowerSeries::from_coeffs(coeffs.iter().map(|&c| g(c)).collect()).unwrap()
    }

    #[test]
    fn derivative_of_constants_and_monomials() {
        assert!(series(&[5]).d().is_zero());
        assert_eq!(PowerSeries::t(4).d(), series(&[1, 0, 0, 0]));
        // t^3 + 2t -> 3t^2 + 2
        let s = series(&[0, 2, 0, 1]);
        assert_eq!(s.d(), series(&[2, 0, 3]));
    }

    #[test]
    fn derivative_drops_the_order_by_one() {
        let s = PowerSeries::t(6);
        assert_eq!(s.order(), 6);
        assert_eq!(s.d().order(), 5);
        assert_eq!(series(&[3]).d().order(), 0);
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(exp_series(&PowerSeries::zero(5)).unwrap(), PowerSeries::one(5));
    }

    #[test]
    fn exp_of_t_has_factorial_coefficients() {
        let e = exp_series(&PowerSeries::t(6)).unwrap();
        let mut fact = Rat::from_integer(1.into());
        for k in 0..=6usize {
            if k > 0 {
                fact *= Rat::from_integer((k as i64).into());
            }
            assert_eq!(e.coeff(k), GaussRat::from_rat(fact.recip()));
        }
    }

    #[test]
    fn exp_of_t_squared_matches_the_recurrence_oracle() {
        let t = PowerSeries::t(6);
        let x = t.mul(&t).unwrap();
        let e = exp_series(&x).unwrap();
        assert_eq!(e.coeff(0), g(1));
        assert_eq!(e.coeff(1), g(0));
        assert_eq!(e.coeff(2), g(1));
        assert_eq!(e.coeff(3), g(0));
        assert_eq!(e.coeff(4), q("1/2"));
        assert_eq!(e.coeff(5), g(0));
        assert_eq!(e.coeff(6), q("1/6"));
    }

    #[test]
    fn exp_rejects_nonzero_constant_term() {
        let err = exp_series(&PowerSeries::one(4)).unwrap_err();
        assert!(matches!(err, EdeError::NonzeroConstantTerm));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let err = series(&[1, 2]).add(&series(&[1, 2, 3])).unwrap_err();
        assert!(matches!(err, EdeError::LengthMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn product_truncates_to_the_common_order() {
        let t = PowerSeries::t(2);
        let sq = t.mul(&t).unwrap();
        assert_eq!(sq, series(&[0, 0, 1]));
        let cube = sq.mul(&t).unwrap();
        assert!(cube.is_zero(), "t^3 truncates away at order 2");
    }

    #[test]
    fn json_round_trip() {
        let mut s = PowerSeries::t(3);
        s = s.scale(&GaussRat::new(
            rat_from_str("2/3").unwrap(),
            rat_from_str("-1/7").unwrap(),
        ));
        let back = PowerSeries::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_rejects_inconsistent_lengths() {
        let v = serde_json::json!({"N": 3, "coeffs": [["0","0"], ["1","0"]]});
        assert!(PowerSeries::from_json(&v).is_err());
    }
}
