//! Membership in the graph of the exponential differential equation:
//! pairs (x, y) of series with Dy = y Dx and y invertible.

use algebra_core::GaussRat;
use serde_json::{json, Value};

use crate::series::{exp_series, PowerSeries};
use crate::EdeError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffPoint {
    pub x: PowerSeries,
    pub y: PowerSeries,
}

impl DiffPoint {
    pub fn new(x: PowerSeries, y: PowerSeries) -> Self {
        DiffPoint { x, y }
    }

    pub fn to_json(&self) -> Value {
        json!({ "x": self.x.to_json(), "y": self.y.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self, EdeError> {
        let x = PowerSeries::from_json(
            v.get("x")
                .ok_or_else(|| EdeError::BadInput("point JSON needs x".into()))?,
        )?;
        let y = PowerSeries::from_json(
            v.get("y")
                .ok_or_else(|| EdeError::BadInput("point JSON needs y".into()))?,
        )?;
        Ok(DiffPoint { x, y })
    }
}

/// True when Dy = y Dx holds through order N-1 and y(0) is invertible.
pub fn in_gamma_de(p: &DiffPoint, n: usize) -> Result<bool, EdeError> {
    if p.x.order() < n || p.y.order() < n {
        return Err(EdeError::LengthMismatch {
            left: p.x.order().min(p.y.order()),
            right: n,
        });
    }
    if p.y.coeff(0).is_zero() {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    let x = p.x.truncate(n);
    let y = p.y.truncate(n);
    let dy = y.d();
    let ydx = y.truncate(n - 1).mul(&x.d())?;
    Ok(dy == ydx)
}

/// The point (x, c e^x) of the graph, for x with zero constant term and a
/// nonzero constant c.
pub fn make_gamma_point(x: &PowerSeries, c: &GaussRat) -> Result<DiffPoint, EdeError> {
    if c.is_zero() {
        return Err(EdeError::ZeroConstant);
    }
    let y = exp_series(x)?.scale(c);
    Ok(DiffPoint::new(x.clone(), y))
}
