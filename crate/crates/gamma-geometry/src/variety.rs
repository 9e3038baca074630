//! Subvarieties of G^n = (Ga x Gm)^n and the Mat_n(Z) action on them.
//!
//! Coordinates are x1..xn (additive) and y1..yn (multiplicative). Ideals
//! are kept saturated at the y-coordinates, since those range over units.

use algebra_core::serial::{ideal_from_json, poly_from_json_in, poly_to_json};
use algebra_core::{GaussRat, IdealBasis, Monomial, MonomialOrder, Polynomial};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::intmat::IntMat;
use crate::GeomError;

/// Variable names x1..xn, y1..yn for the coordinate ring of G^n.
pub fn g_vars(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    v.extend((1..=n).map(|i| format!("y{i}")));
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct GSubvariety {
    n: usize,
    ideal: IdealBasis,
    irreducible_asserted: bool,
}

impl GSubvariety {
    /// Builds a subvariety of G^n from generators in the variables
    /// x1..xn, y1..yn. The ideal is saturated at every y-coordinate; a
    /// variety that becomes empty on the torus is rejected.
    pub fn new(
        n: usize,
        gens: Vec<Polynomial>,
        irreducible_asserted: bool,
    ) -> Result<Self, GeomError> {
        if n == 0 {
            return Err(GeomError::MalformedVariety("n must be positive".into()));
        }
        let ideal = IdealBasis::new(g_vars(n), gens, MonomialOrder::GrevLex);
        let unit_vars: Vec<usize> = (n..2 * n).collect();
        let ideal = ideal.saturate_units(&unit_vars)?;
        if ideal.is_unit_ideal()? {
            return Err(GeomError::MalformedVariety(
                "variety is empty on the torus".into(),
            ));
        }
        Ok(GSubvariety {
            n,
            ideal,
            irreducible_asserted,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ideal(&self) -> &IdealBasis {
        &self.ideal
    }

    pub fn irreducible_asserted(&self) -> bool {
        self.irreducible_asserted
    }

    pub fn dim(&self) -> Result<i64, GeomError> {
        Ok(self.ideal.dimension()?)
    }

    /// Index of x_i (0-based i) in the coordinate ring.
    pub fn x_index(&self, i: usize) -> usize {
        i
    }

    /// Index of y_i (0-based i) in the coordinate ring.
    pub fn y_index(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn to_json(&self) -> Value {
        let polys: Vec<Value> = self
            .ideal
            .gens()
            .iter()
            .map(|p| poly_to_json(p, self.ideal.vars()))
            .collect();
        json!({
            "n": self.n,
            "ideal": polys,
            "irreducible": self.irreducible_asserted,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, GeomError> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| GeomError::BadInput("missing field n".into()))? as usize;
        let irreducible = v
            .get("irreducible")
            .and_then(Value::as_bool)
            .unwrap_or(false);
        let ideal_val = v
            .get("ideal")
            .ok_or_else(|| GeomError::BadInput("missing field ideal".into()))?;
        let vars = g_vars(n);
        let gens = match ideal_val {
            // either a bare list of polynomials or a full ideal object
            Value::Array(polys) => polys
                .iter()
                .map(|p| poly_from_json_in(p, &vars))
                .collect::<Result<Vec<_>, _>>()?,
            _ => {
                let basis = ideal_from_json(ideal_val)?;
                if basis.vars() != vars.as_slice() {
                    return Err(GeomError::BadInput(format!(
                        "ideal variables {:?} do not match G^{n} coordinates",
                        basis.vars()
                    )));
                }
                basis.gens().to_vec()
            }
        };
        GSubvariety::new(n, gens, irreducible)
    }
}

/// A point of G^n with exact Gaussian-rational coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GPoint {
    pub x: Vec<GaussRat>,
    pub y: Vec<GaussRat>,
}

impl GPoint {
    pub fn new(x: Vec<GaussRat>, y: Vec<GaussRat>) -> Result<Self, GeomError> {
        if x.len() != y.len() {
            return Err(GeomError::BadInput(
                "point needs matching x and y lengths".into(),
            ));
        }
        if y.iter().any(|c| c.is_zero()) {
            return Err(GeomError::BadInput(
                "y-coordinates must be nonzero (units of Gm)".into(),
            ));
        }
        Ok(GPoint { x, y })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Coordinates in ring order x1..xn, y1..yn.
    pub fn coords(&self) -> Vec<GaussRat> {
        let mut c = self.x.clone();
        c.extend(self.y.iter().cloned());
        c
    }

    /// Exact membership test against the variety's generators.
    pub fn lies_on(&self, v: &GSubvariety) -> Result<bool, GeomError> {
        if self.n() != v.n() {
            return Err(GeomError::BadInput("point/variety size mismatch".into()));
        }
        let coords = self.coords();
        for g in v.ideal().gens() {
            if !g.eval_gauss(&coords)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        let pair = |c: &GaussRat| -> Value {
            let (re, im) = c.to_str_pair();
            json!([re, im])
        };
        json!({
            "x": self.x.iter().map(pair).collect::<Vec<_>>(),
            "y": self.y.iter().map(pair).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, GeomError> {
        let read = |key: &str| -> Result<Vec<GaussRat>, GeomError> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| GeomError::BadInput(format!("missing point field {key}")))?;
            arr.iter()
                .map(|c| {
                    let pair = c
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| GeomError::BadInput("coordinate must be [re, im]".into()))?;
                    let re = pair[0]
                        .as_str()
                        .ok_or_else(|| GeomError::BadInput("coordinate parts are strings".into()))?;
                    let im = pair[1]
                        .as_str()
                        .ok_or_else(|| GeomError::BadInput("coordinate parts are strings".into()))?;
                    Ok(GaussRat::from_str_pair(re, im)?)
                })
                .collect()
        };
        GPoint::new(read("x")?, read("y")?)
    }
}

/// Splits a matrix row into (positive part, negative part) exponent
/// monomials over the y-variables: y^{m+} and y^{m-}.
pub(crate) fn monomials_of_row(
    row: &[BigInt],
    n: usize,
    y_offset: usize,
) -> Result<(Monomial, Monomial), GeomError> {
    let mut plus = Monomial::one();
    let mut minus = Monomial::one();
    for (j, e) in row.iter().enumerate().take(n) {
        if e.is_zero() {
            continue;
        }
        let exp: u16 = e
            .abs()
            .try_into()
            .map_err(|_| GeomError::BadInput(format!("matrix entry {e} too large")))?;
        if e.is_positive() {
            plus.set_exponent(y_offset + j, exp);
        } else {
            minus.set_exponent(y_offset + j, exp);
        }
    }
    Ok((plus, minus))
}

/// The Zariski closure of M.V, where M acts additively on the x-block
/// (u = Mx) and by characters on the y-block (v_i = y^{M_i}). Negative
/// exponents are cleared inside the unit-saturated ring.
pub fn act(m: &IntMat, v: &GSubvariety) -> Result<GSubvariety, GeomError> {
    let n = v.n();
    if m.nrows() != n || m.ncols() != n {
        return Err(GeomError::BadInput(format!(
            "matrix must be {n}x{n} to act on G^{n}"
        )));
    }
    // ring: [x1..xn, y1..yn, t, u1..un, v1..vn]; eliminate the first 2n+1
    let mut vars = g_vars(n);
    vars.push("t".into());
    vars.extend((1..=n).map(|i| format!("u{i}")));
    vars.extend((1..=n).map(|i| format!("v{i}")));
    let t_idx = 2 * n;
    let u_idx = |i: usize| 2 * n + 1 + i;
    let v_idx = |i: usize| 3 * n + 1 + i;

    let base = v.ideal().extend_ring(&vars[2 * n..]);
    let mut gens: Vec<Polynomial> = base.gens().to_vec();

    // t * y1...yn = 1 keeps the torus coordinates invertible
    let mut prod_y = Monomial::var(t_idx, 1);
    for j in 0..n {
        prod_y.set_exponent(n + j, 1);
    }
    gens.push(Polynomial::term(GaussRat::from_int(1), prod_y).sub(&Polynomial::one()));

    for i in 0..n {
        // u_i - sum_j M_ij x_j
        let mut lin = Polynomial::var(u_idx(i));
        for j in 0..n {
            let e = m.get(i, j);
            if !e.is_zero() {
                let c = GaussRat::from_rat(algebra_core::Rat::from_integer(e.clone()));
                lin = lin.sub(&Polynomial::var(j).scale(&c));
            }
        }
        gens.push(lin);

        // v_i * y^{Mi-} - y^{Mi+}
        let (plus, minus) = monomials_of_row(m.row(i), n, n)?;
        let lhs = Polynomial::term(GaussRat::from_int(1), Monomial::var(v_idx(i), 1).mul(&minus));
        let rhs = Polynomial::term(GaussRat::from_int(1), plus);
        gens.push(lhs.sub(&rhs));
    }

    let big = IdealBasis::new(vars, gens, MonomialOrder::GrevLex);
    let keep: Vec<usize> = (2 * n + 1..4 * n + 1).collect();
    let image = big.eliminate(&keep)?;
    // the image ring [u1..un, v1..vn] realigns with [x1..xn, y1..yn]
    GSubvariety::new(n, image.gens().to_vec(), v.irreducible_asserted())
}

/// dim M.V, the dimension of the image closure.
pub fn dim_image(m: &IntMat, v: &GSubvariety) -> Result<i64, GeomError> {
    act(m, v)?.dim()
}
