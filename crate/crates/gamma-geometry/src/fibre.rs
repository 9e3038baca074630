//! Dimension check for the fibre of a subvariety over a coset of the
//! tangent bundle of a multiplicative subgroup.
//!
//! For J = {y^M = 1} the tangent bundle is TJ = {Mx = 0, y^M = 1}, of
//! dimension 2(n - rank M), and dim J = n - rank M. The check computes
//! dim(V cap (gamma + TJ)) exactly and compares against dim J; failure
//! means gamma lies outside the open set where generic fibres are small,
//! not that the inputs are malformed.

use algebra_core::{GaussRat, IdealBasis, MonomialOrder, Polynomial};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::intmat::IntMat;
use crate::variety::{monomials_of_row, GPoint, GSubvariety};
use crate::GeomError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreReport {
    /// Dimension of V cap (gamma + TJ); -1 when the fibre is empty.
    pub fiber_dim: i64,
    /// dim J = n - rank M.
    pub dim_j: i64,
    pub satisfies_lemma: bool,
}

impl FibreReport {
    pub fn to_json(&self) -> Value {
        json!({
            "fiber_dim": self.fiber_dim,
            "dim_j": self.dim_j,
            "satisfies_lemma": self.satisfies_lemma,
        })
    }
}

fn char_value(row: &[BigInt], y: &[GaussRat]) -> Result<GaussRat, GeomError> {
    let mut c = GaussRat::from_int(1);
    for (j, e) in row.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let exp: u32 = e
            .abs()
            .try_into()
            .map_err(|_| GeomError::BadInput(format!("matrix entry {e} too large")))?;
        let base = if e.is_positive() {
            y[j].clone()
        } else {
            y[j].inv()?
        };
        c = c * base.pow(exp);
    }
    Ok(c)
}

/// Equations cutting out gamma + TJ inside the ring of V: the linear rows
/// Mx = M gamma_x and the monomial rows y^{M_i} = gamma_y^{M_i} with
/// negative exponents cleared.
fn coset_equations(
    m: &IntMat,
    gamma: &GPoint,
    n: usize,
) -> Result<Vec<Polynomial>, GeomError> {
    let mut gens = Vec::new();
    for i in 0..n {
        let row = m.row(i);
        let mut lin = Polynomial::zero();
        let mut rhs = GaussRat::from_int(0);
        for (j, e) in row.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let coef = GaussRat::from_rat(num_rational::BigRational::from_integer(e.clone()));
            lin = lin.add(&Polynomial::var(j).scale(&coef));
            rhs = rhs + coef * gamma.x[j].clone();
        }
        lin = lin.sub(&Polynomial::constant(rhs));
        if !lin.is_zero() {
            gens.push(lin);
        }
        let (plus, minus) = monomials_of_row(row, n, n)?;
        let c = char_value(row, &gamma.y)?;
        let eq = Polynomial::term(GaussRat::from_int(1), plus)
            .sub(&Polynomial::term(c, minus));
        if !eq.is_zero() {
            gens.push(eq);
        }
    }
    Ok(gens)
}

/// Exact fibre-dimension check of V over the coset gamma + TJ.
pub fn fibre_dim_check(
    v: &GSubvariety,
    m: &IntMat,
    gamma: &GPoint,
) -> Result<FibreReport, GeomError> {
    let n = v.n();
    if m.nrows() != n || m.ncols() != n {
        return Err(GeomError::BadInput(format!(
            "matrix must be {n}x{n}, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if gamma.n() != n {
        return Err(GeomError::BadInput("point/variety size mismatch".into()));
    }
    if !gamma.lies_on(v)? {
        return Err(GeomError::PointNotOnVariety);
    }
    let dim_j = n as i64 - m.rank() as i64;
    let mut gens = v.ideal().gens().to_vec();
    gens.extend(coset_equations(m, gamma, n)?);
    let basis = IdealBasis::new(v.ideal().vars().to_vec(), gens, MonomialOrder::GrevLex);
    let y_indices: Vec<usize> = (0..n).map(|i| v.y_index(i)).collect();
    let fiber = basis.saturate_units(&y_indices)?;
    let fiber_dim = if fiber.is_unit_ideal()? {
        -1
    } else {
        fiber.dimension()?
    };
    Ok(FibreReport {
        fiber_dim,
        dim_j,
        satisfies_lemma: fiber_dim <= dim_j,
    })
}
