//! Exact dense linear algebra over the Gaussian rationals, used for
//! coefficient-space computations (kernels of evaluation matrices, linear
//! parts of elimination ideals).

use num_traits::Zero;

use crate::gauss::GaussRat;
use crate::rat::Rat;

/// Row-reduces `rows` in place to reduced row echelon form and returns the
/// pivot column indices.
pub fn rref(rows: &mut Vec<Vec<GaussRat>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot nonzero");
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<GaussRat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel `{v : A v = 0}`; each vector has length
/// `ncols`. Deterministic: one vector per free column, in column order.
pub fn kernel_basis(rows: &[Vec<GaussRat>], ncols: usize) -> Vec<Vec<GaussRat>> {
    let mut m: Vec<Vec<GaussRat>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(ncols, GaussRat::zero());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    let is_pivot: Vec<bool> = {
        let mut b = vec![false; ncols];
        for &p in &pivots {
            b[p] = true;
        }
        b
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![GaussRat::zero(); ncols];
        v[free] = GaussRat::from_int(1);
        for (ri, &p) in pivots.iter().enumerate() {
            v[p] = -m[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn transpose(rows: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    (0..ncols)
        .map(|c| (0..nrows).map(|r| rows[r][c].clone()).collect())
        .collect()
}

/// Splits a Gaussian-rational matrix into the real matrix
/// `[[Re A], [Im A]]`, so rational kernels of the split matrix are exactly
/// the rational vectors annihilated by the original.
pub fn split_re_im(rows: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let mut out = Vec::with_capacity(rows.len() * 2);
    for r in rows {
        out.push(
            r.iter()
                .map(|c| GaussRat::from_rat(c.re.clone()))
                .collect(),
        );
        out.push(
            r.iter()
                .map(|c| GaussRat::from_rat(c.im.clone()))
                .collect(),
        );
    }
    out
}

/// Scales a rational vector to a primitive integer vector (clearing
/// denominators, dividing by the gcd, first nonzero entry positive).
/// Returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[Rat]) -> Option<Vec<num_bigint::BigInt>> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Signed;
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let den = crate::rat::common_denominator(v);
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| {
            let scaled = x * Rat::from_integer(den.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -x.clone();
        }
    }
    Some(ints)
}
