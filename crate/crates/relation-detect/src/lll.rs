//! Exact LLL lattice basis reduction over the integers.
//!
//! Gram-Schmidt data is kept as big rationals, so the Lovasz condition is
//! decided exactly and the output is deterministic. The unimodular
//! transform from the input basis is recorded alongside the reduced rows.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::RelError;

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeBasis {
    /// Reduced basis rows.
    pub rows: Vec<Vec<BigInt>>,
    /// Unimodular matrix with `transform * input = rows`.
    pub transform: Vec<Vec<BigInt>>,
}

fn dot_qz(a: &[BigRational], b: &[BigInt]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * BigRational::from_integer(y.clone()))
        .sum()
}

fn round_rational(r: &BigRational) -> BigInt {
    // nearest integer, ties away from zero
    let two = BigInt::from(2);
    let num = r.numer();
    let den = r.denom();
    if num.is_negative() {
        -(((-num) * &two + den) / (den * &two))
    } else {
        (num * &two + den) / (den * &two)
    }
}

struct Gram {
    /// Squared norms of the orthogonalized rows.
    norms: Vec<BigRational>,
    /// mu[i][j] for j < i.
    mu: Vec<Vec<BigRational>>,
}

fn gram_schmidt(rows: &[Vec<BigInt>]) -> Result<Gram, RelError> {
    let n = rows.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms: Vec<BigRational> = Vec::with_capacity(n);
    let mut mu: Vec<Vec<BigRational>> = vec![vec![]; n];
    for i in 0..n {
        let mut v: Vec<BigRational> = rows[i]
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        mu[i] = Vec::with_capacity(i);
        for j in 0..i {
            let m = if norms[j].is_zero() {
                BigRational::zero()
            } else {
                dot_qz(&star[j], &rows[i]) / norms[j].clone()
            };
            for (vk, sk) in v.iter_mut().zip(&star[j]) {
                *vk -= &m * sk;
            }
            mu[i].push(m);
        }
        let norm: BigRational = v.iter().map(|x| x * x).sum();
        if norm.is_zero() {
            return Err(RelError::DependentRows);
        }
        norms.push(norm);
        star.push(v);
    }
    Ok(Gram { norms, mu })
}

/// Size-reduction step: makes |mu[k][l]| <= 1/2, updating basis, transform,
/// and the mu table in place. Requires `l < k`.
fn size_reduce(
    k: usize,
    l: usize,
    b: &mut [Vec<BigInt>],
    u: &mut [Vec<BigInt>],
    mu: &mut [Vec<BigRational>],
) {
    let half = BigRational::new(1.into(), 2.into());
    if mu[k][l].abs() <= half {
        return;
    }
    let q = round_rational(&mu[k][l]);
    let (lo, hi) = b.split_at_mut(k);
    for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
        *x -= &q * y;
    }
    let (lo, hi) = u.split_at_mut(k);
    for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
        *x -= &q * y;
    }
    let qq = BigRational::from_integer(q);
    let (mlo, mhi) = mu.split_at_mut(k);
    let mk = &mut mhi[0];
    mk[l] -= &qq;
    for i in 0..l {
        let t = &qq * &mlo[l][i];
        mk[i] -= t;
    }
}

/// LLL-reduces `rows` with parameter `delta` (given as a fraction, e.g.
/// `(3, 4)`; must satisfy 1/4 < delta <= 1). Rows must be linearly
/// independent, otherwise `DependentRows` is returned.
///
/// Gram-Schmidt data is computed once and then maintained incrementally
/// through size reductions and swaps, so the cost per step stays O(n).
pub fn lll_reduce(rows: &[Vec<BigInt>], delta: (i64, i64)) -> Result<LatticeBasis, RelError> {
    let n = rows.len();
    if n == 0 {
        return Ok(LatticeBasis {
            rows: vec![],
            transform: vec![],
        });
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(RelError::BadInput("ragged lattice rows".into()));
    }
    let delta = BigRational::new(delta.0.into(), delta.1.into());
    if delta <= BigRational::new(1.into(), 4.into()) || delta > BigRational::one() {
        return Err(RelError::BadInput("delta must lie in (1/4, 1]".into()));
    }

    let mut b: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    // one full orthogonalization up front; also verifies independence
    let g = gram_schmidt(&b)?;
    let mut norms = g.norms;
    let mut mu = g.mu;

    let mut k = 1usize;
    while k < n {
        size_reduce(k, k - 1, &mut b, &mut u, &mut mu);
        let m = mu[k][k - 1].clone();
        let rhs = (delta.clone() - &m * &m) * norms[k - 1].clone();
        if norms[k] < rhs {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            for j in 0..k.saturating_sub(1) {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            let b_new = &norms[k] + &m * &m * &norms[k - 1];
            let mu_new = &m * &norms[k - 1] / &b_new;
            norms[k] = &norms[k - 1] * &norms[k] / &b_new;
            norms[k - 1] = b_new;
            mu[k][k - 1] = mu_new.clone();
            for i in k + 1..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                let upd = &t + &mu_new * &mu[i][k];
                mu[i][k - 1] = upd;
            }
            k = k.max(2) - 1;
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                size_reduce(k, l, &mut b, &mut u, &mut mu);
            }
            k += 1;
        }
    }

    Ok(LatticeBasis {
        rows: b,
        transform: u,
    })
}

/// Determinant by fraction-free Gaussian elimination (Bareiss); used in
/// tests and for unimodularity checks.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "det needs a square matrix");
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    fn norm_sq(v: &[BigInt]) -> BigInt {
        dot(v, v)
    }

    /// Brute-force shortest nonzero vector over small coefficient ranges.
    fn shortest_norm_sq(rows: &[Vec<BigInt>], c: i64) -> BigInt {
        let n = rows.len();
        let width = rows[0].len();
        let mut best: Option<BigInt> = None;
        let mut coef = vec![-c; n];
        loop {
            if coef.iter().any(|&x| x != 0) {
                let mut v = vec![BigInt::zero(); width];
                for (i, &ci) in coef.iter().enumerate() {
                    for (slot, x) in v.iter_mut().zip(&rows[i]) {
                        *slot += x * BigInt::from(ci);
                    }
                }
                let ns = norm_sq(&v);
                if best.as_ref().is_none_or(|b| &ns < b) {
                    best = Some(ns);
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return best.unwrap();
                }
                coef[i] += 1;
                if coef[i] <= c {
                    break;
                }
                coef[i] = -c;
                i += 1;
            }
        }
    }

    fn check_transform(input: &[Vec<BigInt>], out: &LatticeBasis) {
        // rows = transform * input, and transform is unimodular.
        let n = input.len();
        for i in 0..n {
            let width = input[0].len();
            for c in 0..width {
                let got: BigInt = (0..n).map(|j| &out.transform[i][j] * &input[j][c]).sum();
                assert_eq!(got, out.rows[i][c], "transform mismatch at ({i}, {c})");
            }
        }
        let d = det(&out.transform);
        assert!(d == BigInt::one() || d == -BigInt::one(), "det {d}");
    }

    #[test]
    fn identity_is_fixed() {
        let rows = bi(&[&[1, 0], &[0, 1]]);
        let out = lll_reduce(&rows, (3, 4)).unwrap();
        assert_eq!(out.rows, rows);
        check_transform(&rows, &out);
    }

    #[test]
    fn skewed_plane_basis_reduces_to_unit_vectors() {
        let rows = bi(&[&[1, 0], &[4, 1]]);
        let out = lll_reduce(&rows, (3, 4)).unwrap();
        check_transform(&rows, &out);
        // shortest possible norms in Z^2 with determinant 1
        assert_eq!(norm_sq(&out.rows[0]), BigInt::one());
        assert_eq!(norm_sq(&out.rows[1]), BigInt::one());
    }

    #[test]
    fn classic_two_dim_example() {
        let rows = bi(&[&[201, 37], &[1648, 297]]);
        let out = lll_reduce(&rows, (3, 4)).unwrap();
        check_transform(&rows, &out);
        // |det| preserved
        assert_eq!(det(&out.rows).abs(), det(&rows).abs());
        // first vector within the LLL approximation bound 2^{(n-1)/2} of
        // the true shortest vector
        let lambda = shortest_norm_sq(&rows, 60);
        assert!(norm_sq(&out.rows[0]) <= BigInt::from(2) * lambda);
    }

    #[test]
    fn dependent_rows_are_rejected() {
        let rows = bi(&[&[1, 2, 3], &[2, 4, 6]]);
        assert!(matches!(
            lll_reduce(&rows, (3, 4)),
            Err(RelError::DependentRows)
        ));
    }

    #[test]
    fn bad_delta_is_rejected() {
        let rows = bi(&[&[1]]);
        assert!(lll_reduce(&rows, (1, 4)).is_err());
        assert!(lll_reduce(&rows, (5, 4)).is_err());
    }

    #[test]
    fn three_dim_reduction_finds_short_vector() {
        let rows = bi(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        let out = lll_reduce(&rows, (3, 4)).unwrap();
        check_transform(&rows, &out);
        let lambda = shortest_norm_sq(&rows, 8);
        // delta = 3/4 gives ||b1||^2 <= 2^{n-1} lambda^2
        assert!(norm_sq(&out.rows[0]) <= BigInt::from(4) * lambda);
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&bi(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(det(&bi(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(
            det(&bi(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])),
            BigInt::from(-1)
        );
        assert_eq!(
            det(&bi(&[&[2, -3, 1], &[2, 0, -1], &[1, 4, 5]])),
            BigInt::from(49)
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn gram_determinant_is_preserved(
            a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9
        ) {
            let m = bi(&[&[a, b], &[c, d]]);
            prop_assume!(det(&m) != BigInt::zero());
            let out = lll_reduce(&m, (3, 4)).unwrap();
            check_transform(&m, &out);
            prop_assert_eq!(det(&out.rows).abs(), det(&m).abs());
        }
    }
}
