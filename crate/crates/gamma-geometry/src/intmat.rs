//! Integer matrices: rational rank, canonical row-space representatives,
//! and Smith normal form with transform tracking.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::GeomError;

#[derive(Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
    rank: OnceLock<usize>,
}

impl Clone for IntMat {
    fn clone(&self) -> Self {
        let rank = OnceLock::new();
        if let Some(r) = self.rank.get() {
            let _ = rank.set(*r);
        }
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
            rank,
        }
    }
}

impl PartialEq for IntMat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for IntMat {}

impl PartialOrd for IntMat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntMat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows
            .cmp(&other.rows)
            .then_with(|| self.cols.cmp(&other.cols))
            .then_with(|| self.data.cmp(&other.data))
    }
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "dimension mismatch");
        IntMat {
            rows,
            cols,
            data,
            rank: OnceLock::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMat::new(r, c, data)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rank = OnceLock::new();
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Rank over the rationals, cached.
    pub fn rank(&self) -> usize {
        *self.rank.get_or_init(|| {
            let (reduced, _) = self.rational_rref();
            reduced.len()
        })
    }

    /// RREF of the row space over Q. Returns (nonzero reduced rows, pivot
    /// column indices).
    fn rational_rref(&self) -> (Vec<Vec<BigRational>>, Vec<usize>) {
        let mut m: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..self.cols {
                        let t = &m[r][j] * &f;
                        m[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        (m, pivots)
    }

    /// Canonical representative of the rational row space: the reduced
    /// echelon basis with each row scaled to a primitive integer vector
    /// (positive leading entry), zero rows dropped. Two matrices share this
    /// value iff they have the same row space over Q.
    pub fn rowspace_canonical(&self) -> IntMat {
        let (rref, _) = self.rational_rref();
        let mut out: Vec<BigInt> = Vec::new();
        let nrows = rref.len();
        for row in rref {
            let mut denom = BigInt::one();
            for x in &row {
                denom = denom.lcm(x.denom());
            }
            let ints: Vec<BigInt> = row.iter().map(|x| (x * &denom).to_integer()).collect();
            let mut g = BigInt::zero();
            for x in &ints {
                g = g.gcd(x);
            }
            for x in ints {
                out.push(x / &g);
            }
        }
        IntMat::new(nrows, self.cols, out)
    }

    /// Canonical row-space representative padded with zero rows to the
    /// original square shape (used as an enumeration key and as a concrete
    /// witness matrix).
    pub fn rowspace_canonical_padded(&self) -> IntMat {
        let c = self.rowspace_canonical();
        let mut data = c.data;
        data.resize(self.rows * self.cols, BigInt::zero());
        IntMat::new(self.rows, self.cols, data)
    }

    /// Smith normal form: returns (U, S, V) with U * self * V = S, S
    /// diagonal with nonnegative entries d_1 | d_2 | ... Transform matrices
    /// are unimodular.
    pub fn smith(&self) -> (IntMat, IntMat, IntMat) {
        let mut s = self.clone();
        let mut u = IntMat::identity(self.rows);
        let mut v = IntMat::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            // find the entry of smallest nonzero absolute value in the
            // trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    if !s.get(i, j).is_zero()
                        && pivot.is_none_or(|(pi, pj)| s.get(i, j).abs() < s.get(pi, pj).abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // clear row and column t by repeated remainder reduction
            let mut dirty = true;
            while dirty {
                dirty = false;
                for i in t + 1..self.rows {
                    if !s.get(i, t).is_zero() {
                        let q = rounded_div(s.get(i, t), s.get(t, t));
                        s.row_sub(i, t, &q);
                        u.row_sub(i, t, &q);
                        if !s.get(i, t).is_zero() {
                            s.swap_rows(t, i);
                            u.swap_rows(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if !s.get(t, j).is_zero() {
                        let q = rounded_div(s.get(t, j), s.get(t, t));
                        s.col_sub(j, t, &q);
                        v.col_sub(j, t, &q);
                        if !s.get(t, j).is_zero() {
                            s.swap_cols(t, j);
                            v.swap_cols(t, j);
                            dirty = true;
                        }
                    }
                }
            }

            // divisibility fixup: d_t must divide every later entry
            let mut fixed = true;
            'scan: for i in t + 1..self.rows {
                for j in t + 1..self.cols {
                    if !(s.get(i, j) % s.get(t, t)).is_zero() {
                        // fold row i into row t and redo this pivot
                        for c in 0..self.cols {
                            let val = s.get(t, c) + s.get(i, c);
                            s.set(t, c, val);
                        }
                        for c in 0..self.rows {
                            let val = u.get(t, c) + u.get(i, c);
                            u.set(t, c, val);
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                continue;
            }
            if s.get(t, t).is_negative() {
                for c in 0..self.cols {
                    let val = -s.get(t, c);
                    s.set(t, c, val);
                }
                for c in 0..self.rows {
                    let val = -u.get(t, c);
                    u.set(t, c, val);
                }
            }
            t += 1;
        }
        (u, s, v)
    }

    /// The nonzero diagonal invariants of the Smith form.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let (_, s, _) = self.smith();
        (0..self.rows.min(self.cols))
            .map(|i| s.get(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    /// Basis of the right integer kernel {v : self * v = 0}, returned as
    /// rows of a matrix (possibly with zero rows count).
    pub fn right_kernel(&self) -> IntMat {
        let (_, s, v) = self.smith();
        let n = self.rows.min(self.cols);
        let mut kernel_cols = Vec::new();
        for j in 0..self.cols {
            if j >= n || s.get(j, j).is_zero() {
                kernel_cols.push(j);
            }
        }
        let mut out = IntMat::zeros(kernel_cols.len(), self.cols);
        for (r, &j) in kernel_cols.iter().enumerate() {
            for i in 0..self.cols {
                out.set(r, i, v.get(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
        self.rank = OnceLock::new();
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
        self.rank = OnceLock::new();
    }

    /// row[i] -= q * row[t]
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * self.get(t, j);
            let val = self.get(i, j) - delta;
            self.data[i * self.cols + j] = val;
        }
        self.rank = OnceLock::new();
    }

    /// col[j] -= q * col[t]
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * self.get(i, t);
            let val = self.get(i, j) - delta;
            self.data[i * self.cols + j] = val;
        }
        self.rank = OnceLock::new();
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rows)
            .map(|i| {
                Value::Array(
                    self.row(i)
                        .iter()
                        .map(|x| match x.to_string().parse::<i64>() {
                            Ok(n) => json!(n),
                            Err(_) => json!(x.to_string()),
                        })
                        .collect(),
                )
            })
            .collect();
        Value::Array(rows)
    }

    pub fn from_json(v: &Value) -> Result<IntMat, GeomError> {
        let arr = v
            .as_array()
            .ok_or_else(|| GeomError::BadInput("matrix must be an array of rows".into()))?;
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(arr.len());
        for row in arr {
            let row = row
                .as_array()
                .ok_or_else(|| GeomError::BadInput("matrix row must be an array".into()))?;
            let mut out = Vec::with_capacity(row.len());
            for x in row {
                let n = match x {
                    Value::Number(_) => x.as_i64(),
                    Value::String(s) => s.parse::<i64>().ok(),
                    _ => None,
                }
                .ok_or_else(|| GeomError::BadInput(format!("bad matrix entry {x}")))?;
                out.push(n);
            }
            rows.push(out);
        }
        if rows.is_empty() {
            return Err(GeomError::BadInput("empty matrix".into()));
        }
        let c = rows[0].len();
        if rows.iter().any(|r| r.len() != c) {
            return Err(GeomError::BadInput("ragged matrix rows".into()));
        }
        Ok(IntMat::from_i64_rows(&rows))
    }
}

/// Quotient rounded to nearest (ties toward zero magnitude), so that
/// |a - q*b| <= |b|/2.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_i64_rows(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(m(&[vec![1, 0], vec![0, 1]]).rank(), 2);
        assert_eq!(m(&[vec![0, 0], vec![0, 0]]).rank(), 0);
        assert_eq!(m(&[vec![2, -3, 1], vec![4, -6, 2], vec![1, 1, 1]]).rank(), 2);
    }

    #[test]
    fn rowspace_canonical_identifies_equal_spans() {
        let a = m(&[vec![2, 4], vec![1, 3]]);
        let b = m(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(a.rowspace_canonical(), b.rowspace_canonical());

        let a = m(&[vec![2, 4]]);
        let b = m(&[vec![-3, -6]]);
        assert_eq!(a.rowspace_canonical(), b.rowspace_canonical());
        assert_eq!(a.rowspace_canonical(), m(&[vec![1, 2]]));
    }

    #[test]
    fn rowspace_canonical_separates_different_spans() {
        let a = m(&[vec![1, 2]]);
        let b = m(&[vec![1, 3]]);
        assert_ne!(a.rowspace_canonical(), b.rowspace_canonical());
    }

    #[test]
    fn canonical_padding_keeps_shape() {
        let a = m(&[vec![2, 4], vec![4, 8]]);
        let p = a.rowspace_canonical_padded();
        assert_eq!(p.nrows(), 2);
        assert_eq!(p, m(&[vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn smith_form_of_diagonal() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let inv = a.smith_invariants();
        assert_eq!(inv, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn smith_transforms_multiply_back() {
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let (u, s, v) = a.smith();
        assert_eq!(u.mul(&a).mul(&v), s);
        // known invariants of this classic example
        assert_eq!(
            a.smith_invariants(),
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
        // divisibility chain
        let d = a.smith_invariants();
        for w in d.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn right_kernel_examples() {
        let a = m(&[vec![1, 2, 3]]);
        let k = a.right_kernel();
        assert_eq!(k.nrows(), 2);
        for r in 0..k.nrows() {
            let mut acc = BigInt::zero();
            for j in 0..3 {
                acc += a.get(0, j) * k.get(r, j);
            }
            assert!(acc.is_zero());
        }

        let full = m(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(full.right_kernel().nrows(), 0);
    }

    #[test]
    fn json_round_trip() {
        let a = m(&[vec![1, -2], vec![0, 7]]);
        let j = a.to_json();
        let b = IntMat::from_json(&j).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rounded_div_examples() {
        let cases = [
            (7, 2, 3),
            (-7, 2, -3),
            (7, -2, -3),
            (5, 2, 2),
            (4, 2, 2),
            (-5, 3, -2),
            (5, 1, 5),
        ];
        for (a, b, want) in cases {
            let got = rounded_div(&BigInt::from(a), &BigInt::from(b));
            assert_eq!(got, BigInt::from(want), "{a} / {b}");
            // remainder bound
            let r = BigInt::from(a) - &got * BigInt::from(b);
            assert!(BigInt::from(2) * r.abs() <= BigInt::from(b).abs() + BigInt::one());
        }
    }
}
