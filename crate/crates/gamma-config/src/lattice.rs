//! Lattices of declared Gamma-points.
//!
//! A lattice here is the set of *integer* combinations of finitely many
//! rational vectors; the divisible hull never materializes. Generators are
//! scaled to a common denominator and reduced to an integer row-echelon
//! basis, so membership is one back-substitution descent.

use algebra_core::rat::common_denominator;
use algebra_core::Rat;
use gamma_geometry::IntMat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    dim: usize,
    /// The lattice is (1/scale) * rowspan_Z(basis).
    scale: BigInt,
    /// Integer echelon rows: pivot columns strictly increase, entries below
    /// a pivot are zero, pivots are positive.
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn echelon(mut rows: Vec<Vec<BigInt>>, dim: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        if r == rows.len() {
            break;
        }
        let mut any = false;
        // gcd descent: repeatedly reduce the column by its smallest entry
        loop {
            let pick = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c].abs());
            let Some(p) = pick else { break };
            any = true;
            rows.swap(r, p);
            let mut cleared = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = &rows[i][c] / &rows[r][c];
                if !q.is_zero() {
                    for j in c..dim {
                        let t = &q * &rows[r][j];
                        rows[i][j] -= t;
                    }
                }
                if !rows[i][c].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if any {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

impl Lattice {
    /// Lattice generated (over Z) by the given rational rows.
    pub fn from_rows(dim: usize, rows: &[Vec<Rat>]) -> Lattice {
        let mut all = Vec::new();
        for r in rows {
            assert_eq!(r.len(), dim, "lattice row width mismatch");
            all.extend(r.iter().cloned());
        }
        let scale = common_denominator(&all);
        let int_rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|q| (q * &scale).to_integer()).collect())
            .collect();
        Lattice::from_scaled(dim, scale, int_rows)
    }

    pub(crate) fn from_scaled(dim: usize, scale: BigInt, rows: Vec<Vec<BigInt>>) -> Lattice {
        let (basis, pivots) = echelon(rows, dim);
        Lattice {
            dim,
            scale,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Exact membership: is `v` an integer combination of the generators?
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim, "lattice vector width mismatch");
        let mut w = Vec::with_capacity(self.dim);
        for q in v {
            let scaled = q * &self.scale;
            if !scaled.is_integer() {
                return false;
            }
            w.push(scaled.to_integer());
        }
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let (q, rem) = w[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return false;
            }
            for j in p..self.dim {
                let t = &q * &row[j];
                w[j] -= t;
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// The sublattice of vectors supported on the kept coordinates: integer
    /// combinations of the basis that vanish elsewhere.
    pub fn restrict_support(&self, keep: &[bool]) -> Lattice {
        assert_eq!(keep.len(), self.dim, "support mask width mismatch");
        let comp: Vec<usize> = (0..self.dim).filter(|&j| !keep[j]).collect();
        if comp.is_empty() || self.basis.is_empty() {
            return self.clone();
        }
        let t = self.basis.len();
        let mut data = Vec::with_capacity(comp.len() * t);
        for &c in &comp {
            for row in &self.basis {
                data.push(row[c].clone());
            }
        }
        // rows of the right kernel are the combinations vanishing on comp
        let ker = IntMat::new(comp.len(), t, data).right_kernel();
        let mut rows = Vec::with_capacity(ker.nrows());
        for i in 0..ker.nrows() {
            let mut row = vec![BigInt::zero(); self.dim];
            for (b, basis_row) in self.basis.iter().enumerate() {
                let k = ker.get(i, b);
                if k.is_zero() {
                    continue;
                }
                for (slot, x) in row.iter_mut().zip(basis_row) {
                    *slot += k * x;
                }
            }
            rows.push(row);
        }
        Lattice::from_scaled(self.dim, self.scale.clone(), rows)
    }

    /// Basis rows as rational vectors (for stacking into rank problems).
    pub fn basis_rat_rows(&self) -> Vec<Vec<Rat>> {
        self.basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Rat::new(x.clone(), self.scale.clone()))
                    .collect()
            })
            .collect()
    }
}

/// Rank of a stack of rational rows, via the Smith normal form of the
/// common-denominator integer matrix.
pub fn snf_rank(rows: &[Vec<Rat>], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut all = Vec::new();
    for r in rows {
        assert_eq!(r.len(), dim, "rank row width mismatch");
        all.extend(r.iter().cloned());
    }
    let scale = common_denominator(&all);
    let data: Vec<BigInt> = all.iter().map(|q| (q * &scale).to_integer()).collect();
    IntMat::new(rows.len(), dim, data).smith_invariants().len()
}

/// Independent oracle for `snf_rank`: plain rational Gaussian elimination.
pub fn rational_rank(rows: &[Vec<Rat>], dim: usize) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut rank = 0;
    for c in 0..dim {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..dim {
                    let t = &m[rank][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra_core::rat_from_str;

    fn rats(sp: &[&str]) -> Vec<Rat> {
        sp.iter().map(|s| rat_from_str(s).unwrap()).collect()
    }

    #[test]
    fn membership_in_an_even_lattice() {
        let lat = Lattice::from_rows(2, &[rats(&["2", "0"]), rats(&["0", "2"])]);
        assert!(lat.contains(&rats(&["2", "2"])));
        assert!(lat.contains(&rats(&["-4", "6"])));
        assert!(!lat.contains(&rats(&["1", "1"])));
        assert!(!lat.contains(&rats(&["2", "1"])));
        assert!(lat.contains(&rats(&["0", "0"])));
    }

    #[test]
    fn fractional_generators() {
        let lat = Lattice::from_rows(2, &[rats(&["1/2", "0"]), rats(&["1/3", "1"])]);
        assert!(lat.contains(&rats(&["1/2", "0"])));
        assert!(lat.contains(&rats(&["5/6", "1"])));
        assert!(!lat.contains(&rats(&["1/4", "0"])));
        assert!(!lat.contains(&rats(&["1/2", "1/2"])));
        assert_eq!(lat.rank(), 2);
    }

    #[test]
    fn dependent_generators_collapse() {
        let lat = Lattice::from_rows(2, &[rats(&["2", "4"]), rats(&["3", "6"])]);
        // gcd descent: the lattice is Z * (1, 2)
        assert_eq!(lat.rank(), 1);
        assert!(lat.contains(&rats(&["1", "2"])));
        assert!(!lat.contains(&rats(&["1", "3"])));
    }

    #[test]
    fn support_restriction_is_an_intersection() {
        // Z-span of (1,1,0) and (0,1,1); vectors supported on {0,1} are
        // multiples of (1,1,0) only.
        let lat = Lattice::from_rows(
            3,
            &[rats(&["1", "1", "0"]), rats(&["0", "1", "1"])],
        );
        let sub = lat.restrict_support(&[true, true, false]);
        assert_eq!(sub.rank(), 1);
        assert!(sub.contains(&rats(&["1", "1", "0"])));
        assert!(sub.contains(&rats(&["-3", "-3", "0"])));
        assert!(!sub.contains(&rats(&["0", "1", "1"])));
        // restriction to everything is the identity
        let all = lat.restrict_support(&[true, true, true]);
        assert_eq!(all, lat);
        // restriction of combinations: (1,0,-1) = (1,1,0) - (0,1,1)
        let sub02 = lat.restrict_support(&[true, false, true]);
        assert_eq!(sub02.rank(), 1);
        assert!(sub02.contains(&rats(&["1", "0", "-1"])));
    }

    #[test]
    fn empty_lattice() {
        let lat = Lattice::from_rows(2, &[]);
        assert_eq!(lat.rank(), 0);
        assert!(lat.contains(&rats(&["0", "0"])));
        assert!(!lat.contains(&rats(&["1", "0"])));
    }

    #[test]
    fn snf_rank_matches_rational_elimination() {
        let cases: Vec<Vec<Vec<Rat>>> = vec![
            vec![rats(&["1", "2", "3"]), rats(&["2", "4", "6"])],
            vec![rats(&["1/2", "0", "1"]), rats(&["0", "1/3", "0"]), rats(&["1/2", "1/3", "1"])],
            vec![rats(&["0", "0", "0"])],
            vec![rats(&["1", "0", "0"]), rats(&["0", "1", "0"]), rats(&["0", "0", "1"])],
        ];
        for rows in cases {
            assert_eq!(snf_rank(&rows, 3), rational_rank(&rows, 3));
        }
        assert_eq!(snf_rank(&[], 3), 0);
    }

    #[test]
    fn basis_rows_regenerate_the_lattice() {
        let lat = Lattice::from_rows(2, &[rats(&["1/2", "1"]), rats(&["0", "3"])]);
        let again = Lattice::from_rows(2, &lat.basis_rat_rows());
        assert_eq!(lat, again);
    }
}
