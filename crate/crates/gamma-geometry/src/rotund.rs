//! Rotundity and strong rotundity of subvarieties of G^n.
//!
//! V is rotund when dim M.V >= rank M for every integer matrix M, and
//! strongly rotund when the inequality is strict for every M != 0. The
//! checker enumerates one canonical representative per rational row space
//! realizable with entries bounded by B, since the image dimension depends
//! on M only through its row space.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::intmat::IntMat;
use crate::variety::{dim_image, GSubvariety};
use crate::GeomError;

#[derive(Clone, Debug, PartialEq)]
pub enum RotundityVerdict {
    /// No violation among matrices with entries bounded by `bound`;
    /// evidence, not proof.
    RotundUpTo { bound: i64 },
    /// A concrete witness: dim M.V < rank M (or <= for the strict check).
    NotRotund {
        witness: IntMat,
        image_dim: i64,
        rank: usize,
    },
}

impl RotundityVerdict {
    pub fn to_json(&self, strict: bool) -> Value {
        match self {
            RotundityVerdict::RotundUpTo { bound } => json!({
                "status": if strict { "StronglyRotundUpTo" } else { "RotundUpTo" },
                "bound": bound,
            }),
            RotundityVerdict::NotRotund {
                witness,
                image_dim,
                rank,
            } => json!({
                "status": if strict { "NotStronglyRotund" } else { "NotRotund" },
                "witness": witness.to_json(),
                "image_dim": image_dim,
                "rank": rank,
            }),
        }
    }
}

/// All canonical row-space representatives spanned by matrices with
/// entries in [-bound, bound], as padded n x n matrices, in increasing
/// order. Spans are generated from multisets of sign-canonical nonzero
/// rows, which cover every realizable row space. The zero matrix is not
/// included.
pub fn rowspace_representatives(n: usize, bound: i64) -> Vec<IntMat> {
    // nonzero rows with entries in [-bound, bound], first nonzero entry
    // positive (sign flips do not change the span)
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let width = n;
    let mut cur = vec![-bound; width];
    'outer: loop {
        if let Some(first) = cur.iter().find(|&&x| x != 0) {
            if *first > 0 {
                rows.push(cur.clone());
            }
        }
        for i in (0..width).rev() {
            cur[i] += 1;
            if cur[i] <= bound {
                continue 'outer;
            }
            cur[i] = -bound;
        }
        break;
    }

    let mut classes: BTreeSet<IntMat> = BTreeSet::new();
    // multisets of up to n rows: indices i1 <= i2 <= ... <= ik
    let mut idx = vec![0usize; n];
    'enumerate: loop {
        let chosen: Vec<Vec<i64>> = idx.iter().map(|&i| rows[i].clone()).collect();
        let m = IntMat::from_i64_rows(&chosen);
        classes.insert(m.rowspace_canonical_padded());
        for pos in (0..n).rev() {
            idx[pos] += 1;
            if idx[pos] < rows.len() {
                for later in pos + 1..n {
                    idx[later] = idx[pos];
                }
                continue 'enumerate;
            }
        }
        break;
    }
    classes.into_iter().collect()
}

fn check(
    v: &GSubvariety,
    bound: i64,
    strict: bool,
) -> Result<RotundityVerdict, GeomError> {
    if !v.irreducible_asserted() {
        return Err(GeomError::MalformedVariety(
            "rotundity requires the irreducibility assertion".into(),
        ));
    }
    if bound <= 0 {
        return Err(GeomError::BadInput("bound must be positive".into()));
    }
    for rep in rowspace_representatives(v.n(), bound) {
        let rank = rep.rank();
        let dim = dim_image(&rep, v)?;
        let fails = if strict {
            dim <= rank as i64
        } else {
            dim < rank as i64
        };
        if fails {
            return Ok(RotundityVerdict::NotRotund {
                witness: rep,
                image_dim: dim,
                rank,
            });
        }
    }
    Ok(RotundityVerdict::RotundUpTo { bound })
}

/// Checks dim M.V >= rank M over canonical representatives with entry
/// bound B. NotRotund verdicts are unconditional; RotundUpTo is bounded
/// evidence. The witness returned is the smallest failing representative.
pub fn is_rotund(v: &GSubvariety, bound: i64) -> Result<RotundityVerdict, GeomError> {
    check(v, bound, false)
}

/// Strict variant: dim M.V > rank M for all M != 0.
pub fn is_strongly_rotund(v: &GSubvariety, bound: i64) -> Result<RotundityVerdict, GeomError> {
    check(v, bound, true)
}

/// Brute-force oracle: tests every matrix with entries in [-bound, bound]
/// directly, no row-space canonicalization. Exponential; test use only.
pub fn is_rotund_brute_force(
    v: &GSubvariety,
    bound: i64,
    strict: bool,
) -> Result<Option<IntMat>, GeomError> {
    let n = v.n();
    let cells = n * n;
    let mut cur = vec![-bound; cells];
    loop {
        let data: Vec<BigInt> = cur.iter().map(|&x| BigInt::from(x)).collect();
        let m = IntMat::new(n, n, data);
        if !m.is_zero() {
            let rank = m.rank();
            let dim = dim_image(&m, v)?;
            let fails = if strict {
                dim <= rank as i64
            } else {
                dim < rank as i64
            };
            if fails {
                return Ok(Some(m));
            }
        }
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] <= bound {
                break;
            }
            cur[i] = -bound;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra_core::parse_poly;
    use crate::variety::g_vars;

    fn variety(n: usize, gens: &[&str]) -> GSubvariety {
        let vars = g_vars(n);
        let gens = gens.iter().map(|s| parse_poly(s, &vars).unwrap()).collect();
        GSubvariety::new(n, gens, true).unwrap()
    }

    #[test]
    fn representative_counts_are_small() {
        // G^1: spans are 0 (excluded), full line classes, so bound b gives
        // one representative per primitive scalar, i.e. just (1)
        let reps = rowspace_representatives(1, 3);
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0], IntMat::from_i64_rows(&[vec![1]]));

        // G^2 at bound 1: primitive directions (0,1), (1,0), (1,1), (1,-1)
        // plus the full plane
        let reps = rowspace_representatives(2, 1);
        assert_eq!(reps.len(), 5);
    }

    #[test]
    fn constant_x_slice_is_rotund() {
        let v = variety(1, &["x1 - 3"]);
        assert_eq!(
            is_rotund(&v, 4).unwrap(),
            RotundityVerdict::RotundUpTo { bound: 4 }
        );
    }

    #[test]
    fn low_dimensional_diagonal_is_not_rotund() {
        // x1 = x2, y1 = y2, y1 = x1: dimension 1 inside G^2. The identity
        // matrix is a witness (dim 1 < rank 2); the difference character
        // (1,-1) is a smaller one (it collapses V to a point), and the
        // checker returns the smallest failing representative.
        let v = variety(2, &["x1 - x2", "y1 - y2", "y1 - x1"]);
        match is_rotund(&v, 2).unwrap() {
            RotundityVerdict::NotRotund {
                witness,
                image_dim,
                rank,
            } => {
                assert_eq!(witness, IntMat::from_i64_rows(&[vec![1, -1], vec![0, 0]]));
                assert_eq!(image_dim, 0);
                assert_eq!(rank, 1);
            }
            other => panic!("expected NotRotund, got {other:?}"),
        }
        // and the identity violation the definition names is real
        assert_eq!(dim_image(&IntMat::identity(2), &v).unwrap(), 1);
    }

    #[test]
    fn torsion_kernel_point_fails() {
        // V = TJ for J = {1}: the single point (0, 1)
        let v = variety(1, &["x1", "y1 - 1"]);
        match is_rotund(&v, 3).unwrap() {
            RotundityVerdict::NotRotund {
                witness,
                image_dim,
                rank,
            } => {
                assert_eq!(witness, IntMat::from_i64_rows(&[vec![1]]));
                assert_eq!(image_dim, 0);
                assert_eq!(rank, 1);
            }
            other => panic!("expected NotRotund, got {other:?}"),
        }
    }

    #[test]
    fn full_space_is_strongly_rotund() {
        let v = variety(1, &[]);
        assert_eq!(
            is_strongly_rotund(&v, 3).unwrap(),
            RotundityVerdict::RotundUpTo { bound: 3 }
        );
    }

    #[test]
    fn exponential_line_is_rotund_but_not_strongly() {
        let v = variety(1, &["y1 - x1"]);
        assert_eq!(
            is_rotund(&v, 3).unwrap(),
            RotundityVerdict::RotundUpTo { bound: 3 }
        );
        match is_strongly_rotund(&v, 3).unwrap() {
            RotundityVerdict::NotRotund {
                witness,
                image_dim,
                rank,
            } => {
                assert_eq!(witness, IntMat::from_i64_rows(&[vec![1]]));
                assert_eq!(image_dim, 1);
                assert_eq!(rank, 1);
            }
            other => panic!("expected NotStronglyRotund, got {other:?}"),
        }
    }

    #[test]
    fn constant_slice_is_not_strongly_rotund() {
        let v = variety(1, &["x1 - 3"]);
        match is_strongly_rotund(&v, 2).unwrap() {
            RotundityVerdict::NotRotund { image_dim, rank, .. } => {
                assert_eq!(image_dim, 1);
                assert_eq!(rank, 1);
            }
            other => panic!("expected NotStronglyRotund, got {other:?}"),
        }
    }

    #[test]
    fn verdict_matches_brute_force_on_small_cases() {
        for (n, gens) in [
            (1usize, vec!["y1 - x1"]),
            (1, vec!["x1 - 3"]),
            (2, vec!["x1 - x2", "y1 - y2"]),
            (2, vec!["x1 - x2", "y1 - y2", "y1 - x1"]),
        ] {
            let v = variety(n, &gens);
            let fast = is_rotund(&v, 1).unwrap();
            let brute = is_rotund_brute_force(&v, 1, false).unwrap();
            match (&fast, &brute) {
                (RotundityVerdict::RotundUpTo { .. }, None) => {}
                (RotundityVerdict::NotRotund { .. }, Some(_)) => {}
                other => panic!("disagreement on {gens:?}: {other:?}"),
            }
        }
    }
}
