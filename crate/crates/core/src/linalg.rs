//! Exact Gauss–Jordan elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Nonzero rows only, each with a leading 1 in its pivot column.
    pub rows: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
    pub columns: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One basis vector per free column: 1 at that column, 0 at every other
    /// free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut is_pivot = vec![false; self.columns];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.columns)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![BigRational::zero(); self.columns];
                v[f] = BigRational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

/// Row-reduces `rows`, each of length `columns`. Pivots are the first
/// nonzero entry found scanning down a column, so no ordering of magnitudes
/// is needed.
pub fn rref(rows: Vec<Vec<BigRational>>, columns: usize) -> Rref {
    let mut m: Vec<Vec<BigRational>> = rows
        .into_iter()
        .inspect(|r| assert_eq!(r.len(), columns, "ragged matrix"))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..columns {
        let Some(found) = (next..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next, found);
        let inv = m[next][col].recip();
        for x in m[next].iter_mut().skip(col) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[next].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == m.len() {
            break;
        }
    }
    m.truncate(next);
    Rref {
        rows: m,
        pivots,
        columns,
    }
}

pub fn rank(rows: Vec<Vec<BigRational>>, columns: usize) -> usize {
    rref(rows, columns).rank()
}

pub fn nullspace(rows: Vec<Vec<BigRational>>, columns: usize) -> Vec<Vec<BigRational>> {
    rref(rows, columns).nullspace()
}

/// `rows · v`.
pub fn apply(rows: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn small_nullspace() {
        // x + y + z = 0, x − z = 0  ⇒  span{(1, −2, 1)}
        let m = mat(&[&[1, 1, 1], &[1, 0, -1]]);
        let ns = nullspace(m.clone(), 3);
        assert_eq!(ns, vec![vec![q(1), q(-2), q(1)]]);
        assert!(apply(&m, &ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn full_rank_and_zero_matrix() {
        let id = mat(&[&[2, 0], &[0, 3]]);
        assert_eq!(rank(id.clone(), 2), 2);
        assert!(nullspace(id, 2).is_empty());
        assert_eq!(nullspace(Vec::new(), 2).len(), 2);
        assert_eq!(rank(mat(&[&[0, 0]]), 2), 0);
    }

    #[test]
    fn fractional_pivots_stay_exact() {
        let m = mat(&[&[3, 1, 0], &[0, 7, 2]]);
        let ns = nullspace(m.clone(), 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][2], q(1));
        assert_eq!(
            ns[0][1],
            BigRational::new(BigInt::from(-2), BigInt::from(7))
        );
        assert!(apply(&m, &ns[0]).iter().all(Zero::is_zero));
    }

    /// Independent oracle: cofactor expansion of a small integer determinant.
    fn det(m: &[Vec<i64>]) -> i64 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel(entries in prop::collection::vec(-3i64..4, 16)) {
            let int_rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let m: Vec<Vec<BigRational>> =
                int_rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let r = rref(m.clone(), 4);
            let ns = r.nullspace();
            prop_assert_eq!(r.rank() + ns.len(), 4);
            for v in &ns {
                prop_assert!(apply(&m, v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(ns.is_empty(), det(&int_rows) != 0);
        }
    }
}
