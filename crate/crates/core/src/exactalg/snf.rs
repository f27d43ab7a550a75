use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed};

use super::IntMatrix;

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Divisors greater than one, i.e. the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form by row and column operations, always pivoting on the
/// entry of smallest absolute value.
///
/// Runs in `i128` and restarts with big integers if an intermediate value
/// overflows.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let small: Vec<Vec<i128>> =
        (0..m.rows()).map(|i| m.row(i).iter().map(|&x| i128::from(x)).collect()).collect();
    let divisors = match diagonalize(small, m.cols()) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => {
            let big: Vec<Vec<BigInt>> =
                (0..m.rows()).map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
            diagonalize(big, m.cols()).expect("big integer elimination cannot overflow")
        }
    };
    let divisors = normalize_chain(divisors);
    SnfResult { rank: divisors.len(), divisors }
}

/// Reduce to a diagonal; returns the absolute values of the nonzero
/// diagonal entries (not yet a divisibility chain). `None` on overflow.
fn diagonalize<T>(mut a: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let pivot = a[t][t].clone();
            let mut dirty = false;
            // clear column t
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                let (top, rest) = a.split_at_mut(i);
                let prow = &top[t];
                let row = &mut rest[0];
                for j in t..cols {
                    if prow[j].is_zero() {
                        continue;
                    }
                    row[j] = row[j].checked_sub(&q.checked_mul(&prow[j])?)?;
                }
                dirty |= !row[t].is_zero();
            }
            // clear row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                for row in a.iter_mut().skip(t) {
                    if row[t].is_zero() {
                        continue;
                    }
                    row[j] = row[j].checked_sub(&q.checked_mul(&row[t])?)?;
                }
                dirty |= !a[t][j].is_zero();
            }
            if !dirty {
                break;
            }
            // a remainder is now smaller than the pivot: move it into place
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Some(diag)
}

/// Turn any diagonal into the divisibility chain with the same cokernel,
/// via `diag(a, b) ~ diag(gcd, lcm)`.
fn normalize_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Matrix;
    use alloc::vec;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.to_vec()).collect())
    }

    fn divs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_input() {
        let r = smith_normal_form(&im(&[&[2, 0], &[0, 6]]));
        assert_eq!(r.divisors, divs(&[2, 6]));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rank_one() {
        let r = smith_normal_form(&im(&[&[2, 4], &[4, 8]]));
        assert_eq!(r.divisors, divs(&[2]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn empty() {
        let r = smith_normal_form(&IntMatrix::zeros(0, 0));
        assert_eq!(r.rank, 0);
        assert!(r.divisors.is_empty());
        assert_eq!(smith_normal_form(&IntMatrix::zeros(3, 0)).rank, 0);
    }

    #[test]
    fn non_chain_diagonal_is_normalized() {
        let r = smith_normal_form(&im(&[&[4, 0], &[0, 6]]));
        assert_eq!(r.divisors, divs(&[2, 12]));
        assert_eq!(r.torsion(), divs(&[2, 12]));
    }

    #[test]
    fn mixed_signs() {
        let r = smith_normal_form(&im(&[&[-3, 5, 1], &[6, -10, -2], &[0, 7, 7]]));
        // det of any 2x2 minor set: the gcd of 2x2 minors is 7 and rank 2
        assert_eq!(r.rank, 2);
        assert_eq!(r.divisors, divs(&[1, 7]));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let r = smith_normal_form(&im(&[&[big, big - 1], &[big - 1, big]]));
        assert_eq!(r.rank, 2);
        let det = BigInt::from(big) * BigInt::from(big) - BigInt::from(big - 1) * BigInt::from(big - 1);
        assert_eq!(r.divisors, vec![BigInt::one(), det]);
    }
}
