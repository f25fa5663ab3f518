//! Independent oracles for the acceptance suite. Nothing here may call into
//! the elimination-based Smith machinery: the whole point is a second route.

use crate::fpmod::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Invariant factors of coker(rows as relations on cols generators) through
/// determinantal divisors: g_k = gcd of all k×k minors, d_k = g_k / g_{k−1}.
/// Minors are evaluated by fraction-free elimination on index subsets; no
/// row or column operations ever touch the matrix.
pub fn invariants_by_determinantal_divisors(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let (rows, cols) = (m.rows(), m.cols());
    let maxk = rows.min(cols);
    let mut g_prev = BigInt::one();
    let mut factors = Vec::new();
    let mut rank = 0;
    for k in 1..=maxk {
        let mut g = BigInt::zero();
        for rsel in combinations(rows, k) {
            for csel in combinations(cols, k) {
                let sub = submatrix(m, &rsel, &csel);
                let det = sub.det_bareiss();
                if !det.is_zero() {
                    g = g.gcd(&det);
                }
                if g.is_one() {
                    break;
                }
            }
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            break;
        }
        rank = k;
        let d = &g / &g_prev;
        if !d.is_one() {
            factors.push(d.clone());
        }
        g_prev = g;
    }
    (cols - rank, factors)
}

fn submatrix(m: &IntMatrix, rsel: &[usize], csel: &[usize]) -> IntMatrix {
    let mut out = IntMatrix::zero(rsel.len(), csel.len());
    for (i, &r) in rsel.iter().enumerate() {
        for (j, &c) in csel.iter().enumerate() {
            out[(i, j)] = m[(r, c)].clone();
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinantal_divisors_match_known_cases() {
        let m = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        let (rank, factors) = invariants_by_determinantal_divisors(&m);
        assert_eq!(rank, 0);
        assert_eq!(factors, vec![BigInt::from(2), BigInt::from(4)]);

        let m = IntMatrix::from_i64(2, 2, &[4, 2, 2, 4]);
        let (rank, factors) = invariants_by_determinantal_divisors(&m);
        assert_eq!((rank, factors), (0, vec![BigInt::from(2), BigInt::from(6)]));

        let (rank, factors) = invariants_by_determinantal_divisors(&IntMatrix::zero(2, 3));
        assert_eq!((rank, factors), (3, vec![]));

        let (rank, factors) = invariants_by_determinantal_divisors(&IntMatrix::identity(3));
        assert_eq!((rank, factors), (0, vec![]));
    }
}
