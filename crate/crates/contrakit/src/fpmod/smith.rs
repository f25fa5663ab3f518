//! Smith normal form over the integers with unimodular transform tracking.

use super::matrix::{balanced_quot, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Result of `smith`: `left · a · right = diag(diagonal)` exactly, with both
/// transforms unimodular. `diagonal` is the full positive divisibility chain
/// d_1 | d_2 | … | d_k including any leading 1s; zero diagonal entries are
/// dropped (their count is `cols − k` free columns and `rows − k` zero rows).
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Inverse of `right`, tracked during elimination.
    pub right_inv: IntMatrix,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries > 1: the torsion invariant factors of the cokernel.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Free rank of coker(rows act as relations on cols generators).
    pub fn cokernel_rank(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn diagonal_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.rows, self.cols, &self.diagonal)
    }
}

/// Smith normal form by exact elimination.
///
/// Pivot choice: the minimal-absolute-value nonzero entry of the working
/// submatrix, scanned row-major (first hit wins), so transforms are
/// deterministic and coefficient growth stays tame.
pub fn smith(a: &IntMatrix) -> SmithForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut right_inv = IntMatrix::identity(cols);

    let dim = rows.min(cols);
    let mut k = 0;
    while k < dim {
        let Some((pi, pj)) = min_pivot(&m, k) else {
            break;
        };
        m.swap_rows(k, pi);
        left.swap_rows(k, pi);
        m.swap_cols(k, pj);
        right.swap_cols(k, pj);
        right_inv.swap_rows(k, pj);

        loop {
            // Clear the pivot column.
            let mut dirty = false;
            for i in k + 1..rows {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let q = balanced_quot(&m[(i, k)], &m[(k, k)]);
                m.add_mul_row(i, k, &-&q);
                left.add_mul_row(i, k, &-&q);
                if !m[(i, k)].is_zero() {
                    // Remainder smaller than pivot: swap it up and restart.
                    m.swap_rows(k, i);
                    left.swap_rows(k, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Clear the pivot row.
            for j in k + 1..cols {
                if m[(k, j)].is_zero() {
                    continue;
                }
                let q = balanced_quot(&m[(k, j)], &m[(k, k)]);
                m.add_mul_col(j, k, &-&q);
                right.add_mul_col(j, k, &-&q);
                right_inv.add_mul_row(k, j, &q);
                if !m[(k, j)].is_zero() {
                    m.swap_cols(k, j);
                    right.swap_cols(k, j);
                    right_inv.swap_rows(k, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility sweep: the pivot must divide the whole remainder.
            match first_nondivisible(&m, k) {
                Some((i, _)) => {
                    m.add_mul_row(k, i, &BigInt::one());
                    left.add_mul_row(k, i, &BigInt::one());
                }
                None => break,
            }
        }
        k += 1;
    }

    // Normalize diagonal signs via column negation.
    let mut diagonal = Vec::new();
    for i in 0..dim {
        if m[(i, i)].is_zero() {
            break;
        }
        if m[(i, i)].is_negative() {
            m.negate_col(i);
            right.negate_col(i);
            // A sign flip is its own inverse (row form on the inverse side).
            for j in 0..cols {
                let v = -&right_inv[(i, j)];
                right_inv[(i, j)] = v;
            }
        }
        diagonal.push(m[(i, i)].clone());
    }

    debug_assert!(verify_product(a, &left, &right, &diagonal));
    SmithForm { diagonal, left, right, right_inv, rows, cols }
}

fn min_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_mag: Option<BigInt> = None;
    for i in k..m.rows() {
        for j in k..m.cols() {
            let e = &m[(i, j)];
            if e.is_zero() {
                continue;
            }
            let mag = e.abs();
            if best_mag.as_ref().is_none_or(|b| &mag < b) {
                best = Some((i, j));
                best_mag = Some(mag);
            }
        }
    }
    best
}

fn first_nondivisible(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let p = &m[(k, k)];
    for i in k + 1..m.rows() {
        for j in k + 1..m.cols() {
            if !(&m[(i, j)] % p).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

fn verify_product(a: &IntMatrix, left: &IntMatrix, right: &IntMatrix, diag: &[BigInt]) -> bool {
    let lar = left.mul(a).mul(right);
    lar == IntMatrix::diagonal(a.rows(), a.cols(), diag)
}

/// Rows forming a basis of the left kernel {v : v·a = 0} of `a`.
pub fn row_kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    s.left.slice_rows(s.rank(), a.rows())
}

/// Does v lie in the lattice spanned by the rows of `lat`? Decided through
/// the Smith form of `lat`: v ∈ rowspan ⟺ v·right has coordinate i divisible
/// by d_i for i < rank and zero beyond.
pub fn in_row_lattice(s: &SmithForm, v: &[BigInt]) -> bool {
    let w = s.right.apply_row_left(v);
    for (i, wi) in w.iter().enumerate() {
        if i < s.diagonal.len() {
            if !(wi % &s.diagonal[i]).is_zero() {
                return false;
            }
        } else if !wi.is_zero() {
            return false;
        }
    }
    true
}

impl IntMatrix {
    /// v·self for a row vector v of length rows(); alias used where the
    /// "row vector times matrix" orientation reads better at call sites.
    pub fn apply_row_left(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.apply_row(v)
    }
}

/// Solve x·M = v over the integers via the Smith form of M, when v lies in
/// the row lattice: with P·M·Q = D and ν = x·P⁻¹, the system becomes
/// ν·D = v·Q, solved coordinatewise.
pub fn solve_row_combination(s: &SmithForm, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let w = s.right.apply_row(v);
    let mut nu = vec![BigInt::zero(); s.rows];
    for (i, wi) in w.iter().enumerate() {
        if i < s.diagonal.len() {
            let (q, r) = num_integer::Integer::div_mod_floor(wi, &s.diagonal[i]);
            if !r.is_zero() {
                return None;
            }
            nu[i] = q;
        } else if !wi.is_zero() {
            return None;
        }
    }
    Some(s.left.apply_row(&nu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith(a);
        // Exact product identity.
        assert_eq!(
            s.left.mul(a).mul(&s.right),
            s.diagonal_matrix(),
            "L·A·R != D for {a:?}"
        );
        // Transforms unimodular.
        assert_eq!(s.left.det_bareiss().abs(), BigInt::one());
        assert_eq!(s.right.det_bareiss().abs(), BigInt::one());
        // Tracked inverse really is the inverse.
        assert_eq!(s.right.mul(&s.right_inv), IntMatrix::identity(a.cols()));
        // Divisibility chain.
        for w in s.diagonal.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", s.diagonal);
        }
        s
    }

    #[test]
    fn documented_cases() {
        // Cokernel invariants (2,4): |det| = 8 = 2·4.
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        assert_eq!(s.cokernel_rank(), 0);

        let s = check(&IntMatrix::identity(3));
        assert!(s.invariant_factors().is_empty());
        assert_eq!(s.cokernel_rank(), 0);

        let s = check(&IntMatrix::zero(2, 3));
        assert!(s.invariant_factors().is_empty());
        assert_eq!(s.cokernel_rank(), 3);
    }

    #[test]
    fn product_of_factors_matches_determinant() {
        let a = IntMatrix::from_i64(3, 3, &[6, -2, 0, 4, 10, -8, 2, 2, 2]);
        let s = check(&a);
        let det = a.det_bareiss().abs();
        let prod: BigInt = s.diagonal.iter().product();
        assert_eq!(det, prod);
    }

    #[test]
    fn row_kernel() {
        let a = IntMatrix::from_i64(3, 2, &[1, 2, 2, 4, 3, 5]);
        let k = row_kernel_basis(&a);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero());
    }

    #[test]
    fn lattice_membership() {
        let a = IntMatrix::from_i64(2, 3, &[2, 0, 0, 0, 3, 0]);
        let s = smith(&a);
        assert!(in_row_lattice(&s, &[BigInt::from(4), BigInt::from(3), BigInt::zero()]));
        assert!(!in_row_lattice(&s, &[BigInt::from(1), BigInt::zero(), BigInt::zero()]));
        assert!(!in_row_lattice(&s, &[BigInt::zero(), BigInt::zero(), BigInt::from(1)]));
    }
}
