//! Hom, ⊗, Ext¹, Tor₁ of finitely presented abelian groups.
//!
//! Hom is assembled by the pairwise rules on canonical summands. Tensor is
//! built directly from presentations. Ext¹ and Tor₁ go through the length-1
//! free resolution 0 → Z^k → Z^c → M → 0 whose middle map is a basis of the
//! relation lattice, so they stay honest to the derived-functor definition;
//! the pairwise formulas serve as test oracles only.

use super::matrix::IntMatrix;
use super::module::FPModule;
use super::morphism::{block_scalar_matrix, Morphism};
use crate::arith::invariant_factors_from_cyclics;
use num_bigint::BigInt;
use num_integer::Integer;
use std::sync::Arc;

/// Hom(M, N) in canonical form.
///
/// Pairwise rules over Z: Hom(Z, X) = X, Hom(Z/a, Z) = 0,
/// Hom(Z/a, Z/b) = Z/gcd(a, b).
pub fn hom(m: &FPModule, n: &FPModule) -> FPModule {
    let (rm, tm) = m.decompose();
    let (rn, tn) = n.decompose();
    let rank = rm * rn;
    let mut cyclics: Vec<BigInt> = Vec::new();
    // Z^rm into torsion of N.
    for b in &tn {
        for _ in 0..rm {
            cyclics.push(b.clone());
        }
    }
    // Torsion of M into torsion of N.
    for a in &tm {
        for b in &tn {
            let g = a.gcd(b);
            if g > BigInt::from(1) {
                cyclics.push(g);
            }
        }
    }
    let chain = invariant_factors_from_cyclics(&cyclics);
    FPModule::from_invariants(rank, &chain).expect("gcds are >= 2")
}

/// A basis of the relation lattice of M: the first rank(A) rows of left·A.
fn relation_basis(m: &FPModule) -> IntMatrix {
    let c = m.canon();
    let la = c.snf.left.mul(m.presentation());
    la.slice_rows(0, c.snf.rank())
}

/// Ext¹(M, N) computed as coker(N^c → N^k) for the resolution map
/// Z^k --B--> Z^c, B the relation basis of M.
pub fn ext1(m: &FPModule, n: &FPModule) -> FPModule {
    let b = relation_basis(m);
    let c = m.generators();
    let k = b.rows();
    if k == 0 {
        return FPModule::zero_module();
    }
    let src = Arc::new(n.power(c));
    let tgt = Arc::new(n.power(k));
    let src_parts: Vec<&FPModule> = std::iter::repeat_n(n, c).collect();
    let tgt_parts: Vec<&FPModule> = std::iter::repeat_n(n, k).collect();
    // Hom(B, N): (x_1..x_c) ↦ (Σ_j B[t][j]·x_j)_t, coefficient from copy j to
    // copy t is B[t][j].
    let matrix = block_scalar_matrix(&src_parts, &tgt_parts, |j, t| b[(t, j)].clone());
    let f = Morphism::new(src, tgt, matrix).expect("scalar blocks are well defined");
    let (coker, _) = f.cokernel();
    canonicalize(&coker)
}

/// Tor₁(M, N) computed as ker(N^k → N^c) for the same resolution.
pub fn tor1(m: &FPModule, n: &FPModule) -> FPModule {
    let b = relation_basis(m);
    let c = m.generators();
    let k = b.rows();
    if k == 0 || c == 0 {
        return FPModule::zero_module();
    }
    let src = Arc::new(n.power(k));
    let tgt = Arc::new(n.power(c));
    let src_parts: Vec<&FPModule> = std::iter::repeat_n(n, k).collect();
    let tgt_parts: Vec<&FPModule> = std::iter::repeat_n(n, c).collect();
    let matrix = block_scalar_matrix(&src_parts, &tgt_parts, |t, j| b[(t, j)].clone());
    let f = Morphism::new(src, tgt, matrix).expect("scalar blocks are well defined");
    let (ker, _) = f.kernel();
    canonicalize(&ker)
}

/// M ⊗ N presented on generator pairs (i, j) ↦ i·d + j with relations
/// a ⊗ e_j and e_i ⊗ b for all relations a of M, b of N.
pub fn tensor(m: &FPModule, n: &FPModule) -> FPModule {
    let (am, an) = (m.presentation(), n.presentation());
    let (c, d) = (m.generators(), n.generators());
    let rows = am.rows() * d + c * an.rows();
    let mut rel = IntMatrix::zero(rows, c * d);
    let mut r = 0;
    for a in am.iter_rows() {
        for j in 0..d {
            for (i, ai) in a.iter().enumerate() {
                rel[(r, i * d + j)] = ai.clone();
            }
            r += 1;
        }
    }
    for i in 0..c {
        for b in an.iter_rows() {
            for (j, bj) in b.iter().enumerate() {
                rel[(r, i * d + j)] = bj.clone();
            }
            r += 1;
        }
    }
    canonicalize(&FPModule::from_presentation(rel))
}

fn canonicalize(m: &FPModule) -> FPModule {
    let (rank, torsion) = m.decompose();
    FPModule::from_invariants(rank, &torsion).expect("torsion factors valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(m: &FPModule) -> (usize, Vec<i64>) {
        let (r, t) = m.decompose();
        (r, t.iter().map(|d| i64::try_from(d).unwrap()).collect())
    }

    #[test]
    fn hom_examples() {
        assert_eq!(inv(&hom(&FPModule::cyclic(6), &FPModule::cyclic(4))), (0, vec![2]));
        // Hom(Z, M) ≅ M.
        let m = FPModule::from_invariants(2, &[BigInt::from(3), BigInt::from(12)]).unwrap();
        assert!(hom(&FPModule::free(1), &m).isomorphic(&m));
        assert!(hom(&FPModule::cyclic(5), &FPModule::free(1)).is_zero_module());
    }

    #[test]
    fn ext_examples() {
        assert_eq!(inv(&ext1(&FPModule::cyclic(4), &FPModule::cyclic(6))), (0, vec![2]));
        assert!(ext1(&FPModule::free(3), &FPModule::cyclic(6)).is_zero_module());
        // Ext¹(Z/p^k, Z) ≅ Z/p^k.
        assert_eq!(inv(&ext1(&FPModule::cyclic(8), &FPModule::free(1))), (0, vec![8]));
    }

    #[test]
    fn tor_and_tensor_examples() {
        assert_eq!(inv(&tor1(&FPModule::cyclic(4), &FPModule::cyclic(6))), (0, vec![2]));
        assert_eq!(inv(&tensor(&FPModule::cyclic(4), &FPModule::cyclic(6))), (0, vec![2]));
        assert!(tor1(&FPModule::free(2), &FPModule::cyclic(9)).is_zero_module());
        // Z ⊗ M ≅ M.
        let m = FPModule::from_invariants(1, &[BigInt::from(4)]).unwrap();
        assert!(tensor(&FPModule::free(1), &m).isomorphic(&m));
    }

    #[test]
    fn ext_matches_multiplication_cokernel_on_cyclic_first_argument() {
        // Ext¹(Z/a, N) ≅ N/aN.
        for a in [2i64, 4, 9] {
            for n in [FPModule::cyclic(6), FPModule::free(2), FPModule::cyclic(8)] {
                let e = ext1(&FPModule::cyclic(a), &n);
                let arc = Arc::new(n.clone());
                let (q, _) = Morphism::scalar(&arc, a).cokernel();
                assert!(e.isomorphic(&q), "Ext1(Z/{a}, {n:?})");
            }
        }
    }

    #[test]
    fn tensor_symmetry_up_to_isomorphism() {
        let m = FPModule::from_invariants(1, &[BigInt::from(4), BigInt::from(12)]).unwrap();
        let n = FPModule::from_invariants(0, &[BigInt::from(6)]).unwrap();
        assert!(tensor(&m, &n).isomorphic(&tensor(&n, &m)));
    }
}
