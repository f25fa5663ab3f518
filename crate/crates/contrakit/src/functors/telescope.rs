//! Finite truncations of the telescope complex: the two-term complex
//! T_n = (⊕_{0≤i<n} R·f_i → ⊕_{1≤j≤n} R·e_j) with f_i ↦ e_i − s·e_{i+1}
//! (the e_0 term falls away), together with an explicit homotopy equivalence
//! onto (R →^{s^n} R) verified by matrix identities.

use super::RingElement;
use crate::fpmod::IntMatrix;
use crate::mutation::Mutation;
use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, Debug)]
pub struct TelescopeComplex {
    pub element: RingElement,
    pub level: usize,
    /// n×n differential in row-vector convention: row i is the image of f_i.
    pub differential: IntMatrix,
}

impl TelescopeComplex {
    pub fn new(element: RingElement, level: usize) -> Self {
        Self::with_mutation(element, level, Mutation::None)
    }

    pub fn with_mutation(element: RingElement, level: usize, mutation: Mutation) -> Self {
        assert!(level >= 1);
        let differential = psi_matrix(element, level, mutation);
        Self { element, level, differential }
    }

    /// The witness of T_n ≃ (R →^{s^n} R): chain maps u (from the short
    /// complex) and v (to it) with v∘u = id exactly and id − u∘v = [d, H].
    pub fn homotopy_witness(&self) -> HomotopyWitness {
        let n = self.level;
        let s = BigInt::from(self.element.abs());
        let mut u0 = IntMatrix::zero(1, n);
        let mut pow = BigInt::one();
        for i in 0..n {
            u0[(0, i)] = pow.clone();
            pow *= &s;
        }
        let mut u1 = IntMatrix::zero(1, n);
        u1[(0, n - 1)] = BigInt::from(-1);

        let mut v0 = IntMatrix::zero(n, 1);
        v0[(0, 0)] = BigInt::one();
        let mut v1 = IntMatrix::zero(n, 1);
        for j in 1..=n {
            v1[(j - 1, 0)] = -s.pow((n - j) as u32);
        }

        // H: T¹ → T⁰, e_j ↦ Σ_{i=j}^{n−1} s^{i−j} f_i.
        let mut h = IntMatrix::zero(n, n);
        for j in 1..=n {
            for i in j..n {
                h[(j - 1, i)] = s.pow((i - j) as u32);
            }
        }

        let dk = IntMatrix::new(1, 1, vec![s.pow(n as u32)]);
        HomotopyWitness { u0, u1, v0, v1, h, dk }
    }

    /// Check all five matrix identities of the witness.
    pub fn verify_witness(&self) -> bool {
        let w = self.homotopy_witness();
        let d = &self.differential;
        let n = self.level;
        // Chain maps: u: K → T and v: T → K.
        let u_chain = w.dk.mul(&w.u1) == w.u0.mul(d);
        let v_chain = d.mul(&w.v1) == w.v0.mul(&w.dk);
        // v∘u = id_K in both degrees.
        let vu0 = w.u0.mul(&w.v0) == IntMatrix::identity(1);
        let vu1 = w.u1.mul(&w.v1) == IntMatrix::identity(1);
        // id − u∘v = homotopy boundary.
        let id_n = IntMatrix::identity(n);
        let deg0 = id_n.add(&w.v0.mul(&w.u0).neg()) == d.mul(&w.h);
        let deg1 = id_n.add(&w.v1.mul(&w.u1).neg()) == w.h.mul(d);
        u_chain && v_chain && vu0 && vu1 && deg0 && deg1
    }
}

pub struct HomotopyWitness {
    pub u0: IntMatrix,
    pub u1: IntMatrix,
    pub v0: IntMatrix,
    pub v1: IntMatrix,
    pub h: IntMatrix,
    pub dk: IntMatrix,
}

/// The truncated ψ_s differential as an n×n scalar pattern: row i carries
/// +1 at column i−1 (the e_i slot, absent for i = 0) and −s at column i
/// (the e_{i+1} slot). Columns index e_1..e_n.
pub fn psi_matrix(s: RingElement, n: usize, mutation: Mutation) -> IntMatrix {
    let sval = BigInt::from(s.abs());
    let mut m = IntMatrix::zero(n, n);
    for i in 0..n {
        if i >= 1 {
            m[(i, i - 1)] = BigInt::one();
        }
        match mutation {
            Mutation::TelescopeIndexShift => {
                if i >= 1 {
                    m[(i, i - 1)] -= &sval;
                } // row 0 drops its tail entirely under the defect
            }
            _ => m[(i, i)] = -&sval,
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differential_pattern() {
        let t = TelescopeComplex::new(RingElement(3), 3);
        let expect = IntMatrix::from_i64(3, 3, &[-3, 0, 0, 1, -3, 0, 0, 1, -3]);
        assert_eq!(t.differential, expect);
    }

    #[test]
    fn homotopy_witness_verifies() {
        for s in [2i64, 3, 6, -5] {
            for n in 1..=5 {
                let t = TelescopeComplex::new(RingElement(s), n);
                assert!(t.verify_witness(), "s={s} n={n}");
            }
        }
    }

    #[test]
    fn index_shift_breaks_the_witness() {
        let t = TelescopeComplex::with_mutation(RingElement(2), 3, Mutation::TelescopeIndexShift);
        assert!(!t.verify_witness());
    }
}
