//! Finitely presented abelian groups.
//!
//! A module is the cokernel of its presentation matrix acting between free
//! groups: columns index generators, each row is a relation declared zero.
//! Canonical invariants (free rank, torsion chain) come from the Smith form
//! and are cached write-once.

use super::matrix::IntMatrix;
use super::smith::{in_row_lattice, smith, SmithForm};
use super::FpError;
use crate::arith::invariant_factors_from_cyclics;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::{Arc, OnceLock};

#[derive(Clone)]
pub struct FPModule {
    presentation: IntMatrix,
    canon: OnceLock<Arc<CanonData>>,
}

/// Cached canonical data: M ≅ ⊕_{i<k} Z/d_i ⊕ Z^rank via v ↦ v·right.
pub struct CanonData {
    pub snf: SmithForm,
    pub rank: usize,
    /// Torsion invariant factors, ascending divisibility, all ≥ 2.
    pub torsion: Vec<BigInt>,
    /// Coordinate indices of the Smith basis carrying the torsion factors ≥ 2.
    pub torsion_coords: Vec<usize>,
}

impl FPModule {
    pub fn from_presentation(presentation: IntMatrix) -> Self {
        Self { presentation, canon: OnceLock::new() }
    }

    /// Canonical module with the given free rank and torsion chain.
    pub fn from_invariants(rank: usize, torsion: &[BigInt]) -> Result<Self, FpError> {
        for d in torsion {
            if d < &BigInt::from(2) {
                return Err(FpError::BadInvariant(d.clone()));
            }
        }
        let normalized = invariant_factors_from_cyclics(torsion);
        let k = normalized.len();
        let m = IntMatrix::diagonal(k, k + rank, &normalized);
        Ok(Self::from_presentation(m))
    }

    pub fn zero_module() -> Self {
        Self::from_presentation(IntMatrix::zero(0, 0))
    }

    pub fn free(rank: usize) -> Self {
        Self::from_presentation(IntMatrix::zero(0, rank))
    }

    pub fn cyclic(d: i64) -> Self {
        assert!(d.abs() >= 2, "cyclic order must have |d| >= 2, got {d}");
        Self::from_presentation(IntMatrix::from_i64(1, 1, &[d.abs()]))
    }

    pub fn presentation(&self) -> &IntMatrix {
        &self.presentation
    }

    /// Number of generators (columns of the presentation).
    pub fn generators(&self) -> usize {
        self.presentation.cols()
    }

    pub fn canon(&self) -> &CanonData {
        self.canon.get_or_init(|| {
            let snf = smith(&self.presentation);
            let rank = snf.cokernel_rank();
            let mut torsion = Vec::new();
            let mut torsion_coords = Vec::new();
            for (i, d) in snf.diagonal.iter().enumerate() {
                if !d.is_one() {
                    torsion.push(d.clone());
                    torsion_coords.push(i);
                }
            }
            Arc::new(CanonData { snf, rank, torsion, torsion_coords })
        })
    }

    pub fn rank(&self) -> usize {
        self.canon().rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.canon().torsion
    }

    /// (free_rank, torsion invariant factors): the full isomorphism invariant.
    pub fn decompose(&self) -> (usize, Vec<BigInt>) {
        let c = self.canon();
        (c.rank, c.torsion.clone())
    }

    pub fn is_zero_module(&self) -> bool {
        let c = self.canon();
        c.rank == 0 && c.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == 0
    }

    /// |M| for finite M.
    pub fn order(&self) -> Result<BigInt, FpError> {
        if !self.is_finite() {
            return Err(FpError::InfiniteModule);
        }
        Ok(self.torsion().iter().product())
    }

    /// Exponent of the torsion part (1 when torsion-free).
    pub fn exponent(&self) -> BigInt {
        self.torsion().last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn isomorphic(&self, other: &FPModule) -> bool {
        self.decompose() == other.decompose()
    }

    /// Is the generator-coordinate vector v the zero element of M?
    pub fn element_is_zero(&self, v: &[BigInt]) -> bool {
        debug_assert_eq!(v.len(), self.generators());
        in_row_lattice(&self.canon().snf, v)
    }

    pub fn elements_equal(&self, v: &[BigInt], w: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = v.iter().zip(w).map(|(a, b)| a - b).collect();
        self.element_is_zero(&diff)
    }

    /// Smith-basis residue of an element: torsion coordinates reduced mod d_i,
    /// free coordinates exact. Two elements are equal iff residues agree.
    pub fn canonical_residue(&self, v: &[BigInt]) -> Vec<BigInt> {
        let c = self.canon();
        let w = c.snf.right.apply_row(v);
        let mut out = Vec::with_capacity(c.torsion.len() + c.rank);
        for (&coord, d) in c.torsion_coords.iter().zip(&c.torsion) {
            out.push(w[coord].mod_floor(d));
        }
        out.extend(w[c.snf.rank()..].iter().cloned());
        out
    }

    /// Generator coordinates of the element whose Smith-basis residue is
    /// given (torsion coords first, then free coords).
    pub fn element_from_residue(&self, residue: &[BigInt]) -> Vec<BigInt> {
        let c = self.canon();
        assert_eq!(residue.len(), c.torsion.len() + c.rank);
        let mut w = vec![BigInt::zero(); self.generators()];
        for (slot, &coord) in c.torsion_coords.iter().enumerate() {
            w[coord] = residue[slot].clone();
        }
        for (slot, coord) in (c.snf.rank()..self.generators()).enumerate() {
            w[coord] = residue[c.torsion.len() + slot].clone();
        }
        c.snf.right_inv.apply_row(&w)
    }

    /// The module re-presented on its canonical invariants, plus the
    /// mutually inverse isomorphisms (as generator matrices).
    pub fn canonical_module(&self) -> (FPModule, IntMatrix, IntMatrix) {
        let c = self.canon();
        let canon = FPModule::from_invariants(c.rank, &c.torsion)
            .expect("canonical invariants are valid");
        let k = c.torsion.len();
        let n = self.generators();
        // to: M → canon in generator coordinates; v ↦ residues of v·right.
        let mut to = IntMatrix::zero(n, k + c.rank);
        for g in 0..n {
            let v: Vec<BigInt> = (0..n)
                .map(|j| if j == g { BigInt::one() } else { BigInt::zero() })
                .collect();
            let res = self.canonical_residue(&v);
            for (j, r) in res.iter().enumerate() {
                to[(g, j)] = r.clone();
            }
        }
        let mut from = IntMatrix::zero(k + c.rank, n);
        for slot in 0..k + c.rank {
            let mut res = vec![BigInt::zero(); k + c.rank];
            res[slot] = BigInt::one();
            let v = self.element_from_residue(&res);
            for (j, x) in v.iter().enumerate() {
                from[(slot, j)] = x.clone();
            }
        }
        (canon, to, from)
    }

    /// Direct sum with injection index bookkeeping: generators of the i-th
    /// summand occupy the contiguous block starting at `offsets[i]`.
    pub fn direct_sum(parts: &[&FPModule]) -> (FPModule, Vec<usize>) {
        let total_gens: usize = parts.iter().map(|m| m.generators()).sum();
        let total_rels: usize = parts.iter().map(|m| m.presentation.rows()).sum();
        let mut m = IntMatrix::zero(total_rels, total_gens);
        let mut offsets = Vec::with_capacity(parts.len());
        let (mut ro, mut co) = (0, 0);
        for part in parts {
            offsets.push(co);
            let p = &part.presentation;
            for i in 0..p.rows() {
                for j in 0..p.cols() {
                    m[(ro + i, co + j)] = p[(i, j)].clone();
                }
            }
            ro += p.rows();
            co += p.cols();
        }
        (FPModule::from_presentation(m), offsets)
    }

    /// n-fold direct sum of self.
    pub fn power(&self, n: usize) -> FPModule {
        let parts: Vec<&FPModule> = std::iter::repeat_n(self, n).collect();
        FPModule::direct_sum(&parts).0
    }
}

impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }
}
impl Eq for FPModule {}

impl fmt::Debug for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, t) = self.decompose();
        write!(f, "FPModule(Z^{r}")?;
        for d in t {
            write!(f, " + Z/{d}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, t) = self.decompose();
        if r == 0 && t.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        if r > 0 {
            write!(f, "Z{}", if r > 1 { format!("^{r}") } else { String::new() })?;
            first = false;
        }
        for d in t {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        Ok(())
    }
}

/// JSON form: either an explicit presentation or canonical invariants.
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum ModuleJson {
    Presentation { presentation: Vec<Vec<i64>> },
    Invariants { invariants: InvariantsJson },
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct InvariantsJson {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl FPModule {
    pub fn from_json(v: &serde_json::Value) -> Result<FPModule, FpError> {
        let parsed: ModuleJson = serde_json::from_value(v.clone())
            .map_err(|e| FpError::Schema(format!("module: {e}")))?;
        match parsed {
            ModuleJson::Presentation { presentation } => {
                let rows = presentation.len();
                let cols = presentation.first().map_or(0, Vec::len);
                for r in &presentation {
                    if r.len() != cols {
                        return Err(FpError::Schema("ragged presentation rows".into()));
                    }
                }
                let flat: Vec<i64> = presentation.into_iter().flatten().collect();
                Ok(FPModule::from_presentation(IntMatrix::from_i64(rows, cols, &flat)))
            }
            ModuleJson::Invariants { invariants } => {
                let torsion: Vec<BigInt> =
                    invariants.torsion.iter().map(|&d| BigInt::from(d)).collect();
                for d in &torsion {
                    if d < &BigInt::from(2) {
                        return Err(FpError::Schema(format!(
                            "invariants.torsion: factors must be >= 2, got {d}"
                        )));
                    }
                }
                FPModule::from_invariants(invariants.rank, &torsion)
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (rank, torsion) = self.decompose();
        let torsion: Vec<i64> = torsion
            .iter()
            .map(|d| i64::try_from(d).expect("desk-scale invariants"))
            .collect();
        serde_json::json!({ "invariants": { "rank": rank, "torsion": torsion } })
    }
}

/// Order of the coset of v in M (finite because d·v = 0 for d the exponent,
/// valid only when the free coordinates of v vanish).
pub fn element_order(m: &FPModule, v: &[BigInt]) -> Option<BigInt> {
    let c = m.canon();
    let res = m.canonical_residue(v);
    if res[c.torsion.len()..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut ord = BigInt::one();
    for (r, d) in res.iter().zip(&c.torsion) {
        if r.is_zero() {
            continue;
        }
        let o = d / d.gcd(r);
        ord = ord.lcm(&o);
    }
    Some(ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_decompositions() {
        let m = FPModule::from_presentation(IntMatrix::from_i64(1, 1, &[12]));
        assert_eq!(m.decompose(), (0, vec![BigInt::from(12)]));

        let m = FPModule::from_presentation(IntMatrix::from_i64(2, 2, &[2, 0, 0, 0]));
        assert_eq!(m.decompose(), (1, vec![BigInt::from(2)]));

        let m = FPModule::from_presentation(IntMatrix::from_i64(2, 2, &[4, 2, 2, 4]));
        assert_eq!(m.decompose(), (0, vec![BigInt::from(2), BigInt::from(6)]));
        assert_eq!(m.order().unwrap(), BigInt::from(12));
        assert_eq!(m.exponent(), BigInt::from(6));
    }

    #[test]
    fn element_arithmetic_in_z12() {
        let m = FPModule::cyclic(12);
        assert!(m.element_is_zero(&[BigInt::from(24)]));
        assert!(!m.element_is_zero(&[BigInt::from(5)]));
        assert!(m.elements_equal(&[BigInt::from(14)], &[BigInt::from(2)]));
        assert_eq!(
            element_order(&m, &[BigInt::from(4)]),
            Some(BigInt::from(3))
        );
    }

    #[test]
    fn residue_roundtrip() {
        let m = FPModule::from_presentation(IntMatrix::from_i64(2, 3, &[4, 2, 0, 2, 4, 0]));
        let v = vec![BigInt::from(3), BigInt::from(-1), BigInt::from(7)];
        let res = m.canonical_residue(&v);
        let back = m.element_from_residue(&res);
        assert!(m.elements_equal(&v, &back));
    }

    #[test]
    fn canonical_module_isomorphisms_compose() {
        let m = FPModule::from_presentation(IntMatrix::from_i64(2, 3, &[6, 3, 0, 0, 4, 2]));
        let (canon, to, from) = m.canonical_module();
        assert!(m.isomorphic(&canon));
        // to∘from = id on canon, from∘to = id on m (as maps of cosets).
        let n = canon.generators();
        for g in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[g] = BigInt::one();
            let round = to.apply_row(&from.apply_row(&e));
            assert!(canon.elements_equal(&e, &round));
        }
        for g in 0..m.generators() {
            let mut e = vec![BigInt::zero(); m.generators()];
            e[g] = BigInt::one();
            let round = from.apply_row(&to.apply_row(&e));
            assert!(m.elements_equal(&e, &round));
        }
    }

    #[test]
    fn json_roundtrip_through_emitted_form() {
        let m = FPModule::from_presentation(IntMatrix::from_i64(2, 3, &[4, 2, 0, 2, 4, 0]));
        let back = FPModule::from_json(&m.to_json()).unwrap();
        assert!(back.isomorphic(&m));
    }

    #[test]
    fn json_roundtrip() {
        let v: serde_json::Value =
            serde_json::from_str(r#"{"presentation": [[4,2],[2,4]]}"#).unwrap();
        let m = FPModule::from_json(&v).unwrap();
        assert_eq!(m.decompose(), (0, vec![BigInt::from(2), BigInt::from(6)]));

        let v: serde_json::Value =
            serde_json::from_str(r#"{"invariants": {"rank": 1, "torsion": [2, 6]}}"#).unwrap();
        let m = FPModule::from_json(&v).unwrap();
        assert_eq!(m.decompose(), (1, vec![BigInt::from(2), BigInt::from(6)]));

        let bad: serde_json::Value =
            serde_json::from_str(r#"{"invariants": {"rank": 0, "torsion": [0]}}"#).unwrap();
        assert!(FPModule::from_json(&bad).is_err());
    }
}
