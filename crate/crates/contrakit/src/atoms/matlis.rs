//! Matlis duality for finite p-groups: T ↦ Hom(T, Z/p^K) with K the exponent
//! valuation, which absorbs the whole dual of T inside Q_p/Z_p.

use super::atom::AtomError;
use crate::arith::valuation;
use crate::fpmod::{hom, Enumerated, FPModule, IntMatrix, Morphism};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::sync::Arc;

/// The prime p such that m is a finite p-group; None for the zero module.
pub fn p_primary_prime(m: &FPModule) -> Result<Option<u64>, AtomError> {
    if !m.is_finite() {
        return Err(AtomError::NotPPrimary);
    }
    let torsion = m.torsion();
    if torsion.is_empty() {
        return Ok(None);
    }
    let factors = crate::arith::factorize(torsion.last().unwrap());
    if factors.len() != 1 {
        return Err(AtomError::NotPPrimary);
    }
    let p = *factors.keys().next().unwrap();
    for d in torsion {
        let f = crate::arith::factorize(d);
        if f.len() != 1 || !f.contains_key(&p) {
            return Err(AtomError::NotPPrimary);
        }
    }
    Ok(Some(p))
}

/// Matlis dual of a finite p-group, computed as Hom(T, Z/p^K).
pub fn matlis_dual(m: &FPModule) -> Result<FPModule, AtomError> {
    let Some(p) = p_primary_prime(m)? else {
        return Ok(FPModule::zero_module());
    };
    let k = valuation(&m.exponent(), p);
    let env = FPModule::cyclic(BigInt::from(p).pow(k).to_i64().expect("desk-scale exponent"));
    Ok(hom(m, &env))
}

/// Dual of a morphism f: A → B of finite p-groups (same prime), as a map
/// Hom(B, Z/p^K) → Hom(A, Z/p^K) on the canonical dual generators.
///
/// With A ≅ ⊕ Z/a_i and B ≅ ⊕ Z/b_j canonical and the envelope exponent
/// p^K ≥ exponent of both, the dual basis pairs φ_i ↔ generator i, and
/// f*^T[j][i] = f[i][j]·a_i/b_j mod a_i (integral by well-definedness).
pub fn dual_morphism(f: &Morphism) -> Result<Morphism, AtomError> {
    let a = f.source();
    let b = f.target();
    let pa = p_primary_prime(a)?;
    let pb = p_primary_prime(b)?;
    let p = match (pa, pb) {
        (Some(p), Some(q)) if p == q => p,
        (Some(p), None) | (None, Some(p)) => p,
        (None, None) => {
            let z = Arc::new(FPModule::zero_module());
            return Ok(Morphism::zero(&z, &z));
        }
        _ => return Err(AtomError::NotPPrimary),
    };
    let _ = p;
    // Canonical coordinates on both sides:
    // canonical A --from_a--> A --f--> B --to_b--> canonical B.
    let (ca, _, from_a) = a.canonical_module();
    let (cb, to_b, _) = b.canonical_module();
    let fc = from_a.mul(f.matrix()).mul(&to_b);
    let da = ca.torsion().to_vec();
    let db = cb.torsion().to_vec();
    // Dual modules share the invariants of the originals.
    let dual_a = FPModule::from_invariants(0, &da).expect("invariants valid");
    let dual_b = FPModule::from_invariants(0, &db).expect("invariants valid");
    let mut dual = IntMatrix::zero(db.len(), da.len());
    for j in 0..db.len() {
        for i in 0..da.len() {
            // c ≡ f[i][j]·a_i/b_j (mod a_i); integral because b_j divides
            // f[i][j]·a_i.
            let num = &fc[(i, j)] * &da[i];
            debug_assert!((&num % &db[j]).is_zero(), "ill-defined morphism leaked through");
            let c = (num / &db[j]).mod_floor(&da[i]);
            dual[(j, i)] = c;
        }
    }
    Morphism::new(Arc::new(dual_b), Arc::new(dual_a), dual)
        .map_err(|e| AtomError::BadParameter(format!("dual morphism ill-defined: {e}")))
}

/// Evaluation-map bijectivity by enumeration: for every nonzero x in T there
/// is a homomorphism T → Z/p^K not killing x, and |T| = |T**|. Finite plus
/// injective forces bijective.
pub fn double_dual_evaluation_bijective(m: &FPModule) -> Result<bool, AtomError> {
    let Some(p) = p_primary_prime(m)? else {
        return Ok(true);
    };
    let k = valuation(&m.exponent(), p);
    let pk = BigInt::from(p).pow(k);
    let e = Enumerated::from_module(m).map_err(|_| AtomError::NotPPrimary)?;
    let dual = matlis_dual(m)?;
    let ddual = matlis_dual(&dual)?;
    if !ddual.isomorphic(m) {
        return Ok(false);
    }
    // Characters: tuples (y_i) with d_i·y_i ≡ 0 mod p^K; pairing
    // x ↦ Σ x_i·y_i mod p^K. Injectivity of evaluation = for each x ≠ 0 some
    // character has nonzero pairing; the canonical character p^K/d_i on slot i
    // works, so scan those.
    for x in e.elements() {
        if x.iter().all(|&v| v == 0) {
            continue;
        }
        let mut separated = false;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let di = BigInt::from(e.factors[i]);
            let y = &pk / &di;
            let pairing = (BigInt::from(xi) * y).mod_floor(&pk);
            if !pairing.is_zero() {
                separated = true;
                break;
            }
        }
        if !separated {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_duals() {
        // dual(Z/p^k) = Z/p^k
        let m = FPModule::cyclic(8);
        assert!(matlis_dual(&m).unwrap().isomorphic(&m));

        // dual(Z/p ⊕ Z/p²) has the same invariants.
        let m = FPModule::from_invariants(0, &[BigInt::from(3), BigInt::from(9)]).unwrap();
        let d = matlis_dual(&m).unwrap();
        assert_eq!(d.decompose(), m.decompose());

        assert!(matlis_dual(&FPModule::zero_module()).unwrap().is_zero_module());
    }

    #[test]
    fn non_p_primary_rejected() {
        assert!(matches!(
            matlis_dual(&FPModule::cyclic(6)),
            Err(AtomError::NotPPrimary)
        ));
        assert!(matches!(
            matlis_dual(&FPModule::free(1)),
            Err(AtomError::NotPPrimary)
        ));
    }

    #[test]
    fn evaluation_bijective_on_small_groups() {
        for inv in [vec![4i64], vec![2, 4], vec![3, 9, 9]] {
            let t: Vec<BigInt> = inv.iter().map(|&d| BigInt::from(d)).collect();
            let m = FPModule::from_invariants(0, &t).unwrap();
            assert!(double_dual_evaluation_bijective(&m).unwrap(), "{inv:?}");
        }
    }

    #[test]
    fn dualizing_multiplication_by_p() {
        // f = ·2 : Z/4 → Z/4 dualizes to ·2 again; check via composition with
        // itself being ·4 = 0 on the dual side too.
        let z4 = Arc::new(FPModule::cyclic(4));
        let f = Morphism::scalar(&z4, 2);
        let fd = dual_morphism(&f).unwrap();
        assert!(fd.source().isomorphic(&z4));
        let twice = fd.compose(&dual_morphism(&f).unwrap()).unwrap();
        assert!(twice.is_zero_map());
        assert!(!fd.is_zero_map());
    }

    #[test]
    fn dual_exactness_on_a_short_exact_sequence() {
        // 0 → Z/2 → Z/8 → Z/4 → 0 dualizes to 0 → Z/4 → Z/8 → Z/2 → 0.
        let z2 = Arc::new(FPModule::cyclic(2));
        let z8 = Arc::new(FPModule::cyclic(8));
        let z4 = Arc::new(FPModule::cyclic(4));
        let incl =
            Morphism::new(Arc::clone(&z2), Arc::clone(&z8), IntMatrix::from_i64(1, 1, &[4]))
                .unwrap();
        let proj =
            Morphism::new(Arc::clone(&z8), Arc::clone(&z4), IntMatrix::from_i64(1, 1, &[1]))
                .unwrap();
        assert!(crate::fpmod::verify_short_exact(&incl, &proj));
        let dp = dual_morphism(&proj).unwrap();
        let di = dual_morphism(&incl).unwrap();
        assert!(crate::fpmod::verify_short_exact(&dp, &di));
    }
}
