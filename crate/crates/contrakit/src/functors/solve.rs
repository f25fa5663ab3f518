//! The infinite linear system b_n − s·b_{n+1} = a_n solved on finite
//! modules, where finitely supported data makes the summation formula
//! b_n = Σ_i s^i·a_{n+i} a finite sum.

use super::{FunctorError, RingElement};
use crate::fpmod::FPModule;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct SystemSolution {
    /// b_0..b_{horizon} in generator coordinates.
    pub solution: Vec<Vec<String>>,
    /// Residuals of b_n − s·b_{n+1} − a_n, all zero on success.
    pub residuals_zero: bool,
    pub unique: bool,
    /// A nonzero solution of the homogeneous system when uniqueness fails.
    pub homogeneous_witness: Option<Vec<String>>,
}

/// Solve b_n − s·b_{n+1} = a_n for n < horizon on a finite module, with the
/// data a finitely supported (positions beyond a.len() are zero).
///
/// The solution is b_n = Σ_{i} s^i·a_{n+i} (finite sum). Uniqueness holds
/// exactly when the module has no s-divisible subgroup; otherwise any
/// element of the prime-to-s part generates a nonzero homogeneous solution
/// through division by s.
pub fn solve_system_fp(
    m: &FPModule,
    s: RingElement,
    a: &[Vec<BigInt>],
    horizon: usize,
) -> Result<SystemSolution, FunctorError> {
    if !m.is_finite() {
        return Err(FunctorError::InfiniteModule);
    }
    let gens = m.generators();
    for row in a {
        assert_eq!(row.len(), gens, "data must be given in generator coordinates");
    }
    let sval = BigInt::from(s.0);
    let zero_elt = vec![BigInt::zero(); gens];

    // b_n = Σ_{i : n+i < a.len()} s^i a_{n+i}, a finite sum.
    let raws: Vec<Vec<BigInt>> = (0..=horizon + 1)
        .map(|n| {
            let mut acc = zero_elt.clone();
            let mut power = BigInt::from(1);
            for row in a.iter().skip(n) {
                for (slot, v) in row.iter().enumerate() {
                    acc[slot] += &power * v;
                }
                power *= &sval;
            }
            acc
        })
        .collect();

    // Verify the residuals exactly: b_n − s·b_{n+1} − a_n ≡ 0 in m.
    let mut residuals_zero = true;
    for n in 0..=horizon {
        let a_n = a.get(n).cloned().unwrap_or_else(|| zero_elt.clone());
        let diff: Vec<BigInt> = (0..gens)
            .map(|j| &raws[n][j] - &sval * &raws[n + 1][j] - &a_n[j])
            .collect();
        if !m.element_is_zero(&diff) {
            residuals_zero = false;
        }
    }

    // Uniqueness: the homogeneous system has a nonzero solution iff some
    // torsion survives with s acting invertibly on it.
    let witness = homogeneous_witness(m, s, horizon);
    Ok(SystemSolution {
        solution: raws
            .iter()
            .take(horizon + 1)
            .map(|v| m.canonical_residue(v).iter().map(reduce_str).collect())
            .collect(),
        residuals_zero,
        unique: witness.is_none(),
        homogeneous_witness: witness,
    })
}

fn reduce_str(v: &BigInt) -> String {
    v.to_string()
}

/// A nonzero homogeneous solution b_n = s^{-n}·x exists exactly when the
/// prime-to-s torsion is nonzero; built by modular inversion there.
fn homogeneous_witness(m: &FPModule, s: RingElement, horizon: usize) -> Option<Vec<String>> {
    let c = m.canon();
    let sval = BigInt::from(s.abs());
    for (slot, d) in c.torsion.iter().enumerate() {
        let coprime = d / crate::arith::s_part(d, &sval);
        if coprime > BigInt::from(1) {
            // The subgroup of order `coprime` in this slot is step·Z/d with
            // step = d/coprime; s acts invertibly on it, so
            // b_n = (s^{-n} mod coprime)·step solves b_n = s·b_{n+1}.
            let step = d / &coprime;
            let s_mod = BigInt::from(s.0).mod_floor(&coprime);
            let inv = crate::arith::inv_mod(&s_mod, &coprime)
                .expect("s invertible on the prime-to-s part");
            let mut seq = Vec::with_capacity(horizon + 1);
            let mut k = BigInt::from(1);
            for _ in 0..=horizon {
                let mut residue = vec![BigInt::zero(); c.torsion.len() + c.rank];
                residue[slot] = (&k * &step).mod_floor(d);
                seq.push(format!("[{}]", join(&residue)));
                k = (&k * &inv).mod_floor(&coprime);
            }
            return Some(seq);
        }
    }
    None
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(torsion: &[i64]) -> FPModule {
        let t: Vec<BigInt> = torsion.iter().map(|&d| BigInt::from(d)).collect();
        FPModule::from_invariants(0, &t).unwrap()
    }

    fn elt(vals: &[i64]) -> Vec<BigInt> {
        vals.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn one_hot_data_in_z8() {
        // m = Z/8, s = 2, a = (1, 0, 0, …): b = (1, 0, 0, …), unique.
        let m = fp(&[8]);
        let sol = solve_system_fp(&m, RingElement(2), &[elt(&[1])], 4).unwrap();
        assert!(sol.residuals_zero);
        assert!(sol.unique);
        assert_eq!(sol.solution[0], vec!["1"]);
        assert_eq!(sol.solution[1], vec!["0"]);
    }

    #[test]
    fn zero_data_unique_zero() {
        let m = fp(&[8]);
        let sol = solve_system_fp(&m, RingElement(2), &[], 4).unwrap();
        assert!(sol.residuals_zero && sol.unique);
        assert!(sol.solution.iter().all(|b| b == &vec!["0".to_string()]));
    }

    #[test]
    fn invertible_part_breaks_uniqueness() {
        // m = Z/12, s = 5: 5 is invertible, solutions exist but are not
        // unique; the witness is a nonzero homogeneous solution.
        let m = fp(&[12]);
        let sol =
            solve_system_fp(&m, RingElement(5), &[elt(&[3]), elt(&[7])], 5).unwrap();
        assert!(sol.residuals_zero);
        assert!(!sol.unique);
        assert!(sol.homogeneous_witness.is_some());
    }

    #[test]
    fn uniqueness_matches_contramodule_flag() {
        use super::super::properties::check_properties;
        for (tors, s) in [(vec![8i64], 2i64), (vec![12], 2), (vec![12], 5), (vec![9, 27], 3)] {
            let m = fp(&tors);
            let sol = solve_system_fp(&m, RingElement(s), &[elt(&vec![1; tors.len()])], 4)
                .unwrap();
            let flags = check_properties(&m, RingElement(s));
            assert_eq!(sol.unique, flags.contramodule.holds, "m={tors:?} s={s}");
            assert!(sol.residuals_zero);
        }
    }

    #[test]
    fn infinite_module_rejected() {
        let err = solve_system_fp(&FPModule::free(1), RingElement(2), &[], 3).unwrap_err();
        assert_eq!(err, FunctorError::InfiniteModule);
    }
}
