//! The derived projective limit of the torsion tower and the exact sequence
//! 0 → lim¹ ker(s^n) → Δ_s → Λ_s → 0: both terms computed as the kernel and
//! cokernel of the (id − shift) endomorphism on the truncated product, with
//! a pro-vanishing certificate making the truncation sound.

use super::RingElement;
use crate::fpmod::smith::{smith, solve_row_combination};
use crate::fpmod::{FPModule, IntMatrix, Morphism};
use num_bigint::BigInt;
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug)]
pub struct Lim1Data {
    /// Canonical invariants of the tower levels ker(s^n), n = 1.. .
    pub tower: Vec<FPModule>,
    /// Transition matrices (multiplication by s) between consecutive levels,
    /// verified well defined.
    pub transitions: Vec<Morphism>,
    pub lim: FPModule,
    pub lim1: FPModule,
    /// Composites over this many consecutive transitions vanish, which is
    /// what makes the truncated computation compute the honest limit.
    pub pro_zero_span: usize,
    pub pro_zero_verified: bool,
}

impl Lim1Data {
    pub fn certificate(&self) -> Lim1Certificate {
        Lim1Certificate {
            tower: self.tower.iter().map(|t| format!("{t}")).collect(),
            lim: format!("{}", self.lim),
            lim1: format!("{}", self.lim1),
            pro_zero_span: self.pro_zero_span,
            pro_zero_verified: self.pro_zero_verified,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Lim1Certificate {
    pub tower: Vec<String>,
    pub lim: String,
    pub lim1: String,
    pub pro_zero_span: usize,
    pub pro_zero_verified: bool,
}

/// Build the tower {ker(s^n ⊂ m)} with multiplication-by-s transitions and
/// compute lim / lim¹ from (id − shift) on the truncated direct product.
pub fn lim1_sequence(m: &FPModule, s: RingElement) -> Lim1Data {
    // Towers and transitions live on the canonical presentation.
    let m = &canonical(m);
    let e = s.stabilization_exponent(m);
    let depth = (e as usize + 2).max(3);
    let marc = Arc::new(m.clone());

    // Tower levels as abstract modules with inclusions into m.
    let mut levels: Vec<(FPModule, Morphism)> = Vec::with_capacity(depth);
    for n in 1..=depth {
        let mut power = BigInt::from(1);
        for _ in 0..n {
            power *= s.abs();
        }
        let mul = Morphism::new(
            Arc::clone(&marc),
            Arc::clone(&marc),
            IntMatrix::identity(m.generators()).scale(&power),
        )
        .expect("multiplication well defined");
        levels.push(mul.kernel());
    }

    // Transition t_n: level n+1 → level n is multiplication by s, expressed
    // on the submodule generators by solving in the lattice spanned by the
    // level-n generators together with the ambient relations.
    let mut transitions = Vec::with_capacity(depth - 1);
    for n in 0..depth - 1 {
        let (ref sub_hi, ref incl_hi) = levels[n + 1];
        let (ref sub_lo, ref incl_lo) = levels[n];
        let lattice = incl_lo.matrix().stack(m.presentation());
        let snf = smith(&lattice);
        let hi_gens = incl_hi.matrix();
        let mut rows = Vec::with_capacity(hi_gens.rows());
        for g in 0..hi_gens.rows() {
            let target: Vec<BigInt> = hi_gens.row(g).iter().map(|x| x * s.abs()).collect();
            let combo = solve_row_combination(&snf, &target)
                .expect("s·ker(s^{n+1}) lies in ker(s^n)");
            rows.push(combo[..incl_lo.matrix().rows()].to_vec());
        }
        let matrix = if hi_gens.rows() == 0 {
            IntMatrix::zero(0, incl_lo.matrix().rows())
        } else {
            IntMatrix::from_rows(rows)
        };
        let t = Morphism::new(
            Arc::new(sub_hi.clone()),
            Arc::new(sub_lo.clone()),
            matrix,
        )
        .expect("transition well defined");
        transitions.push(t);
    }

    // Pro-vanishing: the composite of e+1 consecutive transitions is zero
    // (every torsion element dies under s^{e+1}).
    let span = (e as usize) + 1;
    let mut pro_zero_verified = true;
    for start in 0..depth.saturating_sub(span) {
        // Compose transitions from level start+span+1 down to start+1.
        let mut comp: Option<Morphism> = None;
        for k in (start..start + span).rev() {
            comp = Some(match comp {
                None => transitions[k].clone(),
                Some(c) => c.compose(&transitions[k]).expect("tower composes"),
            });
        }
        // comp: level start+span → level start; must be zero.
        if let Some(c) = comp {
            if !c.is_zero_map() {
                pro_zero_verified = false;
            }
        }
    }

    // (id − shift) on ⊕_{n=1}^{depth} ker(s^n): (x_n) ↦ (x_n − t_n(x_{n+1})).
    let parts: Vec<&FPModule> = levels.iter().map(|(sub, _)| sub).collect();
    let (product, offsets) = FPModule::direct_sum(&parts);
    let total = product.generators();
    let mut matrix = IntMatrix::zero(total, total);
    for (n, (sub, _)) in levels.iter().enumerate() {
        let gens = sub.generators();
        for g in 0..gens {
            // +x_n contribution.
            matrix[(offsets[n] + g, offsets[n] + g)] += BigInt::from(1);
        }
        if n > 0 {
            // −t_{n−1}(x_n) lands in level n−1.
            let t = transitions[n - 1].matrix();
            for g in 0..gens {
                for h in 0..t.cols() {
                    let v = -&t[(g, h)];
                    matrix[(offsets[n] + g, offsets[n - 1] + h)] += v;
                }
            }
        }
    }
    let parc = Arc::new(product);
    let id_minus_shift =
        Morphism::new(Arc::clone(&parc), Arc::clone(&parc), matrix).expect("well defined");
    let lim = canonical(&id_minus_shift.kernel().0);
    let lim1 = canonical(&id_minus_shift.cokernel().0);

    Lim1Data {
        tower: levels.iter().map(|(sub, _)| canonical(sub)).collect(),
        transitions,
        lim,
        lim1,
        pro_zero_span: span,
        pro_zero_verified,
    }
}

fn canonical(m: &FPModule) -> FPModule {
    let (r, t) = m.decompose();
    FPModule::from_invariants(r, &t).expect("valid invariants")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(rank: usize, torsion: &[i64]) -> FPModule {
        let t: Vec<BigInt> = torsion.iter().map(|&d| BigInt::from(d)).collect();
        FPModule::from_invariants(rank, &t).unwrap()
    }

    #[test]
    fn documented_towers() {
        // m = Z/p², s = p: tower Z/p ← Z/p² ← Z/p² ← …, lim = lim¹ = 0.
        let data = lim1_sequence(&fp(0, &[9]), RingElement(3));
        assert_eq!(data.tower[0].decompose(), (0, vec![BigInt::from(3)]));
        assert_eq!(data.tower[1].decompose(), (0, vec![BigInt::from(9)]));
        assert!(data.lim.is_zero_module());
        assert!(data.lim1.is_zero_module());
        assert!(data.pro_zero_verified);

        // m = Z, s = p: tower of zeros.
        let data = lim1_sequence(&FPModule::free(1), RingElement(5));
        assert!(data.tower.iter().all(FPModule::is_zero_module));
        assert!(data.lim.is_zero_module() && data.lim1.is_zero_module());

        // m = Z/6, s = 2: lim = lim¹ = 0.
        let data = lim1_sequence(&fp(0, &[6]), RingElement(2));
        assert!(data.lim.is_zero_module() && data.lim1.is_zero_module());
        assert!(data.pro_zero_verified);
    }

    #[test]
    fn transitions_compose_toward_zero() {
        let data = lim1_sequence(&fp(1, &[8, 24]), RingElement(6));
        // Adjacent transitions are well defined by construction; their long
        // composites vanish.
        assert!(data.pro_zero_verified);
        assert!(data.lim1.is_zero_module());
    }
}
