//! Classification normal forms over Z: injective (divisible) modules,
//! flat cotorsion modules, and reduced cotorsion modules, each with a
//! build-from-data inverse for round-trip checking.

use super::atom::{Atom, AtomExpr};
use super::flags::flags_atoms;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectiveForm {
    /// Multiplicity of Q.
    pub rat_rank: u64,
    /// Multiplicity of Q_p/Z_p per prime.
    pub prufer: BTreeMap<u64, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatCotorsionForm {
    /// Multiplicity of Q (the completion at the zero ideal).
    pub rat_rank: u64,
    /// Rank of the uniform block ∏_all Z_p.
    pub adele_rank: u64,
    /// Extra Z_p rank per prime, on top of the uniform block.
    pub padic_ranks: BTreeMap<u64, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedCotorsionForm {
    pub adele_rank: u64,
    /// Per prime: Z_p rank and the p-power cyclic factors (p, k, mult).
    pub per_prime: BTreeMap<u64, PrimeFactorList>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct PrimeFactorList {
    pub padic_rank: u64,
    pub cyclic: Vec<(u32, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyVerdict {
    pub injective: Option<InjectiveForm>,
    pub flat_cotorsion: Option<FlatCotorsionForm>,
    pub reduced_cotorsion: Option<ReducedCotorsionForm>,
    /// When all three are None: the flags that disqualify the expression.
    pub not_in_class: Option<String>,
}

pub fn classify(e: &AtomExpr) -> ClassifyVerdict {
    let injective = as_injective(e);
    let flat_cotorsion = as_flat_cotorsion(e);
    let reduced_cotorsion = as_reduced_cotorsion(e);
    let not_in_class = if injective.is_none() && flat_cotorsion.is_none() && reduced_cotorsion.is_none()
    {
        let f = flags_atoms(e);
        let mut missing = Vec::new();
        if !f.cotorsion {
            missing.push("cotorsion");
        }
        if !f.divisible {
            missing.push("divisible");
        }
        if !f.flat {
            missing.push("flat");
        }
        if !f.reduced {
            missing.push("reduced");
        }
        Some(format!("fails: {}", missing.join(", ")))
    } else {
        None
    };
    ClassifyVerdict { injective, flat_cotorsion, reduced_cotorsion, not_in_class }
}

fn as_injective(e: &AtomExpr) -> Option<InjectiveForm> {
    let (rat_rank, prufer) = e.divisible_part_if_divisible()?;
    Some(InjectiveForm { rat_rank, prufer })
}

fn as_flat_cotorsion(e: &AtomExpr) -> Option<FlatCotorsionForm> {
    let mut form = FlatCotorsionForm {
        rat_rank: 0,
        adele_rank: e.adele_rank(),
        padic_ranks: BTreeMap::new(),
    };
    for (a, m) in e.terms() {
        match a {
            Atom::Rat => form.rat_rank += m,
            Atom::PadicInt(p) => *form.padic_ranks.entry(*p).or_insert(0) += m,
            _ => return None,
        }
    }
    Some(form)
}

fn as_reduced_cotorsion(e: &AtomExpr) -> Option<ReducedCotorsionForm> {
    let mut form = ReducedCotorsionForm { adele_rank: e.adele_rank(), per_prime: BTreeMap::new() };
    for (a, m) in e.terms() {
        match a {
            Atom::PadicInt(p) => {
                form.per_prime.entry(*p).or_default().padic_rank += m;
            }
            Atom::Cyclic { p, k } => {
                form.per_prime.entry(*p).or_default().cyclic.push((*k, m));
            }
            _ => return None,
        }
    }
    for fl in form.per_prime.values_mut() {
        fl.cyclic.sort_unstable();
    }
    Some(form)
}

/// Inverse constructions: build the canonical expression from each form.
pub fn build_injective(f: &InjectiveForm) -> AtomExpr {
    let mut e = AtomExpr::zero();
    e.add_atom(Atom::Rat, f.rat_rank);
    for (p, m) in &f.prufer {
        e.add_atom(Atom::Prufer(*p), *m);
    }
    e
}

pub fn build_flat_cotorsion(f: &FlatCotorsionForm) -> AtomExpr {
    let mut e = AtomExpr::adele(f.adele_rank);
    e.add_atom(Atom::Rat, f.rat_rank);
    for (p, m) in &f.padic_ranks {
        e.add_atom(Atom::PadicInt(*p), *m);
    }
    e
}

pub fn build_reduced_cotorsion(f: &ReducedCotorsionForm) -> AtomExpr {
    let mut e = AtomExpr::adele(f.adele_rank);
    for (p, fl) in &f.per_prime {
        e.add_atom(Atom::PadicInt(*p), fl.padic_rank);
        for (k, m) in &fl.cyclic {
            e.add_atom(Atom::Cyclic { p: *p, k: *k }, *m);
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::atom::parse_expr;

    #[test]
    fn documented_verdicts() {
        // Q^2 + Prufer(2)^3: injective with X = 2, X_2 = 3.
        let v = classify(&parse_expr("Q^2 + Prufer(2)^3").unwrap());
        let inj = v.injective.unwrap();
        assert_eq!(inj.rat_rank, 2);
        assert_eq!(inj.prufer.get(&2), Some(&3));

        // Zp(2) + Zp(3)^5: flat cotorsion with ranks {2:1, 3:5}.
        let v = classify(&parse_expr("Zp(2) + Zp(3)^5").unwrap());
        let fc = v.flat_cotorsion.unwrap();
        assert_eq!(fc.padic_ranks.get(&2), Some(&1));
        assert_eq!(fc.padic_ranks.get(&3), Some(&5));
        // Also reduced cotorsion.
        assert!(v.reduced_cotorsion.is_some());

        // Z: none of the three; cotorsion fails.
        let v = classify(&parse_expr("Z").unwrap());
        assert!(v.injective.is_none() && v.flat_cotorsion.is_none());
        assert!(v.not_in_class.unwrap().contains("cotorsion"));
    }

    #[test]
    fn round_trips() {
        let f = InjectiveForm {
            rat_rank: 4,
            prufer: [(2, 1), (7, 3)].into_iter().collect(),
        };
        assert_eq!(classify(&build_injective(&f)).injective.unwrap(), f);

        let f = FlatCotorsionForm {
            rat_rank: 1,
            adele_rank: 2,
            padic_ranks: [(3, 2)].into_iter().collect(),
        };
        assert_eq!(classify(&build_flat_cotorsion(&f)).flat_cotorsion.unwrap(), f);

        let f = ReducedCotorsionForm {
            adele_rank: 0,
            per_prime: [(
                2,
                PrimeFactorList { padic_rank: 1, cyclic: vec![(1, 2), (3, 1)] },
            )]
            .into_iter()
            .collect(),
        };
        assert_eq!(
            classify(&build_reduced_cotorsion(&f)).reduced_cotorsion.unwrap(),
            f
        );
    }
}
