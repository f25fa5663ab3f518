//! The six structural flags of an fp module relative to an element s:
//! torsion-free, divisible, separated, complete, contraadjusted,
//! contramodule. Each is decided by its own definitional computation, so the
//! implication diagram between them is a genuine cross-check, not an
//! artifact of shared code.

use super::delta::delta_s;
use super::RingElement;
use crate::fpmod::{same_submodule, FPModule, IntMatrix, Morphism};
use num_bigint::BigInt;
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Debug, Serialize)]
pub struct FlagWitness {
    pub holds: bool,
    pub witness: String,
}

impl FlagWitness {
    fn yes(witness: impl Into<String>) -> Self {
        Self { holds: true, witness: witness.into() }
    }
    fn no(witness: impl Into<String>) -> Self {
        Self { holds: false, witness: witness.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyFlags {
    pub torsion_free: FlagWitness,
    pub divisible: FlagWitness,
    pub separated: FlagWitness,
    pub complete: FlagWitness,
    pub contraadjusted: FlagWitness,
    pub contramodule: FlagWitness,
}

impl PropertyFlags {
    /// The implication diagram: contramodule ⇒ contraadjusted ⇒ complete;
    /// separated ∧ complete ⇒ contramodule; and under torsion-freeness,
    /// complete ⇒ contraadjusted and contramodule ⇒ separated.
    pub fn diagram_violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.contramodule.holds && !self.contraadjusted.holds {
            v.push("contramodule without contraadjusted");
        }
        if self.contraadjusted.holds && !self.complete.holds {
            v.push("contraadjusted without complete");
        }
        if self.separated.holds && self.complete.holds && !self.contramodule.holds {
            v.push("separated and complete without contramodule");
        }
        if self.torsion_free.holds {
            if self.complete.holds && !self.contraadjusted.holds {
                v.push("torsion-free complete without contraadjusted");
            }
            if self.contramodule.holds && !self.separated.holds {
                v.push("torsion-free contramodule without separated");
            }
        }
        v
    }
}

pub fn check_properties(m: &FPModule, s: RingElement) -> PropertyFlags {
    let (rank, torsion) = m.decompose();
    let m = &FPModule::from_invariants(rank, &torsion).expect("canonical invariants");
    let marc = Arc::new(m.clone());
    let zero_mod = m.is_zero_module();

    if s.is_zero() {
        // s = 0: multiplication by 0 is injective/surjective only on 0;
        // the completion tower is constant, and every module is a
        // 0-contramodule since the localization ring vanishes.
        return PropertyFlags {
            torsion_free: if zero_mod {
                FlagWitness::yes("zero module")
            } else {
                FlagWitness::no("0·x = 0 for any nonzero x")
            },
            divisible: if zero_mod {
                FlagWitness::yes("zero module")
            } else {
                FlagWitness::no("0·m misses every nonzero element")
            },
            separated: FlagWitness::yes("the tower m/0·m is constant with identity map"),
            complete: FlagWitness::yes("the tower m/0·m is constant with identity map"),
            contraadjusted: FlagWitness::yes("the localization at 0 vanishes"),
            contramodule: FlagWitness::yes("the localization at 0 vanishes"),
        };
    }

    if s.is_unit() {
        return PropertyFlags {
            torsion_free: FlagWitness::yes("±1 acts bijectively"),
            divisible: FlagWitness::yes("±1 acts bijectively"),
            separated: if zero_mod {
                FlagWitness::yes("zero module")
            } else {
                FlagWitness::no("s^n·m = m, so the intersection is everything")
            },
            complete: FlagWitness::yes("m/s^n·m = 0 and the zero tower is hit"),
            contraadjusted: FlagWitness::yes("Ext from a free module vanishes"),
            contramodule: if zero_mod {
                FlagWitness::yes("zero module")
            } else {
                FlagWitness::no("the identity map Z[1/s] = Z → m is nonzero")
            },
        };
    }

    // Torsion-free: kernel of multiplication by s.
    let mul_s = Morphism::scalar(&marc, s.abs());
    let (ker, ker_incl) = mul_s.kernel();
    let torsion_free = if ker.is_zero_module() {
        FlagWitness::yes("multiplication by s has zero kernel")
    } else {
        FlagWitness::no(format!(
            "s kills the nonzero element with coordinates {:?}",
            first_nonzero_row(&ker_incl)
        ))
    };

    // Divisible: cokernel of multiplication by s.
    let (coker, _) = mul_s.cokernel();
    let divisible = if coker.is_zero_module() {
        FlagWitness::yes("multiplication by s is onto")
    } else {
        FlagWitness::no(format!("m/s·m ≅ {coker} is nonzero"))
    };

    // Separated: the intersection ∩ s^n·m is the stabilized image of s^n on
    // the torsion submodule (the free part contributes nothing: no nonzero
    // integer vector is divisible by s^n for every n once |s| ≥ 2).
    let e = s.stabilization_exponent(m);
    let torsion_sub = torsion_submodule(&marc);
    let stable = image_of_power_on(&torsion_sub, &marc, s, e + 1);
    let stable_next = image_of_power_on(&torsion_sub, &marc, s, e + 2);
    debug_assert!(
        same_submodule(stable.matrix(), stable_next.matrix(), m),
        "image of s^n on torsion failed to stabilize at e+1"
    );
    let (stable_mod, _) = crate::fpmod::submodule_from_rows(stable.matrix(), &marc);
    let separated = if stable_mod.is_zero_module() {
        FlagWitness::yes("the stabilized torsion image vanishes and the free part separates")
    } else {
        FlagWitness::no(format!(
            "∩ s^n·m contains a subgroup ≅ {stable_mod} of s-invertible torsion"
        ))
    };

    // Complete: the quotient tower m/s^n·m must stabilize (transition at the
    // stabilized depth an isomorphism); growth in the free part is exactly
    // what the limit adds.
    let q1 = quotient_by_power(&marc, s, e + 1);
    let q2 = quotient_by_power(&marc, s, e + 2);
    let stabilized = q1.isomorphic(&q2);
    let complete = if stabilized {
        FlagWitness::yes(format!(
            "m/s^n·m stabilizes at {q1} from depth {}",
            e + 1
        ))
    } else {
        FlagWitness::no(format!(
            "the tower grows: m/s^{}m ≅ {q1} but m/s^{}m ≅ {q2}",
            e + 1,
            e + 2
        ))
    };

    // Contraadjusted: surjectivity of the completion adjunction, read off
    // the componentwise descriptor of Δ_s.
    let (_, adj) = delta_s(m, s);
    let contraadjusted = if adj.surjective {
        FlagWitness::yes("the map onto the completion is surjective componentwise")
    } else {
        let offender = adj
            .components
            .iter()
            .find(|c| !c.surjective)
            .map(|c| format!("{} → {} is not surjective", c.summand, c.image))
            .unwrap_or_else(|| "a component map fails surjectivity".into());
        FlagWitness::no(offender)
    };

    // Contramodule: no s-divisible submodules (the largest subgroup D with
    // s·D = D, found by iterating the image of s on the torsion part) and
    // the Ext obstruction of the contraadjusted check.
    let sdiv = max_s_divisible(&torsion_sub, &marc, s, e);
    let hom_vanishes = sdiv.is_zero_module();
    let contramodule = if hom_vanishes && adj.surjective {
        FlagWitness::yes("no s-divisible submodules and the completion map is onto")
    } else if !hom_vanishes {
        FlagWitness::no(format!(
            "the subgroup ≅ {sdiv} satisfies s·D = D, so maps from Z[1/s] exist"
        ))
    } else {
        FlagWitness::no("the Ext obstruction of the completion map is nonzero")
    };

    PropertyFlags { torsion_free, divisible, separated, complete, contraadjusted, contramodule }
}

/// The torsion submodule: kernel of multiplication by the exponent, which is
/// all of the torsion and nothing of the free part.
fn torsion_submodule(m: &Arc<FPModule>) -> Morphism {
    let exp = m.exponent();
    let mul = Morphism::new(
        Arc::clone(m),
        Arc::clone(m),
        IntMatrix::identity(m.generators()).scale(&exp),
    )
    .expect("well defined");
    mul.kernel().1
}

/// Inclusion of s^k·T into m, for T a submodule given by its inclusion.
fn image_of_power_on(
    t_incl: &Morphism,
    ambient: &Arc<FPModule>,
    s: RingElement,
    k: u32,
) -> Morphism {
    let mut power = BigInt::from(1);
    for _ in 0..k {
        power *= s.abs();
    }
    let scaled = t_incl.matrix().scale(&power);
    crate::fpmod::submodule_from_rows(&scaled, ambient).1
}

fn quotient_by_power(m: &Arc<FPModule>, s: RingElement, k: u32) -> FPModule {
    let mut power = BigInt::from(1);
    for _ in 0..k {
        power *= s.abs();
    }
    let mul = Morphism::new(
        Arc::clone(m),
        Arc::clone(m),
        IntMatrix::identity(m.generators()).scale(&power),
    )
    .expect("well defined");
    let (q, _) = mul.cokernel();
    let (r, t) = q.decompose();
    FPModule::from_invariants(r, &t).expect("valid")
}

/// The largest subgroup D with s·D = D: iterate D ← s·D on the torsion
/// submodule until it stabilizes (at most e+1 steps for bounded torsion).
fn max_s_divisible(
    torsion_incl: &Morphism,
    ambient: &Arc<FPModule>,
    s: RingElement,
    e: u32,
) -> FPModule {
    let mut current = torsion_incl.clone();
    for _ in 0..=e + 1 {
        let next = image_of_power_on(&current, ambient, s, 1);
        if same_submodule(current.matrix(), next.matrix(), ambient) {
            break;
        }
        current = next;
    }
    let (sub, _) = crate::fpmod::submodule_from_rows(current.matrix(), ambient);
    let (r, t) = sub.decompose();
    FPModule::from_invariants(r, &t).expect("valid")
}

fn first_nonzero_row(incl: &Morphism) -> Vec<String> {
    for i in 0..incl.matrix().rows() {
        let row = incl.matrix().row(i);
        if row.iter().any(|x| !num_traits::Zero::is_zero(x)) {
            return row.iter().map(BigInt::to_string).collect();
        }
    }
    vec!["0".into()]
}
