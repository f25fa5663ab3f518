//! Structural flags of atom expressions: cotorsion, reduced, divisible, flat.

use super::atom::{Atom, AtomExpr};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExprFlags {
    pub cotorsion: bool,
    pub reduced: bool,
    pub divisible: bool,
    pub flat: bool,
    /// Human-readable witness for each false flag.
    pub witnesses: Vec<String>,
}

/// Per-atom flag table (cotorsion, reduced, divisible, flat).
///
/// Finite cyclics are cotorsion (bounded groups are), Z_p is cotorsion as a
/// p-contramodule, Q and Q_p and the Prufer groups are cotorsion because they
/// are divisible hence injective; Z and Z[1/s] are not: their completion maps
/// miss almost every target coordinate.
pub fn atom_flags(a: &Atom) -> (bool, bool, bool, bool) {
    use Atom::*;
    match a {
        Free => (false, true, false, true),
        Cyclic { .. } => (true, true, false, false),
        Rat => (true, false, true, true),
        PadicInt(_) => (true, true, false, true),
        PadicRat(_) => (true, false, true, true),
        Prufer(_) => (true, false, true, false),
        Localized(_) => (false, true, false, true),
    }
}

pub fn flags_atoms(e: &AtomExpr) -> ExprFlags {
    let mut f = ExprFlags {
        cotorsion: true,
        reduced: true,
        divisible: true,
        flat: true,
        witnesses: Vec::new(),
    };
    for (a, _) in e.terms() {
        let (cot, red, div, flat) = atom_flags(a);
        if !cot && f.cotorsion {
            f.cotorsion = false;
            f.witnesses.push(cotorsion_witness(a));
        }
        if !red && f.reduced {
            f.reduced = false;
            f.witnesses.push(format!("{a} is a divisible subgroup"));
        }
        if !div && f.divisible {
            f.divisible = false;
            f.witnesses.push(divisible_witness(a));
        }
        if !flat && f.flat {
            f.flat = false;
            f.witnesses.push(format!("{a} has torsion"));
        }
    }
    if e.adele_rank() > 0 {
        // prod_p Z_p^r: cotorsion (product of cotorsion), reduced, flat,
        // not divisible.
        if f.divisible {
            f.divisible = false;
            f.witnesses
                .push("no component of the adele block is 2-divisible at the 2 slot".into());
        }
    }
    f
}

fn cotorsion_witness(a: &Atom) -> String {
    match a {
        Atom::Free => {
            "the completion Z -> Zp(2) is not surjective, so Ext1(Q, Z) != 0".into()
        }
        Atom::Localized(s) => {
            let q = first_prime_not_dividing(*s);
            format!(
                "the completion Zinv({s}) -> Zp({q}) is not surjective, so Ext1(Q, Zinv({s})) != 0"
            )
        }
        _ => format!("{a} is not cotorsion"),
    }
}

fn divisible_witness(a: &Atom) -> String {
    match a {
        Atom::Cyclic { p, k } => format!("multiplication by {p} is not onto Z/{p}^{k}"),
        Atom::Free => "multiplication by 2 is not onto Z".into(),
        Atom::PadicInt(p) => format!("multiplication by {p} is not onto Zp({p})"),
        Atom::Localized(s) => {
            let q = first_prime_not_dividing(*s);
            format!("multiplication by {q} is not onto Zinv({s})")
        }
        _ => format!("{a} is not divisible"),
    }
}

/// The free p-contramodule normal form: an expression is a free
/// p-contramodule exactly when it is Zp(p)^n, i.e. flat, reduced, cotorsion,
/// and supported at the single prime p (its mod-p reduction is then free
/// over Z/p of the same rank).
pub fn free_padic_contramodule_rank(e: &super::atom::AtomExpr, p: u64) -> Option<u64> {
    if e.adele_rank() != 0 {
        return None;
    }
    let mut rank = 0;
    for (a, m) in e.terms() {
        match a {
            Atom::PadicInt(q) if *q == p => rank += m,
            _ => return None,
        }
    }
    Some(rank)
}

pub fn first_prime_not_dividing(s: u64) -> u64 {
    let mut q = 2u64;
    loop {
        if crate::arith::is_prime_u64(q) && !s.is_multiple_of(q) {
            return q;
        }
        q += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::atom::parse_expr;

    fn flags(s: &str) -> ExprFlags {
        flags_atoms(&parse_expr(s).unwrap())
    }

    #[test]
    fn free_contramodule_normal_form() {
        let e = parse_expr("Zp(3)^4").unwrap();
        assert_eq!(free_padic_contramodule_rank(&e, 3), Some(4));
        assert_eq!(free_padic_contramodule_rank(&e, 2), None);
        assert_eq!(free_padic_contramodule_rank(&parse_expr("0").unwrap(), 3), Some(0));
        assert_eq!(
            free_padic_contramodule_rank(&parse_expr("Zp(3) + Z/3").unwrap(), 3),
            None
        );
        // The normal form sits inside the flat-cotorsion class.
        let f = flags_atoms(&e);
        assert!(f.flat && f.reduced && f.cotorsion);
    }

    #[test]
    fn documented_flag_sets() {
        let f = flags("Zp(2) + Z/8");
        assert!(f.cotorsion && f.reduced && !f.divisible && !f.flat);

        let f = flags("Q");
        assert!(f.cotorsion && f.divisible && f.flat && !f.reduced);

        let f = flags("Zinv(6)");
        assert!(!f.cotorsion && f.reduced && f.flat && !f.divisible);
        assert!(f.witnesses.iter().any(|w| w.contains("Zp(5)")));

        let f = flags("Adele(1)");
        assert!(f.cotorsion && f.reduced && f.flat && !f.divisible);

        // The zero expression has every flag vacuously.
        let f = flags("0");
        assert!(f.cotorsion && f.reduced && f.divisible && f.flat);
    }
}
