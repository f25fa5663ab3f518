//! Property-based invariants: presentation independence of the canonical
//! form, exact Smith identities, functor identities, grammar round-trips,
//! and precision monotonicity.

use contrakit::atoms::{parse_expr, Atom, AtomExpr};
use contrakit::fpmod::{hom, smith, tensor, Enumerated, FPModule, IntMatrix};
use contrakit::functors::{check_properties, delta_s, gamma_s, RingElement};
use contrakit::padlab::PadicApprox;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |entries| IntMatrix::from_i64(r, c, &entries))
    })
}

fn small_module() -> impl Strategy<Value = FPModule> {
    small_matrix().prop_map(FPModule::from_presentation)
}

/// A random unimodular matrix built from elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            m.add_mul_row(i, j, &BigInt::from(c % 4));
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_product_identity_and_unimodularity(m in small_matrix()) {
        let s = smith(&m);
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal_matrix());
        prop_assert_eq!(s.left.det_bareiss().abs(), BigInt::one());
        prop_assert_eq!(s.right.det_bareiss().abs(), BigInt::one());
        for w in s.diagonal.windows(2) {
            prop_assert!(num_integer::Integer::is_multiple_of(&w[1], &w[0]));
        }
    }

    #[test]
    fn decompose_is_presentation_independent(
        m in small_matrix(),
        ops in proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..6),
    ) {
        let module = FPModule::from_presentation(m.clone());
        // Change of relations: left-multiply by a unimodular matrix.
        let u = unimodular(m.rows().max(1), &ops);
        let changed_rels = if m.rows() > 0 { u.mul(&m) } else { m.clone() };
        // Change of generators: right-multiply by a unimodular matrix.
        let v = unimodular(m.cols().max(1), &ops);
        let changed_gens = if m.cols() > 0 { changed_rels.mul(&v) } else { changed_rels.clone() };
        let module2 = FPModule::from_presentation(changed_gens);
        prop_assert_eq!(module.decompose(), module2.decompose());
    }

    #[test]
    fn hom_and_tensor_identity_functor(m in small_module()) {
        let z = FPModule::free(1);
        prop_assert!(hom(&z, &m).isomorphic(&m));
        prop_assert!(tensor(&z, &m).isomorphic(&m));
    }

    #[test]
    fn hom_count_matches_enumeration(
        a in 2i64..=12,
        b in 2i64..=12,
    ) {
        let m = FPModule::cyclic(a);
        let n = FPModule::cyclic(b);
        let h = hom(&m, &n);
        let expected = Enumerated::from_module(&h).unwrap().order;
        let counted = contrakit::fpmod::enumerate::hom_count_by_presentation(&m, &n).unwrap();
        prop_assert_eq!(expected, counted);
    }

    #[test]
    fn gamma_is_a_submodule_and_delta_kills_it_off_support(
        m in small_module(),
        s in 2i64..=12,
    ) {
        let (g, incl) = gamma_s(&m, RingElement(s));
        prop_assert!(incl.is_injective() || g.is_zero_module());
        // Γ_s(m) is s-power torsion: Δ_q of it vanishes for q coprime to s.
        let q = (2..=13)
            .find(|q| contrakit::arith::is_prime_u64(*q as u64) && s % q != 0)
            .unwrap();
        let (dq, _) = delta_s(&g, RingElement(q));
        let expect_zero = g
            .torsion()
            .iter()
            .all(|d| contrakit::arith::valuation(d, q as u64) == 0);
        prop_assert_eq!(dq.is_zero(), expect_zero);
    }

    #[test]
    fn properties_diagram_never_violated(m in small_module(), s in -8i64..=8) {
        let flags = check_properties(&m, RingElement(s));
        prop_assert!(flags.diagram_violations().is_empty());
    }

    #[test]
    fn atom_grammar_roundtrip(
        free in 0u64..3,
        cyc in proptest::collection::vec((0usize..4, 1u32..4, 1u64..3), 0..3),
        padic in proptest::collection::vec((0usize..4, 1u64..3), 0..3),
        adele in 0u64..3,
    ) {
        let primes = [2u64, 3, 5, 7];
        let mut e = AtomExpr::adele(adele);
        e.add_atom(Atom::Free, free);
        for (pi, k, m) in cyc {
            e.add_atom(Atom::Cyclic { p: primes[pi], k }, m);
        }
        for (pi, m) in padic {
            e.add_atom(Atom::PadicInt(primes[pi]), m);
        }
        let printed = e.to_string();
        let parsed = parse_expr(&printed).unwrap();
        prop_assert_eq!(parsed, e);
    }

    #[test]
    fn padic_precision_monotonicity(
        value in 0i64..100000,
        other in 0i64..100000,
        hi in 6u32..16,
        lo in 2u32..=5,
    ) {
        // Compute at high precision, reduce; equals computing at low.
        let a_hi = PadicApprox::new(3, hi, value);
        let b_hi = PadicApprox::new(3, hi, other);
        let sum_hi = a_hi.add(&b_hi).mul(&a_hi);
        let a_lo = PadicApprox::new(3, lo, value);
        let b_lo = PadicApprox::new(3, lo, other);
        let sum_lo = a_lo.add(&b_lo).mul(&a_lo);
        prop_assert!(sum_hi.reduce_to(lo).congruent(&sum_lo));
    }
}
