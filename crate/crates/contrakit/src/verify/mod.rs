//! The acceptance suite: every criterion is a pure function of (seed, scale)
//! producing a pass/fail report with witnesses, shared by the CLI `verify`
//! command and the acceptance test target.

pub mod atomflags;
pub mod corpus;
pub mod oracles;

use crate::atoms::{
    build_flat_cotorsion, build_injective, build_reduced_cotorsion, classify, cotorsion_envelope,
    double_dual_evaluation_bijective, dual_morphism, envelope_kernel_is_zero, flat_cover_corpus,
    flags_atoms, matlis_dual, parse_expr, Atom, CorpusName,
};
use crate::batch;
use crate::fpmod::{
    smith, submodule_from_rows, verify_short_exact, Enumerated, FPModule, IntMatrix,
};
use crate::functors::{
    check_properties, delta_s, gamma_s_three_routes, lambda_s, lim1_sequence, RingElement,
};
use crate::mutation::Mutation;
use crate::padlab::{
    check_axioms, counterexample::counterexample_ce_with, nakayama_trace, nested_completion,
    solve_telescope, two_var_report, Carrier, FiniteProductZp, NullSeqC, PadicApprox,
    PowerSeriesMod, QuotientCmodE, TowerContext, TowerElement, ZpModPk, ZpScalar,
};
use crate::padlab::twovar::{ScalarPair, TowerCarrier};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scale {
    /// Reduced trial counts, finishes in seconds.
    Smoke,
    /// The full documented sizes.
    Desk,
}

impl Scale {
    pub fn parse(s: &str) -> Option<Scale> {
        match s {
            "smoke" => Some(Scale::Smoke),
            "desk" => Some(Scale::Desk),
            _ => None,
        }
    }

    fn trials(self, desk: usize) -> usize {
        match self {
            Scale::Desk => desk,
            Scale::Smoke => (desk / 10).max(3),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub index: usize,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub witnesses: Vec<String>,
}

impl CriterionReport {
    fn new(index: usize, name: &str) -> Self {
        Self { index, name: name.into(), pass: true, detail: String::new(), witnesses: Vec::new() }
    }

    fn fail(&mut self, witness: String) {
        self.pass = false;
        if self.witnesses.len() < 8 {
            self.witnesses.push(witness);
        }
    }
}

fn rng_for(seed: u64, criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(criterion))
}

/// Criterion 1: Smith-form cokernel invariants match the determinantal
/// divisor oracle, and the element-order census of the enumerated groups
/// agrees on all finite cokernels within the bound.
pub fn criterion_1_snf_oracle(seed: u64, scale: Scale) -> CriterionReport {
    let mut report = CriterionReport::new(1, "Smith form versus determinantal-divisor oracle");
    let trials = scale.trials(200);
    let mut rng = rng_for(seed, 1);
    let matrices: Vec<IntMatrix> =
        (0..trials).map(|_| corpus::random_matrix(&mut rng, 5, 30)).collect();
    let results = batch::run(matrices, |m| {
        let s = smith(&m);
        let via_smith = (s.cokernel_rank(), s.invariant_factors());
        let via_oracle = oracles::invariants_by_determinantal_divisors(&m);
        let mut failure = None;
        if via_smith != via_oracle {
            failure = Some(format!(
                "invariants disagree on {m:?}: smith {via_smith:?} vs oracle {via_oracle:?}"
            ));
        } else if via_smith.0 == 0 {
            let module = FPModule::from_presentation(m.clone());
            if let Ok(e) = Enumerated::from_module_bounded(&module, 100_000) {
                let oracle_group = Enumerated::from_factors(
                    via_oracle
                        .1
                        .iter()
                        .map(|d| u64::try_from(d).expect("bounded order"))
                        .collect(),
                );
                if e.order_census() != oracle_group.order_census() {
                    failure = Some(format!("order census disagrees on {m:?}"));
                }
            }
        }
        failure
    });
    for f in results.into_iter().flatten() {
        report.fail(f);
    }
    report.detail = format!("{trials} random matrices up to 5x5, entries in [-30, 30]");
    report
}

/// Criterion 2: three-way agreement of the torsion functor.
pub fn criterion_2_gamma_three_way(seed: u64, scale: Scale) -> CriterionReport {
    criterion_2_with_mutation(seed, scale, Mutation::None)
}

pub fn criterion_2_with_mutation(seed: u64, scale: Scale, mutation: Mutation) -> CriterionReport {
    let mut report = CriterionReport::new(2, "torsion functor three-route agreement");
    let trials = scale.trials(100);
    let mut rng = rng_for(seed, 2);
    let modules: Vec<FPModule> =
        (0..trials).map(|_| corpus::random_fp_module(&mut rng)).collect();
    let results = batch::run(modules, |m| {
        let mut failures = Vec::new();
        for s in [2i64, 3, 6, 12, 30] {
            let routes = gamma_s_three_routes(&m, RingElement(s), mutation);
            if !routes.agree() {
                failures.push(format!(
                    "routes disagree for {m:?} at s={s}: direct {:?}, telescope {:?}, tor {:?}",
                    routes.direct, routes.telescope_kernel, routes.tor_route
                ));
            }
        }
        failures
    });
    for f in results.into_iter().flatten() {
        report.fail(f);
    }
    report.detail = format!("{trials} random modules x s in {{2,3,6,12,30}}");
    report
}

/// Criterion 3: prime decomposition and radical invariance of Δ.
pub fn criterion_3_delta_decomposition(seed: u64, scale: Scale) -> CriterionReport {
    let mut report = CriterionReport::new(3, "completion prime decomposition and radical invariance");
    let trials = scale.trials(100);
    let mut rng = rng_for(seed, 3);
    let modules: Vec<FPModule> =
        (0..trials).map(|_| corpus::random_fp_module(&mut rng)).collect();
    let results = batch::run(modules, |m| {
        let d6 = delta_s(&m, RingElement(6)).0;
        let d2 = delta_s(&m, RingElement(2)).0;
        let d3 = delta_s(&m, RingElement(3)).0;
        let d12 = delta_s(&m, RingElement(12)).0;
        let mut failures = Vec::new();
        if d6 != d2.clone().sum(&d3) {
            failures.push(format!("Δ_6 ≠ Δ_2 ⊕ Δ_3 on {m:?}: {d6} vs {}", d2.sum(&d3)));
        } else if d6 != d12 {
            failures.push(format!("Δ_6 ≠ Δ_12 on {m:?}: {d6} vs {d12}"));
        }
        failures
    });
    for f in results.into_iter().flatten() {
        report.fail(f);
    }
    report.detail = format!("{trials} random modules, exact atom-expression equality");
    report
}

/// Criterion 4: the derived-limit term is certified zero and Δ ≅ Λ.
pub fn criterion_4_lim1(seed: u64, scale: Scale) -> CriterionReport {
    let mut report = CriterionReport::new(4, "derived-limit vanishing and Δ ≅ Λ");
    let trials = scale.trials(60);
    let mut rng = rng_for(seed, 4);
    let mut modules = corpus::named_modules();
    modules.extend((0..trials).map(|_| corpus::random_fp_module(&mut rng)));
    let results = batch::run(modules, |m| {
        let mut failures = Vec::new();
        for s in [2i64, 6] {
            let data = lim1_sequence(&m, RingElement(s));
            if !data.lim1.is_zero_module() || !data.pro_zero_verified {
                failures.push(format!("lim1 not certified zero for {m:?} at s={s}"));
            }
            let (dv, adj) = delta_s(&m, RingElement(s));
            let lv = lambda_s(&m, RingElement(s));
            if dv != lv || adj.lim1 != "0" {
                failures.push(format!("Δ and Λ differ on {m:?} at s={s}: {dv} vs {lv}"));
            }
        }
        failures
    });
    for f in results.into_iter().flatten() {
        report.fail(f);
    }
    report.detail = "named corpus plus random modules at s in {2, 6}".into();
    report
}

/// Criterion 5: the implication diagram holds across the decidable corpus.
pub fn criterion_5_implication_diagram(seed: u64, scale: Scale) -> CriterionReport {
    let mut report = CriterionReport::new(5, "property implication diagram");
    let trials = scale.trials(60);
    let mut rng = rng_for(seed, 5);
    let mut modules = corpus::named_modules();
    modules.extend((0..trials).map(|_| corpus::random_fp_module(&mut rng)));
    let svals = [0i64, 1, -1, 2, 6, 5];
    let results = batch::run(modules, |m| {
        let mut failures = Vec::new();
        for s in svals {
            let flags = check_properties(&m, RingElement(s));
            for v in flags.diagram_violations() {
                failures.push(format!("{m:?} at s={s}: {v}"));
            }
        }
        failures
    });
    for f in results.into_iter().flatten() {
        report.fail(f);
    }
    // Atom rows.
    let atoms = [
        Atom::Free,
        Atom::Rat,
        Atom::Cyclic { p: 2, k: 3 },
        Atom::Cyclic { p: 5, k: 2 },
        Atom::PadicInt(2),
        Atom::PadicInt(7),
        Atom::PadicRat(3),
        Atom::Prufer(2),
        Atom::Prufer(5),
        Atom::Localized(6),
        Atom::Localized(10),
    ];
    for a in &atoms {
        for s in svals {
            let f = atomflags::atom_property_flags(a, RingElement(s));
            for v in f.diagram_violations() {
                report.fail(format!("atom {a} at s={s}: {v}"));
            }
        }
    }
    for s in svals {
        for v in atomflags::adele_property_flags(RingElement(s)).diagram_violations() {
            report.fail(format!("adele block at s={s}: {v}"));
        }
    }
    // Lab carriers.
    for (name, f) in atomflags::lab_carrier_flags(12) {
        for v in f.diagram_violations() {
            report.fail(format!("lab carrier {name}: {v}"));
        }
    }
    report.detail = "fp modules x s, atoms x s, adele block, lab carriers".into();
    report
}

/// Criterion 6: the non-separated contramodule counterexample.
pub fn criterion_6_counterexample(_seed: u64, _scale: Scale) -> CriterionReport {
    criterion_6_with_mutation(Mutation::None)
}

pub fn criterion_6_with_mutation(mutation: Mutation) -> CriterionReport {
    let mut report = CriterionReport::new(6, "non-separated contramodule counterexample");
    for p in [2u64, 3] {
        let ce = counterexample_ce_with(p, 16, 12, mutation);
        if !ce.all_pass() {
            for c in ce.checks.iter().filter(|c| !c.pass) {
                report.fail(format!("p={p}: {}: {}", c.name, c.witness));
            }
        }
    }
    report.detail = "p in {2, 3}, precision 16, filtration depth 12".into();
    report
}

/// Criterion 7: summation axioms across every carrier, plus the two-variable
/// identities (evaluation order, binomial, substitution).
pub fn criterion_7_summation_axioms(seed: u64, scale: Scale) -> CriterionReport {
    criterion_7_with_mutation(seed, scale, Mutation::None)
}

pub fn criterion_7_with_mutation(seed: u64, scale: Scale, mutation: Mutation) -> CriterionReport {
    let mut report = CriterionReport::new(7, "infinite summation axioms at precision 24");
    let trials = scale.trials(100);
    let mut rng = rng_for(seed, 7);

    macro_rules! run_axioms {
        ($carrier:expr) => {{
            let r = check_axioms(&$carrier, trials, &mut rng);
            if !r.all_pass() {
                for c in r.checks.iter().filter(|c| !c.pass) {
                    report.fail(format!("{}: {}: {}", r.carrier, c.name, c.witness));
                }
            }
        }};
    }
    run_axioms!(ZpScalar { p: 2, precision: 24 });
    run_axioms!(ZpScalar { p: 3, precision: 24 });
    run_axioms!(ZpModPk { p: 2, k: 24 });
    run_axioms!(FiniteProductZp { p: 2, precision: 24, copies: 3 });
    run_axioms!(NullSeqC { p: 2, precision: 24 });
    run_axioms!(QuotientCmodE { p: 2, precision: 24 });
    run_axioms!(PowerSeriesMod { modulus: 4, window: 24 });

    // Two-variable identities; the binomial mutation lands here.
    let tower = TowerCarrier { ctx: TowerContext { p: 2, cutoff: 10 } };
    match two_var_report(&tower, trials.min(40), &mut rng, mutation) {
        Ok(r) => {
            if !r.all_pass() {
                report.fail(format!("{}: {}", r.carrier, r.witness));
            }
        }
        Err(e) => report.fail(format!("tower carrier rejected: {e}")),
    }
    let scalars = ScalarPair { p: 3, precision: 24, t_factor: 2 };
    match two_var_report(&scalars, trials.min(40), &mut rng, mutation) {
        Ok(r) => {
            if !r.all_pass() {
                report.fail(format!("{}: {}", r.carrier, r.witness));
            }
        }
        Err(e) => report.fail(format!("scalar pair rejected: {e}")),
    }
    report.detail = format!("{trials} trials per carrier, exact congruences");
    report
}

/// Criterion 8: telescope solver residuals and uniqueness.
pub fn criterion_8_telescope(seed: u64, scale: Scale) -> CriterionReport {
    let mut report = CriterionReport::new(8, "telescope solver exactness");
    let trials = scale.trials(100);
    let mut rng = rng_for(seed, 8);
    let c2 = ZpScalar { p: 2, precision: 24 };
    let c5 = ZpScalar { p: 5, precision: 6 };
    for t in 0..trials {
        let len = 1 + t % 8;
        let a2: Vec<PadicApprox> = (0..len).map(|_| c2.random(&mut rng)).collect();
        let (_, sol) = solve_telescope(&c2, &a2);
        if !sol.residuals_zero || !sol.homogeneous_unique {
            report.fail(format!("trial {t} over Zp(2): {}", sol.witness));
        }
        let a5: Vec<PadicApprox> = (0..len).map(|_| c5.random(&mut rng)).collect();
        let (_, sol) = solve_telescope(&c5, &a5);
        if !sol.residuals_zero || !sol.homogeneous_unique {
            report.fail(format!("trial {t} over Zp(5): {}", sol.witness));
        }
    }
    // On top of the scalar carriers: the nested Nakayama trace on deep
    // ideal elements replays cleanly.
    let ctx = TowerContext { p: 2, cutoff: 10 };
    let mut deep = TowerElement::constant(ctx, 1);
    for _ in 0..6 {
        deep = deep.mul(&TowerElement::x(ctx));
    }
    match nakayama_trace(ctx, &deep, 6) {
        Ok(r) if r.pass() => {}
        Ok(r) => report.fail(format!("nakayama trace incomplete: {r:?}")),
        Err(e) => report.fail(format!("nakayama trace error: {e}")),
    }
    report.detail = format!("{trials} random telescope systems, exact residuals");
    report
}

/// Criterion 9: the nested completion over (2, x) at cutoff 12.
pub fn criterion_9_nested_completion(seed: u64, scale: Scale) -> CriterionReport {
    let mut report = CriterionReport::new(9, "nested completion over (p, x)");
    let trials = scale.trials(20);
    let mut rng = rng_for(seed, 9);
    let ctx = TowerContext { p: 2, cutoff: 12 };
    for t in 0..trials {
        // Random Cauchy data: c_{n+1} = c_n + random element of I^n.
        let k = ctx.cutoff as usize;
        let mut c = Vec::with_capacity(k);
        let mut cur = random_tower(&mut rng, ctx);
        c.push(cur.clone());
        for n in 1..k {
            cur = cur.add(&random_ideal_element(&mut rng, ctx, n as u32));
            c.push(cur.clone());
        }
        match nested_completion(ctx, &c) {
            Ok((b, cert)) => {
                if !cert.congruences_verified || !cert.replay_matches {
                    report.fail(format!("trial {t}: certificate failed"));
                }
                // Decomposition independence: perturbing each c_n within its
                // I^n equivalence class leaves b unchanged mod I^K.
                let c2: Vec<TowerElement> = c
                    .iter()
                    .enumerate()
                    .map(|(i, cn)| {
                        if i + 1 < k {
                            cn.add(&random_ideal_element(&mut rng, ctx, (i + 1) as u32))
                        } else {
                            cn.clone()
                        }
                    })
                    .collect();
                if let Ok((b2, _)) = nested_completion(ctx, &c2) {
                    if b2 != b {
                        report.fail(format!(
                            "trial {t}: completion depends on the representative"
                        ));
                    }
                }
            }
            Err(e) => report.fail(format!("trial {t}: {e}")),
        }
    }
    report.detail = format!("{trials} random Cauchy sequences, K = 12, exact congruences");
    report
}

fn random_tower(rng: &mut ChaCha8Rng, ctx: TowerContext) -> TowerElement {
    let coeffs: Vec<BigInt> =
        (0..ctx.cutoff as usize).map(|_| BigInt::from(rng.gen::<u32>())).collect();
    TowerElement::from_coeffs(ctx, &coeffs)
}

fn random_ideal_element(rng: &mut ChaCha8Rng, ctx: TowerContext, n: u32) -> TowerElement {
    // Σ_b p^{max(0, n−b)}·x^b·random.
    let k = ctx.cutoff as usize;
    let coeffs: Vec<BigInt> = (0..k)
        .map(|b| {
            let scale = BigInt::from(ctx.p).pow(n.saturating_sub(b as u32));
            BigInt::from(rng.gen::<u16>()) * scale
        })
        .collect();
    TowerElement::from_coeffs(ctx, &coeffs)
}

/// Criterion 10: Matlis duality on the full small-p-group corpus.
pub fn criterion_10_matlis(seed: u64, scale: Scale) -> CriterionReport {
    let mut report = CriterionReport::new(10, "involutive duality of finite p-groups");
    let max_k = match scale {
        Scale::Desk => 4,
        Scale::Smoke => 2,
    };
    for p in [2u64, 3] {
        let groups = corpus::all_p_groups(p, 3, max_k);
        let failures = batch::run(groups, |m| {
            let mut local = Vec::new();
            match matlis_dual(&m) {
                Ok(d) => {
                    if d.decompose() != m.decompose() {
                        local.push(format!("dual invariants differ for {m:?}"));
                    }
                }
                Err(e) => local.push(format!("dual failed for {m:?}: {e}")),
            }
            match double_dual_evaluation_bijective(&m) {
                Ok(true) => {}
                Ok(false) => local.push(format!("evaluation not bijective for {m:?}")),
                Err(e) => local.push(format!("evaluation check failed for {m:?}: {e}")),
            }
            local
        });
        for f in failures.into_iter().flatten() {
            report.fail(f);
        }
    }
    // 50 random short exact sequences of finite p-groups, dualized.
    let mut rng = rng_for(seed, 10);
    let ses_trials = scale.trials(50);
    for t in 0..ses_trials {
        let p = if t % 2 == 0 { 2 } else { 3 };
        let b = Arc::new(corpus::random_p_group(&mut rng, p, 3, 3));
        // Random subgroup generated by one or two elements.
        let gens = 1 + (t % 2);
        let rows: Vec<Vec<BigInt>> = (0..gens)
            .map(|_| {
                (0..b.generators())
                    .map(|_| BigInt::from(rng.gen_range(0..=8i64)))
                    .collect()
            })
            .collect();
        let gmat = IntMatrix::from_rows(rows);
        let (_, incl) = submodule_from_rows(&gmat, &b);
        let (_, proj) = incl.cokernel();
        // Canonical short exact sequence 0 → A → B → B/A → 0.
        if !verify_short_exact(&incl, &proj) {
            report.fail(format!("trial {t}: constructed sequence not exact"));
            continue;
        }
        match (dual_morphism(&proj), dual_morphism(&incl)) {
            (Ok(dp), Ok(di)) => {
                if !verify_short_exact(&dp, &di) {
                    report.fail(format!("trial {t}: dualized sequence not exact"));
                }
                // Enumeration cross-check: orders multiply across the
                // dualized sequence and match the originals.
                let orders = (
                    Enumerated::from_module(dp.source()).map(|e| e.order),
                    Enumerated::from_module(dp.target()).map(|e| e.order),
                    Enumerated::from_module(di.target()).map(|e| e.order),
                );
                if let (Ok(oc), Ok(ob), Ok(oa)) = orders {
                    let original = Enumerated::from_module(&b).map(|e| e.order).unwrap_or(0);
                    if ob != oa * oc || ob != original {
                        report.fail(format!(
                            "trial {t}: dual orders {oa}·{oc} vs {ob} (original {original})"
                        ));
                    }
                }
            }
            (a, b) => {
                report.fail(format!(
                    "trial {t}: dualization failed: {:?} / {:?}",
                    a.err(),
                    b.err()
                ));
            }
        }
    }
    report.detail = format!(
        "all p-groups with <= 3 generators, exponent <= p^{max_k}, p in {{2,3}}; {ses_trials} dualized sequences"
    );
    report
}

/// Criterion 11: the cover/envelope corpus and envelope injectivity.
pub fn criterion_11_corpus(seed: u64, scale: Scale) -> CriterionReport {
    let mut report = CriterionReport::new(11, "flat covers and cotorsion envelopes");
    for name in [
        CorpusName::Cyclic(12),
        CorpusName::Cyclic(30),
        CorpusName::Prufer(2),
        CorpusName::Prufer(3),
        CorpusName::QModZ,
        CorpusName::ZEnvelope,
    ] {
        let seq = flat_cover_corpus(&name, 12);
        if !seq.all_pass() {
            for c in seq.checks.iter().filter(|c| !c.pass) {
                report.fail(format!("{}: {}: {}", seq.name, c.name, c.witness));
            }
        }
    }
    // envelope(Z/12) = Z/4 ⊕ Z/3.
    let (e, _, cok) = cotorsion_envelope(&FPModule::cyclic(12));
    if e.to_string() != "Z/4 + Z/3" || !cok.zero {
        report.fail(format!("envelope of Z/12 came out as {e}"));
    }
    // Envelope maps injective on random modules, cokernel a Q-vector space,
    // and the envelope itself cotorsion.
    let trials = scale.trials(50);
    let mut rng = rng_for(seed, 11);
    for t in 0..trials {
        let m = corpus::random_fp_module(&mut rng);
        let (env, map, cok) = cotorsion_envelope(&m);
        if !map.injective || !envelope_kernel_is_zero(&m) {
            report.fail(format!("trial {t}: envelope map not injective on {m:?}"));
        }
        if !cok.q_vector_space {
            report.fail(format!("trial {t}: cokernel not flagged a Q-vector space"));
        }
        if !flags_atoms(&env).cotorsion {
            report.fail(format!("trial {t}: envelope of {m:?} not cotorsion: {env}"));
        }
    }
    report.detail = format!("corpus at level 12; {trials} random envelope checks");
    report
}

/// Criterion 12: classification round-trips on random multiplicity data.
pub fn criterion_12_classification(seed: u64, scale: Scale) -> CriterionReport {
    let mut report = CriterionReport::new(12, "classification round-trips");
    let trials = scale.trials(100);
    let mut rng = rng_for(seed, 12);
    let primes = [2u64, 3, 5, 7, 11];
    for t in 0..trials {
        // Injective form.
        let inj = crate::atoms::InjectiveForm {
            rat_rank: rng.gen_range(0..5),
            prufer: primes
                .iter()
                .filter_map(|&p| {
                    let m = rng.gen_range(0..4u64);
                    (m > 0).then_some((p, m))
                })
                .collect(),
        };
        let back = classify(&build_injective(&inj));
        if back.injective.as_ref() != Some(&inj) {
            report.fail(format!("trial {t}: injective round-trip failed: {inj:?}"));
        }
        // Flat cotorsion form.
        let fc = crate::atoms::FlatCotorsionForm {
            rat_rank: rng.gen_range(0..3),
            adele_rank: rng.gen_range(0..3),
            padic_ranks: primes
                .iter()
                .filter_map(|&p| {
                    let m = rng.gen_range(0..4u64);
                    (m > 0).then_some((p, m))
                })
                .collect(),
        };
        let back = classify(&build_flat_cotorsion(&fc));
        if back.flat_cotorsion.as_ref() != Some(&fc) {
            report.fail(format!("trial {t}: flat-cotorsion round-trip failed: {fc:?}"));
        }
        // Reduced cotorsion form.
        let rc = crate::atoms::ReducedCotorsionForm {
            adele_rank: rng.gen_range(0..2),
            per_prime: primes
                .iter()
                .take(3)
                .filter_map(|&p| {
                    let rank = rng.gen_range(0..3u64);
                    let n_cyc = rng.gen_range(0..3usize);
                    let mut cyclic: Vec<(u32, u64)> = (0..n_cyc)
                        .map(|_| (rng.gen_range(1..4u32), rng.gen_range(1..3u64)))
                        .collect();
                    cyclic.sort_unstable();
                    cyclic.dedup_by(|a, b| {
                        if a.0 == b.0 {
                            b.1 += a.1;
                            true
                        } else {
                            false
                        }
                    });
                    (rank > 0 || !cyclic.is_empty()).then_some((
                        p,
                        crate::atoms::classify::PrimeFactorList { padic_rank: rank, cyclic },
                    ))
                })
                .collect(),
        };
        let back = classify(&build_reduced_cotorsion(&rc));
        if back.reduced_cotorsion.as_ref() != Some(&rc) {
            report.fail(format!("trial {t}: reduced-cotorsion round-trip failed: {rc:?}"));
        }
    }
    // The documented verdicts.
    let v = classify(&parse_expr("Q^2 + Prufer(2)^3").unwrap());
    if v.injective.is_none() {
        report.fail("Q^2 + Prufer(2)^3 not classified injective".into());
    }
    let v = classify(&parse_expr("Zp(2) + Zp(3)^5").unwrap());
    if v.flat_cotorsion.is_none() {
        report.fail("Zp(2) + Zp(3)^5 not classified flat cotorsion".into());
    }
    let v = classify(&parse_expr("Z").unwrap());
    if v.not_in_class.is_none() {
        report.fail("Z wrongly classified".into());
    }
    report.detail = format!("{trials} random multiplicity vectors per normal form");
    report
}

/// Criterion 13: each seeded mutation makes at least one criterion fail.
pub fn criterion_13_mutation_sensitivity(seed: u64, scale: Scale) -> CriterionReport {
    let mut report = CriterionReport::new(13, "mutation sensitivity of the suite");
    let small = match scale {
        Scale::Desk => Scale::Smoke,
        Scale::Smoke => Scale::Smoke,
    };
    let telescope = criterion_2_with_mutation(seed, small, Mutation::TelescopeIndexShift);
    if telescope.pass {
        report.fail("telescope index mutation survived the torsion three-route check".into());
    } else {
        report.witnesses.push(format!(
            "telescope defect caught: {}",
            telescope.witnesses.first().cloned().unwrap_or_default()
        ));
    }
    let binomial = criterion_7_with_mutation(seed, small, Mutation::BinomialIndexShift);
    if binomial.pass {
        report.fail("binomial index mutation survived the summation axioms".into());
    } else {
        report.witnesses.push(format!(
            "binomial defect caught: {}",
            binomial.witnesses.first().cloned().unwrap_or_default()
        ));
    }
    let membership = criterion_6_with_mutation(Mutation::TailMembershipOffByOne);
    if membership.pass {
        report.fail("membership off-by-one survived the counterexample checks".into());
    } else {
        report.witnesses.push(format!(
            "membership defect caught: {}",
            membership.witnesses.first().cloned().unwrap_or_default()
        ));
    }
    report.detail = "three seeded single-site defects, each must break a criterion".into();
    report
}

pub type CriterionFn = fn(u64, Scale) -> CriterionReport;

pub fn all_criteria() -> Vec<(usize, &'static str, CriterionFn)> {
    vec![
        (1, "snf-oracle", criterion_1_snf_oracle as CriterionFn),
        (2, "gamma-three-way", criterion_2_gamma_three_way),
        (3, "delta-decomposition", criterion_3_delta_decomposition),
        (4, "lim1-vanishing", criterion_4_lim1),
        (5, "implication-diagram", criterion_5_implication_diagram),
        (6, "counterexample-ce", criterion_6_counterexample),
        (7, "summation-axioms", criterion_7_summation_axioms),
        (8, "telescope-solver", criterion_8_telescope),
        (9, "nested-completion", criterion_9_nested_completion),
        (10, "matlis-duality", criterion_10_matlis),
        (11, "covers-envelopes", criterion_11_corpus),
        (12, "classification", criterion_12_classification),
        (13, "mutation-sensitivity", criterion_13_mutation_sensitivity),
    ]
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub scale: Scale,
    pub criteria: Vec<CriterionReport>,
    pub all_pass: bool,
}

/// Run the full suite; criteria fan out in parallel and the reports are
/// merged in criterion order.
pub fn verify_all(seed: u64, scale: Scale) -> SuiteReport {
    let trace = std::env::var("CONTRAKIT_TRACE").is_ok();
    let jobs = all_criteria();
    let mut criteria = batch::run(jobs, move |(i, name, f)| {
        let t0 = std::time::Instant::now();
        let r = f(seed, scale);
        if trace {
            eprintln!("criterion {i} [{name}] finished in {:?}", t0.elapsed());
        }
        r
    });
    criteria.sort_by_key(|c| c.index);
    let all_pass = criteria.iter().all(|c| c.pass);
    SuiteReport { seed, scale, criteria, all_pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_suite_passes() {
        let report = verify_all(0, Scale::Smoke);
        for c in &report.criteria {
            assert!(c.pass, "criterion {}: {}: {:?}", c.index, c.name, c.witnesses);
        }
    }
}
