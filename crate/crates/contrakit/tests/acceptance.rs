//! The acceptance suite: every criterion runs at the documented desk scale
//! and prints one pass/fail line. `cargo test --test acceptance` is the
//! release gate; the CLI command `contrakit verify --scale desk` runs the
//! same criteria through the same library entry points.

use contrakit::verify::{all_criteria, Scale};

const SEED: u64 = 0;

fn run(index: usize) {
    let (_, name, f) = all_criteria()
        .into_iter()
        .find(|(i, _, _)| *i == index)
        .expect("criterion exists");
    let report = f(SEED, Scale::Desk);
    println!(
        "criterion {:>2} [{}] {}: {}",
        report.index,
        name,
        if report.pass { "PASS" } else { "FAIL" },
        report.detail
    );
    assert!(
        report.pass,
        "criterion {} ({}) failed:\n{}",
        report.index,
        report.name,
        report.witnesses.join("\n")
    );
}

#[test]
fn criterion_01_snf_oracle_equivalence() {
    run(1);
}

#[test]
fn criterion_02_gamma_three_way_agreement() {
    run(2);
}

#[test]
fn criterion_03_delta_prime_decomposition_and_radical_invariance() {
    run(3);
}

#[test]
fn criterion_04_lim1_vanishing_and_delta_lambda_isomorphism() {
    run(4);
}

#[test]
fn criterion_05_implication_diagram() {
    run(5);
}

#[test]
fn criterion_06_counterexample_ce() {
    run(6);
}

#[test]
fn criterion_07_summation_axioms() {
    run(7);
}

#[test]
fn criterion_08_telescope_solver() {
    run(8);
}

#[test]
fn criterion_09_nested_completion() {
    run(9);
}

#[test]
fn criterion_10_matlis_duality() {
    run(10);
}

#[test]
fn criterion_11_covers_and_envelopes() {
    run(11);
}

#[test]
fn criterion_12_classification_round_trips() {
    run(12);
}

#[test]
fn criterion_13_mutation_sensitivity() {
    run(13);
}
