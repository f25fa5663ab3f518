//! End-to-end CLI checks through the binary: exit codes, documented outputs,
//! and JSON determinism.

use std::process::Command;

fn contrakit(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_contrakit"))
        .args(args)
        .env("CONTRAKIT_MAX_ENUM", "1000000")
        .output()
        .expect("binary runs")
}

#[test]
fn delta_functor_text_output() {
    let out = contrakit(&[
        "functor",
        "delta",
        "--s",
        "6",
        "--module",
        r#"{"invariants":{"rank":0,"torsion":[12]}}"#,
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("Z/4 + Z/3"), "{stdout}");
}

#[test]
fn envelope_of_z() {
    let out = contrakit(&["envelope", "--module", r#"{"presentation":[[0]]}"#]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("Prod{all}[Zp^1]"), "{stdout}");
}

#[test]
fn usage_errors_exit_2() {
    let out = contrakit(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = contrakit(&[
        "check",
        "--s",
        "2",
        "--module",
        r#"{"invariants":{"rank":0,"torsion":[0]}}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_determinism_modulo_timing() {
    let args = [
        "functor",
        "lambda",
        "--s",
        "6",
        "--module",
        r#"{"presentation":[[0]]}"#,
        "--format",
        "json",
    ];
    let a = contrakit(&args);
    let b = contrakit(&args);
    let norm = |out: &std::process::Output| {
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let mut v = v;
        v["timing_ms_excluded_from_comparison"] = 0.into();
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(norm(&a), norm(&b));
}

#[test]
fn lab_ce_quotient_passes_and_smoke_verify_runs() {
    let out = contrakit(&["lab", "ce-quotient", "--p", "2", "--n", "16", "--m", "12"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = contrakit(&["verify", "--scale", "smoke", "--seed", "0", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["all_pass"], true);
    assert_eq!(v["result"]["criteria"].as_array().unwrap().len(), 13);
}

#[test]
fn every_lab_scenario_runs_clean() {
    for scenario in ["axioms", "telescope", "two-var", "nakayama", "nested-completion"] {
        let out = contrakit(&[
            "lab", scenario, "--p", "2", "--n", "12", "--m", "8", "--k", "8", "--trials", "10",
            "--seed", "1",
        ]);
        assert!(
            out.status.success(),
            "{scenario}: {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn cover_and_classify_and_dual() {
    let out = contrakit(&["cover", "--name", "cyclic(12)", "--level", "8"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("Zp(2) + Zp(3)"), "{stdout}");

    let out = contrakit(&["classify", "--expr", "Zp(2) + Zp(3)^5"]);
    assert!(out.status.success());
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("flat_cotorsion"), "{s}");

    let out = contrakit(&["dual", "--module", r#"{"invariants":{"rank":0,"torsion":[2,8]}}"#]);
    assert!(out.status.success());
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("Z/2 + Z/8"), "{s}");
}
