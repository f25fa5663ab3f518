//! Request dispatch: route to the owning module, assemble a deterministic
//! RunReport, and render it as JSON or text.

use super::request::{FunctorKind, LabParams, Request};
use crate::atoms::{classify, cotorsion_envelope, flat_cover_corpus, matlis_dual};
use crate::functors::{
    cech_complex, check_properties, delta_multi, delta_s, gamma_i, gamma_s, lambda_s,
};
use crate::padlab::twovar::{ScalarPair, TowerCarrier};
use crate::padlab::{
    check_axioms, counterexample_ce, nakayama_trace, nested_completion, solve_telescope,
    two_var_report, Carrier, PadicApprox, TowerContext, TowerElement, ZpScalar,
};
use crate::mutation::Mutation;
use crate::verify::{verify_all, SuiteReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub struct RunReport {
    pub payload: Value,
    /// Every failed check carries a witness; success means none failed.
    pub check_failures: Vec<String>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn success(&self) -> bool {
        self.check_failures.is_empty()
    }

    /// The canonical JSON document. Identical requests with identical seeds
    /// produce byte-identical output apart from the timing field.
    pub fn to_json(&self, request_echo: &str) -> Value {
        json!({
            "tool": "contrakit",
            "version": crate::VERSION,
            "request": request_echo,
            "result": self.payload,
            "failures": self.check_failures,
            "timing_ms_excluded_from_comparison": self.elapsed_ms,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        render_value(&self.payload, 0, &mut out);
        if !self.check_failures.is_empty() {
            out.push_str("\nFAILURES:\n");
            for f in &self.check_failures {
                out.push_str(&format!("  - {f}\n"));
            }
        }
        out
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", plain(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", plain(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", plain(v))),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn dispatch(request: &Request) -> RunReport {
    let start = std::time::Instant::now();
    let (payload, check_failures) = run(request);
    RunReport { payload, check_failures, elapsed_ms: start.elapsed().as_millis() }
}

fn run(request: &Request) -> (Value, Vec<String>) {
    match request {
        Request::Functor { which, module, s, gens } => match which {
            FunctorKind::Gamma => {
                let (sub, incl) = gamma_s(module, *s);
                (
                    json!({
                        "functor": "gamma",
                        "s": s.0,
                        "input": module.to_json(),
                        "output": format!("{sub}"),
                        "inclusion": incl.to_json(),
                    }),
                    Vec::new(),
                )
            }
            FunctorKind::Lambda => {
                let v = lambda_s(module, *s);
                (
                    json!({
                        "functor": "lambda",
                        "s": s.0,
                        "input": module.to_json(),
                        "output_atoms": v.to_string(),
                    }),
                    Vec::new(),
                )
            }
            FunctorKind::Delta => {
                let (v, adj) = delta_s(module, *s);
                (
                    json!({
                        "functor": "delta",
                        "s": s.0,
                        "input": module.to_json(),
                        "output_atoms": v.to_string(),
                        "lim1": adj.lim1,
                        "certificates": {
                            "adjunction_injective": adj.injective,
                            "adjunction_surjective": adj.surjective,
                            "components": serde_json::to_value(&adj.components).unwrap(),
                        },
                    }),
                    Vec::new(),
                )
            }
            FunctorKind::DeltaMulti => match delta_multi(module, gens) {
                Ok(v) => (
                    json!({
                        "functor": "delta-multi",
                        "gens": gens.iter().map(|g| g.0).collect::<Vec<_>>(),
                        "input": module.to_json(),
                        "output_atoms": v.to_string(),
                        "certificates": {"order_independent": true},
                    }),
                    Vec::new(),
                ),
                Err(e) => (json!({"functor": "delta-multi"}), vec![e.to_string()]),
            },
            FunctorKind::Cech => {
                let mut failures = Vec::new();
                let descriptor = match cech_complex(gens) {
                    Ok(d) => serde_json::to_value(&d).unwrap(),
                    Err(e) => {
                        failures.push(e.to_string());
                        Value::Null
                    }
                };
                let torsion = if module.generators() > 0 || !module.is_zero_module() {
                    match gamma_i(module, gens) {
                        Ok((g, _)) => json!(format!("{g}")),
                        Err(e) => {
                            failures.push(e.to_string());
                            Value::Null
                        }
                    }
                } else {
                    Value::Null
                };
                (
                    json!({
                        "functor": "cech",
                        "gens": gens.iter().map(|g| g.0).collect::<Vec<_>>(),
                        "complex": descriptor,
                        "ideal_torsion_of_module": torsion,
                    }),
                    failures,
                )
            }
        },
        Request::Check { module, s } => {
            let flags = check_properties(module, *s);
            let violations = flags.diagram_violations();
            let failures: Vec<String> =
                violations.iter().map(|v| format!("diagram violation: {v}")).collect();
            (
                json!({
                    "check": "properties",
                    "s": s.0,
                    "input": module.to_json(),
                    "flags": serde_json::to_value(&flags).unwrap(),
                }),
                failures,
            )
        }
        Request::Envelope { module } => {
            let (env, map, cok) = cotorsion_envelope(module);
            (
                json!({
                    "envelope": env.to_string(),
                    "input": module.to_json(),
                    "map": serde_json::to_value(&map).unwrap(),
                    "cokernel": serde_json::to_value(&cok).unwrap(),
                }),
                Vec::new(),
            )
        }
        Request::Cover { name, level } => {
            let seq = flat_cover_corpus(name, *level);
            let failures: Vec<String> = seq
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{}: {}", c.name, c.witness))
                .collect();
            (serde_json::to_value(&seq).unwrap(), failures)
        }
        Request::Dual { module } => match matlis_dual(module) {
            Ok(d) => (
                json!({
                    "dual": format!("{d}"),
                    "input": module.to_json(),
                    "involutive": d.decompose() == module.decompose(),
                }),
                Vec::new(),
            ),
            Err(e) => (json!({"dual": Value::Null}), vec![e.to_string()]),
        },
        Request::Classify { expr } => {
            let verdict = classify(expr);
            (
                json!({
                    "classify": expr.to_string(),
                    "verdict": serde_json::to_value(&verdict).unwrap(),
                }),
                Vec::new(),
            )
        }
        Request::Lab(params) => run_lab(params),
        Request::Verify { scale, seed } => {
            let suite = verify_all(*seed, *scale);
            let failures = suite_failures(&suite);
            (serde_json::to_value(&suite).unwrap(), failures)
        }
    }
}

fn suite_failures(suite: &SuiteReport) -> Vec<String> {
    suite
        .criteria
        .iter()
        .filter(|c| !c.pass)
        .map(|c| {
            format!(
                "criterion {} ({}): {}",
                c.index,
                c.name,
                c.witnesses.first().cloned().unwrap_or_default()
            )
        })
        .collect()
}

fn run_lab(params: &LabParams) -> (Value, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut failures = Vec::new();
    let payload = match params.scenario.as_str() {
        "axioms" => {
            let carrier = ZpScalar { p: params.p, precision: params.precision };
            let report = check_axioms(&carrier, params.trials, &mut rng);
            if !report.all_pass() {
                for c in report.checks.iter().filter(|c| !c.pass) {
                    failures.push(format!("{}: {}", c.name, c.witness));
                }
            }
            json!({
                "experiment": "axioms",
                "p": params.p,
                "precision": params.precision,
                "seed": params.seed,
                "checks": serde_json::to_value(&report.checks).unwrap(),
            })
        }
        "telescope" => {
            let carrier = ZpScalar { p: params.p, precision: params.precision };
            let mut all = Vec::new();
            for t in 0..params.trials.max(1) {
                let len = 1 + t % 6;
                let a: Vec<PadicApprox> = (0..len).map(|_| carrier.random(&mut rng)).collect();
                let (_, sol) = solve_telescope(&carrier, &a);
                if !sol.residuals_zero || !sol.homogeneous_unique {
                    failures.push(format!("trial {t}: {}", sol.witness));
                }
                all.push(sol);
            }
            json!({
                "experiment": "telescope",
                "p": params.p,
                "precision": params.precision,
                "seed": params.seed,
                "checks": [
                    {"name": "residuals", "pass": all.iter().all(|s| s.residuals_zero),
                     "witness": "exact at every index"},
                    {"name": "uniqueness", "pass": all.iter().all(|s| s.homogeneous_unique),
                     "witness": "nilpotency at truncation"},
                ],
            })
        }
        "two-var" => {
            let ctx = TowerContext { p: params.p, cutoff: params.cutoff.max(4) };
            let tower = TowerCarrier { ctx };
            let tower_report =
                two_var_report(&tower, params.trials.min(40), &mut rng, Mutation::None);
            let scalars = ScalarPair { p: params.p, precision: params.precision, t_factor: 2 };
            let scalar_report =
                two_var_report(&scalars, params.trials.min(40), &mut rng, Mutation::None);
            for r in [&tower_report, &scalar_report] {
                match r {
                    Ok(rep) if !rep.all_pass() => {
                        failures.push(format!("{}: {}", rep.carrier, rep.witness))
                    }
                    Err(e) => failures.push(e.to_string()),
                    _ => {}
                }
            }
            json!({
                "experiment": "two-var",
                "p": params.p,
                "seed": params.seed,
                "tower": tower_report.ok().map(|r| serde_json::to_value(&r).unwrap()),
                "scalars": scalar_report.ok().map(|r| serde_json::to_value(&r).unwrap()),
            })
        }
        "nakayama" => {
            let ctx = TowerContext { p: params.p, cutoff: params.cutoff.max(4) };
            let px = TowerElement::constant(ctx, params.p as i64).mul(&TowerElement::x(ctx));
            let mut deep = TowerElement::constant(ctx, 1);
            for _ in 0..(ctx.cutoff - 1) {
                deep = deep.mul(&TowerElement::x(ctx));
            }
            let cases = [
                ("zero", TowerElement::zero(ctx)),
                ("p·x", px),
                ("x^(K-1)", deep),
            ];
            let mut reports = Vec::new();
            for (label, d0) in cases {
                match nakayama_trace(ctx, &d0, params.depth as usize) {
                    Ok(r) => {
                        if !r.pass() {
                            failures.push(format!("{label}: identity or membership failed"));
                        }
                        reports.push(json!({
                            "element": label,
                            "report": serde_json::to_value(&r).unwrap(),
                        }));
                    }
                    Err(e) => failures.push(format!("{label}: {e}")),
                }
            }
            json!({
                "experiment": "nakayama",
                "p": params.p,
                "cutoff": ctx.cutoff,
                "seed": params.seed,
                "checks": reports,
            })
        }
        "ce-quotient" => {
            let report = counterexample_ce(params.p, params.precision, params.depth);
            if !report.all_pass() {
                for c in report.checks.iter().filter(|c| !c.pass) {
                    failures.push(format!("{}: {}", c.name, c.witness));
                }
            }
            serde_json::to_value(&report).unwrap()
        }
        "nested-completion" => {
            let ctx = TowerContext { p: params.p, cutoff: params.cutoff.max(3) };
            let k = ctx.cutoff as usize;
            let mut results = Vec::new();
            for t in 0..params.trials.clamp(1, 50) {
                let mut c = Vec::with_capacity(k);
                let mut cur = {
                    let coeffs: Vec<num_bigint::BigInt> =
                        (0..k).map(|_| num_bigint::BigInt::from(rng.gen::<u16>())).collect();
                    TowerElement::from_coeffs(ctx, &coeffs)
                };
                c.push(cur.clone());
                for n in 1..k {
                    let coeffs: Vec<num_bigint::BigInt> = (0..k)
                        .map(|b| {
                            let scale = num_bigint::BigInt::from(ctx.p)
                                .pow((n as u32).saturating_sub(b as u32));
                            num_bigint::BigInt::from(rng.gen::<u8>()) * scale
                        })
                        .collect();
                    cur = cur.add(&TowerElement::from_coeffs(ctx, &coeffs));
                    c.push(cur.clone());
                }
                match nested_completion(ctx, &c) {
                    Ok((_, cert)) => {
                        if !cert.congruences_verified || !cert.replay_matches {
                            failures.push(format!("trial {t}: certificate failed"));
                        }
                        results.push(json!({
                            "trial": t,
                            "congruences": cert.congruences_verified,
                            "replay": cert.replay_matches,
                        }));
                    }
                    Err(e) => failures.push(format!("trial {t}: {e}")),
                }
            }
            json!({
                "experiment": "nested-completion",
                "p": params.p,
                "cutoff": ctx.cutoff,
                "seed": params.seed,
                "checks": results,
            })
        }
        other => {
            failures.push(format!("unknown scenario {other}"));
            Value::Null
        }
    };
    (payload, failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::request::parse_request;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn delta_dispatch_documented_output() {
        let req = parse_request(&argv(
            r#"functor delta --s 6 --module {"invariants":{"rank":0,"torsion":[12]}}"#,
        ))
        .unwrap();
        let report = dispatch(&req);
        assert!(report.success());
        assert_eq!(report.payload["output_atoms"], "Z/4 + Z/3");
        assert_eq!(report.payload["lim1"], "0");
    }

    #[test]
    fn envelope_dispatch_documented_output() {
        let req =
            parse_request(&argv(r#"envelope --module {"presentation":[[0]]}"#)).unwrap();
        let report = dispatch(&req);
        assert!(report.success());
        assert_eq!(report.payload["envelope"], "Prod{all}[Zp^1]");
    }

    #[test]
    fn lab_ce_quotient_passes() {
        let req = parse_request(&argv("lab ce-quotient --p 2 --n 16 --m 12")).unwrap();
        let report = dispatch(&req);
        assert!(report.success(), "{:?}", report.check_failures);
    }

    #[test]
    fn json_output_is_deterministic() {
        let req = parse_request(&argv(
            r#"functor lambda --s 6 --module {"presentation":[[0]]}"#,
        ))
        .unwrap();
        let a = dispatch(&req);
        let b = dispatch(&req);
        let mut ja = a.to_json("x");
        let mut jb = b.to_json("x");
        ja["timing_ms_excluded_from_comparison"] = 0.into();
        jb["timing_ms_excluded_from_comparison"] = 0.into();
        assert_eq!(serde_json::to_string(&ja).unwrap(), serde_json::to_string(&jb).unwrap());
        assert_eq!(a.payload["output_atoms"], "Zp(2) + Zp(3)");
    }
}
