//! Argument parsing for the contrakit CLI.

use crate::atoms::{parse_expr, AtomExpr, CorpusName};
use crate::fpmod::FPModule;
use crate::functors::RingElement;
use crate::verify::Scale;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct LabParams {
    pub scenario: String,
    pub p: u64,
    pub precision: u32,
    pub depth: u32,
    pub cutoff: u32,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug)]
pub enum Request {
    Functor { which: FunctorKind, module: FPModule, s: RingElement, gens: Vec<RingElement> },
    Check { module: FPModule, s: RingElement },
    Envelope { module: FPModule },
    Cover { name: CorpusName, level: u32 },
    Dual { module: FPModule },
    Classify { expr: AtomExpr },
    Lab(LabParams),
    Verify { scale: Scale, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctorKind {
    Gamma,
    Lambda,
    Delta,
    DeltaMulti,
    Cech,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

pub const USAGE: &str = "\
contrakit: exact torsion/completion/contramodule calculus

USAGE:
  contrakit functor {gamma|lambda|delta|delta-multi|cech} --module JSON [--s N] [--gens a,b,...] [--format text|json]
  contrakit check --module JSON --s N
  contrakit envelope --module JSON
  contrakit cover --name {cyclic(m)|prufer(p)|Q_mod_Z|Z_envelope} [--level N]
  contrakit dual --module JSON
  contrakit classify --expr 'ATOMS'
  contrakit lab {axioms|telescope|two-var|nakayama|ce-quotient|nested-completion} [--p P] [--n N] [--m M] [--k K] [--trials T] [--seed S]
  contrakit verify [--scale smoke|desk] [--seed S]

Module JSON: {\"presentation\": [[..]]} or {\"invariants\": {\"rank\": r, \"torsion\": [d1, ...]}}
Atom grammar: Z, Z/8, Q, Zp(2), Qp(3), Prufer(5), Zinv(6), Adele(r), Prod{2,3}[...], '+', '^n'
Environment: CONTRAKIT_MAX_ENUM overrides the enumeration bound (default 10^6).
";

struct Args {
    flags: std::collections::BTreeMap<String, String>,
}

fn collect(argv: &[String]) -> Result<Args, UsageError> {
    let mut flags = std::collections::BTreeMap::new();
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if let Some(name) = a.strip_prefix("--") {
            let value = it
                .next()
                .ok_or_else(|| UsageError(format!("flag --{name} needs a value")))?;
            flags.insert(name.to_string(), value.clone());
        } else {
            return Err(UsageError(format!("unexpected positional argument '{a}'")));
        }
    }
    Ok(Args { flags })
}

impl Args {
    fn module(&self) -> Result<FPModule, UsageError> {
        let raw = self
            .flags
            .get("module")
            .ok_or_else(|| UsageError("--module JSON is required".into()))?;
        let v: serde_json::Value = serde_json::from_str(raw)
            .map_err(|e| UsageError(format!("module JSON: {e}")))?;
        FPModule::from_json(&v).map_err(|e| UsageError(format!("module: {e}")))
    }

    fn s(&self) -> Result<RingElement, UsageError> {
        let raw = self
            .flags
            .get("s")
            .ok_or_else(|| UsageError("--s N is required".into()))?;
        raw.parse::<i64>()
            .map(RingElement)
            .map_err(|_| UsageError(format!("--s expects an integer, got {raw}")))
    }

    fn gens(&self) -> Result<Vec<RingElement>, UsageError> {
        let raw = self
            .flags
            .get("gens")
            .ok_or_else(|| UsageError("--gens a,b,... is required".into()))?;
        raw.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map(RingElement)
                    .map_err(|_| UsageError(format!("--gens entry '{t}' is not an integer")))
            })
            .collect()
    }

    fn u64_flag(&self, name: &str, default: u64) -> Result<u64, UsageError> {
        match self.flags.get(name) {
            None => Ok(default),
            Some(raw) => raw
                .parse()
                .map_err(|_| UsageError(format!("--{name} expects a number, got {raw}"))),
        }
    }
}

pub fn parse_format(argv: &[String]) -> Format {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--format" {
            if let Some(v) = it.next() {
                if v == "json" {
                    return Format::Json;
                }
            }
        }
    }
    Format::Text
}

pub fn parse_request(argv: &[String]) -> Result<Request, UsageError> {
    let Some(command) = argv.first() else {
        return Err(UsageError(USAGE.into()));
    };
    let rest = &argv[1..];
    match command.as_str() {
        "functor" => {
            let Some(kind_raw) = rest.first() else {
                return Err(UsageError("functor needs a kind: gamma|lambda|delta|delta-multi|cech".into()));
            };
            let which = match kind_raw.as_str() {
                "gamma" => FunctorKind::Gamma,
                "lambda" => FunctorKind::Lambda,
                "delta" => FunctorKind::Delta,
                "delta-multi" => FunctorKind::DeltaMulti,
                "cech" => FunctorKind::Cech,
                other => return Err(UsageError(format!("unknown functor '{other}'"))),
            };
            let args = collect(&rest[1..])?;
            let needs_gens = matches!(which, FunctorKind::DeltaMulti | FunctorKind::Cech);
            let gens = if needs_gens { args.gens()? } else { Vec::new() };
            let s = if needs_gens { RingElement(0) } else { args.s()? };
            let module = if which == FunctorKind::Cech {
                // The Čech descriptor is module-free.
                args.module().unwrap_or_else(|_| FPModule::zero_module())
            } else {
                args.module()?
            };
            Ok(Request::Functor { which, module, s, gens })
        }
        "check" => {
            let args = collect(rest)?;
            Ok(Request::Check { module: args.module()?, s: args.s()? })
        }
        "envelope" => {
            let args = collect(rest)?;
            Ok(Request::Envelope { module: args.module()? })
        }
        "cover" => {
            let args = collect(rest)?;
            let raw = args
                .flags
                .get("name")
                .ok_or_else(|| UsageError("--name is required".into()))?;
            let name = CorpusName::parse(raw).map_err(|e| UsageError(e.to_string()))?;
            let level = args.u64_flag("level", 12)? as u32;
            Ok(Request::Cover { name, level })
        }
        "dual" => {
            let args = collect(rest)?;
            Ok(Request::Dual { module: args.module()? })
        }
        "classify" => {
            let args = collect(rest)?;
            let raw = args
                .flags
                .get("expr")
                .ok_or_else(|| UsageError("--expr is required".into()))?;
            let expr = parse_expr(raw).map_err(|e| UsageError(e.to_string()))?;
            Ok(Request::Classify { expr })
        }
        "lab" => {
            let Some(scenario) = rest.first() else {
                return Err(UsageError(
                    "lab needs a scenario: axioms|telescope|two-var|nakayama|ce-quotient|nested-completion".into(),
                ));
            };
            let known = [
                "axioms",
                "telescope",
                "two-var",
                "nakayama",
                "ce-quotient",
                "nested-completion",
            ];
            if !known.contains(&scenario.as_str()) {
                return Err(UsageError(format!("unknown lab scenario '{scenario}'")));
            }
            let args = collect(&rest[1..])?;
            let p = args.u64_flag("p", 2)?;
            if !crate::arith::is_prime_u64(p) {
                return Err(UsageError(format!("--p must be prime, got {p}")));
            }
            Ok(Request::Lab(LabParams {
                scenario: scenario.clone(),
                p,
                precision: args.u64_flag("n", 16)? as u32,
                depth: args.u64_flag("m", 12)? as u32,
                cutoff: args.u64_flag("k", 12)? as u32,
                trials: args.u64_flag("trials", 100)? as usize,
                seed: args.u64_flag("seed", 0)?,
            }))
        }
        "verify" => {
            let args = collect(rest)?;
            let scale_raw = args.flags.get("scale").map(String::as_str).unwrap_or("desk");
            let scale = Scale::parse(scale_raw)
                .ok_or_else(|| UsageError(format!("--scale must be smoke or desk, got {scale_raw}")))?;
            Ok(Request::Verify { scale, seed: args.u64_flag("seed", 0)? })
        }
        "help" | "--help" | "-h" => Err(UsageError(USAGE.into())),
        other => Err(UsageError(format!("unknown command '{other}'\n\n{USAGE}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn documented_parses() {
        let r = parse_request(&argv(
            r#"functor delta --s 6 --module {"invariants":{"rank":0,"torsion":[12]}}"#,
        ))
        .unwrap();
        match r {
            Request::Functor { which, module, s, .. } => {
                assert_eq!(which, FunctorKind::Delta);
                assert_eq!(s, RingElement(6));
                assert_eq!(module.decompose().1, vec![num_bigint::BigInt::from(12)]);
            }
            other => panic!("unexpected {other:?}"),
        }

        let r = parse_request(&argv(r#"check --s 2 --module {"presentation":[[0]]}"#)).unwrap();
        match r {
            Request::Check { module, s } => {
                assert_eq!(s, RingElement(2));
                assert_eq!(module.decompose(), (1, vec![]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schema_errors_reject_bad_torsion() {
        let err = parse_request(&argv(
            r#"check --s 2 --module {"invariants":{"rank":0,"torsion":[0]}}"#,
        ))
        .unwrap_err();
        assert!(err.0.contains("torsion"), "{err}");
    }

    #[test]
    fn unknown_commands_are_usage_errors() {
        assert!(parse_request(&argv("frobnicate")).is_err());
        assert!(parse_request(&argv("lab bogus")).is_err());
        assert!(parse_request(&argv("verify --scale warp")).is_err());
    }
}
