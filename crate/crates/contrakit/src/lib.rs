//! contrakit: exact computational calculus of torsion, completion, and
//! contramodule structures on finitely presented abelian groups, a symbolic
//! atom calculus of standard cotorsion modules, and a truncated p-adic lab
//! for the counterexample sequence spaces.

pub mod arith;
pub mod atoms;
pub mod batch;
pub mod cli;
pub mod fpmod;
pub mod functors;
pub mod mutation;
pub mod padlab;
pub mod verify;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
