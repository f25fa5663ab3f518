//! Exact arithmetic of finitely presented abelian groups: presentations,
//! Smith normal form, morphisms with kernels/cokernels, Hom/Ext/Tor, and a
//! brute-force enumeration oracle for finite instances.

pub mod enumerate;
pub mod homalg;
pub mod matrix;
pub mod module;
pub mod morphism;
pub mod smith;

pub use enumerate::Enumerated;
pub use homalg::{ext1, hom, tensor, tor1};
pub use matrix::IntMatrix;
pub use module::FPModule;
pub use morphism::{
    block_scalar_matrix, exact_at, same_submodule, submodule_from_rows, verify_short_exact,
    Morphism,
};
pub use smith::{smith, SmithForm};

use num_bigint::BigInt;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FpError {
    InfiniteModule,
    OrderBoundExceeded { bound: u64 },
    IllDefinedMorphism { relation: String },
    Shape { expected: (usize, usize), got: (usize, usize) },
    ComposeMismatch,
    BadInvariant(BigInt),
    Schema(String),
    NotPPrimary,
}

impl fmt::Display for FpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FpError::InfiniteModule => write!(f, "module is not finite"),
            FpError::OrderBoundExceeded { bound } => {
                write!(f, "module order exceeds the enumeration bound {bound}")
            }
            FpError::IllDefinedMorphism { relation } => {
                write!(f, "matrix does not respect the source relation ({relation})")
            }
            FpError::Shape { expected, got } => write!(
                f,
                "matrix shape {}x{} does not match generators {}x{}",
                got.0, got.1, expected.0, expected.1
            ),
            FpError::ComposeMismatch => write!(f, "composition target/source mismatch"),
            FpError::BadInvariant(d) => write!(f, "torsion invariant must be >= 2, got {d}"),
            FpError::Schema(msg) => write!(f, "schema error: {msg}"),
            FpError::NotPPrimary => write!(f, "module is not a finite p-group"),
        }
    }
}

impl std::error::Error for FpError {}
