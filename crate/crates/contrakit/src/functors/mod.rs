//! The torsion/completion/contramodule functor calculus on finitely
//! presented inputs: Γ_s, Λ_s, Δ_s, Γ_I, Δ_I, telescope and Čech complexes,
//! the derived-limit exact sequence, and the six property deciders.

pub mod delta;
pub mod gamma;
pub mod lim1;
pub mod properties;
pub mod solve;
pub mod telescope;

pub use delta::{delta_multi, delta_s, delta_s_expr, lambda_s, AdjunctionDescriptor};
pub use gamma::{cech_complex, gamma_i, gamma_s, gamma_s_three_routes, CechDescriptor};
pub use lim1::{lim1_sequence, Lim1Data};
pub use properties::{check_properties, FlagWitness, PropertyFlags};
pub use solve::{solve_system_fp, SystemSolution};
pub use telescope::TelescopeComplex;

use std::fmt;

/// The element s ∈ Z whose action drives every functor here. 0 and ±1 are
/// legal and handled by explicit degenerate cases; negative values act
/// through |s| (same localization).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElement(pub i64);

impl RingElement {
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_unit(self) -> bool {
        self.0 == 1 || self.0 == -1
    }

    pub fn abs(self) -> i64 {
        self.0.abs()
    }

    /// Distinct primes dividing s (empty for 0, ±1).
    pub fn primes(self) -> Vec<u64> {
        crate::arith::prime_support(self.0)
    }

    /// Stabilization exponent for the s-power torsion of m: the largest e
    /// with p^e dividing the top invariant factor over p | s. Telescope
    /// truncations at level e+1 capture the whole torsion.
    pub fn stabilization_exponent(self, m: &crate::fpmod::FPModule) -> u32 {
        let top = m.exponent();
        self.primes()
            .iter()
            .map(|&p| crate::arith::valuation(&top, p))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorError {
    EmptyGenerators,
    InfiniteModule,
    AtomRuleMissing(String),
}

impl fmt::Display for FunctorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorError::EmptyGenerators => write!(f, "generator list must be nonempty"),
            FunctorError::InfiniteModule => write!(f, "operation requires a finite module"),
            FunctorError::AtomRuleMissing(s) => write!(f, "no atom rule for {s}"),
        }
    }
}

impl std::error::Error for FunctorError {}
