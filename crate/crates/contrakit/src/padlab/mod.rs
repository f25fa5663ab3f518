//! Truncated p-adic arithmetic, the counterexample sequence spaces E ⊂ D ⊂ C,
//! infinite summation operations and their axioms, the two-variable calculus,
//! the constructive Nakayama trace, and the nested completion algorithm for
//! the ideal (p, x) ⊂ Z[x].

pub mod counterexample;
pub mod padic;
pub mod summation;
pub mod tailseq;
pub mod tower;
pub mod twovar;

pub use counterexample::{counterexample_ce, CeReport};
pub use padic::PadicApprox;
pub use summation::{
    check_axioms, solve_telescope, AxiomReport, Carrier, FiniteProductZp, NullSeqC,
    PowerSeriesMod, QuotientCmodE, ZpModPk, ZpScalar,
};
pub use tailseq::{membership_bruteforce, sum_family_tail_aware, MembershipVerdict, Space, TailSeq};
pub use tower::{nested_completion, CompletionCertificate, TowerContext, TowerElement};
pub use twovar::{nakayama_trace, two_var_report, NakayamaReport, TwoVarCarrier, TwoVarReport};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PadError {
    PrecisionExhausted,
    NotDivisible,
    PrecisionTooLow { needed: u32, have: u32 },
    NotCauchy { index: usize },
    NonCommuting,
    SplittingFailed { depth: usize, element: String },
}

impl fmt::Display for PadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadError::PrecisionExhausted => write!(f, "precision exhausted"),
            PadError::NotDivisible => write!(f, "element not divisible by p"),
            PadError::PrecisionTooLow { needed, have } => {
                write!(f, "precision too low: need {needed}, have {have}")
            }
            PadError::NotCauchy { index } => {
                write!(f, "sequence is not Cauchy at index {index}")
            }
            PadError::NonCommuting => write!(f, "the two endomorphisms do not commute"),
            PadError::SplittingFailed { depth, element } => {
                write!(f, "splitting failed at depth {depth} on {element}")
            }
        }
    }
}

impl std::error::Error for PadError {}
