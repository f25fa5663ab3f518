//! Symbolic calculus of standard atoms (Z, Z/p^k, Q, Z_p, Q_p, Q_p/Z_p,
//! Z[1/s], adele blocks): rule tables for Hom/Δ/Γ, structural flags, Matlis
//! duality of finite p-groups, cotorsion envelopes, the flat-cover corpus,
//! and classification normal forms.

pub mod atom;
pub mod classify;
pub mod covers;
pub mod envelope;
pub mod flags;
pub mod matlis;
pub mod rules;

pub use atom::{parse_expr, print_expr, Atom, AtomError, AtomExpr};
pub use classify::{
    build_flat_cotorsion, build_injective, build_reduced_cotorsion, classify, ClassifyVerdict,
    FlatCotorsionForm, InjectiveForm, ReducedCotorsionForm,
};
pub use covers::{flat_cover_corpus, CorpusName, VerifiedSequence};
pub use envelope::{cotorsion_envelope, envelope_kernel_is_zero};
pub use flags::{flags_atoms, free_padic_contramodule_rank, ExprFlags};
pub use matlis::{double_dual_evaluation_bijective, dual_morphism, matlis_dual};
pub use rules::{delta_p_atom, delta_p_expr, gamma_p_atom, hom_atoms, hom_pair, RuleResult};
