//! Seeded single-site defects for mutation-sensitivity testing.
//!
//! The verification suite re-runs selected checks with one of these switched
//! on and demands a failure, guarding the corpus against vacuous tests.
//! Production code paths always pass `Mutation::None`.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// Write the −s coefficient of the telescope differential one index
    /// early (a flipped sign alone leaves every kernel unchanged, so the
    /// index defect is the single-site mutation that bites).
    TelescopeIndexShift,
    /// Shift the binomial index in the (s+t)-power summation formula.
    BinomialIndexShift,
    /// Off-by-one in the tail-coefficient depth of E-membership.
    TailMembershipOffByOne,
}
