//! Two-variable summation calculus: [s,t]-power sums, the commutation of the
//! two evaluation orders, the (s+t) binomial and (rs) substitution formulas,
//! and the constructive Nakayama trace.

use super::summation::Carrier;
use super::tower::{TowerContext, TowerElement};
use super::PadError;
use crate::mutation::Mutation;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A carrier with a second commuting endomorphism t.
pub trait TwoVarCarrier: Carrier {
    fn act_t(&self, a: &Self::Elem) -> Self::Elem;

    fn commuting(&self, samples: &[Self::Elem]) -> bool {
        samples
            .iter()
            .all(|x| self.eq(&self.act_s(&self.act_t(x)), &self.act_t(&self.act_s(x))))
    }

    /// Σ t^n·terms[n].
    fn sum_t_power(&self, terms: &[Self::Elem]) -> Self::Elem {
        let mut acc = self.zero();
        for t in terms.iter().rev() {
            acc = self.add(&self.act_t(&acc), t);
        }
        acc
    }

    /// Σ s^m t^n a_{m,n} evaluated rows-then-columns.
    fn sum_st(&self, grid: &[Vec<Self::Elem>]) -> Self::Elem {
        let rows: Vec<Self::Elem> = grid.iter().map(|row| self.sum_t_power(row)).collect();
        self.sum_s_power(&rows)
    }

    /// Σ s^m t^n a_{m,n} evaluated columns-then-rows.
    fn sum_ts(&self, grid: &[Vec<Self::Elem>]) -> Self::Elem {
        let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
        let col_sums: Vec<Self::Elem> = (0..cols)
            .map(|j| {
                let col: Vec<Self::Elem> = grid
                    .iter()
                    .map(|row| row.get(j).cloned().unwrap_or_else(|| self.zero()))
                    .collect();
                self.sum_s_power(&col)
            })
            .collect();
        self.sum_t_power(&col_sums)
    }
}

/// Z[x]/(p, x)^K with s = p and t = x.
pub struct TowerCarrier {
    pub ctx: TowerContext,
}

impl Carrier for TowerCarrier {
    type Elem = TowerElement;

    fn name(&self) -> String {
        format!("Z[x]/(p, x)^{} with p = {}", self.ctx.cutoff, self.ctx.p)
    }
    fn zero(&self) -> TowerElement {
        TowerElement::zero(self.ctx)
    }
    fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        a.add(b)
    }
    fn neg(&self, a: &TowerElement) -> TowerElement {
        a.neg()
    }
    fn act_s(&self, a: &TowerElement) -> TowerElement {
        a.mul_p()
    }
    fn eq(&self, a: &TowerElement, b: &TowerElement) -> bool {
        a == b
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> TowerElement {
        let k = self.ctx.cutoff as usize;
        let coeffs: Vec<BigInt> = (0..k).map(|_| BigInt::from(rng.gen::<u32>())).collect();
        TowerElement::from_coeffs(self.ctx, &coeffs)
    }
    fn horizon(&self) -> usize {
        self.ctx.cutoff as usize
    }
}

impl TwoVarCarrier for TowerCarrier {
    fn act_t(&self, a: &TowerElement) -> TowerElement {
        a.mul_x()
    }
}

/// Z_p at precision N with s = p and t = c·p for a constant c (a commuting
/// pair where both operators are topologically nilpotent).
pub struct ScalarPair {
    pub p: u64,
    pub precision: u32,
    pub t_factor: i64,
}

impl Carrier for ScalarPair {
    type Elem = super::padic::PadicApprox;

    fn name(&self) -> String {
        format!("Zp({}) with t = {}·p", self.p, self.t_factor)
    }
    fn zero(&self) -> Self::Elem {
        super::padic::PadicApprox::zero(self.p, self.precision)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn act_s(&self, a: &Self::Elem) -> Self::Elem {
        a.mul_p()
    }
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.congruent(b)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        super::padic::PadicApprox::new(self.p, self.precision, BigInt::from(rng.gen::<u64>()))
    }
    fn horizon(&self) -> usize {
        self.precision as usize
    }
}

impl TwoVarCarrier for ScalarPair {
    fn act_t(&self, a: &Self::Elem) -> Self::Elem {
        a.mul_p().smul(&BigInt::from(self.t_factor))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoVarReport {
    pub carrier: String,
    pub trials: usize,
    pub commutation_exact: bool,
    pub order_swap_exact: bool,
    pub binomial_exact: bool,
    pub substitution_exact: bool,
    pub contraunitality_exact: bool,
    pub witness: String,
}

impl TwoVarReport {
    pub fn all_pass(&self) -> bool {
        self.commutation_exact
            && self.order_swap_exact
            && self.binomial_exact
            && self.substitution_exact
            && self.contraunitality_exact
    }
}

/// Exercise the two-variable identities on random grids:
/// both evaluation orders agree; the (s+t)-sum via the binomial formula
/// equals direct partial sums of (s+t)^n; the (rs)-sum via substitution
/// equals direct partial sums of (rs)^n with r ranging over small constants.
pub fn two_var_report<C: TwoVarCarrier>(
    carrier: &C,
    trials: usize,
    rng: &mut ChaCha8Rng,
    mutation: Mutation,
) -> Result<TwoVarReport, PadError> {
    let samples: Vec<C::Elem> = (0..8).map(|_| carrier.random(rng)).collect();
    if !carrier.commuting(&samples) {
        return Err(PadError::NonCommuting);
    }
    let mut order_swap_exact = true;
    let mut binomial_exact = true;
    let mut substitution_exact = true;
    let mut contraunitality_exact = true;
    let mut witness = String::new();

    for trial in 0..trials {
        let rows = 1 + trial % 6;
        let cols = 1 + (trial / 2) % 6;
        let grid: Vec<Vec<C::Elem>> = (0..rows)
            .map(|_| (0..cols).map(|_| carrier.random(rng)).collect())
            .collect();

        if !carrier.eq(&carrier.sum_st(&grid), &carrier.sum_ts(&grid)) {
            order_swap_exact = false;
            witness = format!("order swap failed on trial {trial}");
        }

        // One-hot contraunitality.
        let mut hot = vec![vec![carrier.zero()]];
        hot[0][0] = grid[0][0].clone();
        if !carrier.eq(&carrier.sum_st(&hot), &grid[0][0]) {
            contraunitality_exact = false;
            witness = format!("two-variable contraunitality failed on trial {trial}");
        }

        // (s+t)-sum: Σ_{i,j} s^i t^j binom(i+j, i)·a_{i+j} versus direct
        // partial sums of (s+t)^n·a_n.
        let data: Vec<C::Elem> = (0..rows).map(|_| carrier.random(rng)).collect();
        let depth = carrier.horizon() * 2 + data.len();
        let binom_grid: Vec<Vec<C::Elem>> = (0..depth)
            .map(|i| {
                (0..depth)
                    .map(|j| {
                        let n = i + j;
                        if n >= data.len() {
                            return carrier.zero();
                        }
                        let pick = if mutation == Mutation::BinomialIndexShift {
                            i + 1
                        } else {
                            i
                        };
                        let c = binomial(n, pick.min(n));
                        scaled(carrier, &data[n], &c)
                    })
                    .collect()
            })
            .collect();
        let via_binomial = carrier.sum_st(&binom_grid);
        let direct = {
            // Horner in u = s + t: acc ← (s+t)·acc + a_n.
            let mut acc = carrier.zero();
            for a in data.iter().rev() {
                let sacc = carrier.act_s(&acc);
                let tacc = carrier.act_t(&acc);
                acc = carrier.add(&carrier.add(&sacc, &tacc), a);
            }
            acc
        };
        if !carrier.eq(&via_binomial, &direct) {
            binomial_exact = false;
            witness = format!("binomial (s+t) formula failed on trial {trial}");
        }

        // (rs)-sum: Σ (rs)^n a_n = Σ s^n (r^n a_n) for r a small integer.
        let r = 1 + (trial as i64 % 3);
        let subst: Vec<C::Elem> = data
            .iter()
            .enumerate()
            .map(|(n, a)| {
                let rn = BigInt::from(r).pow(n as u32);
                scaled(carrier, a, &rn)
            })
            .collect();
        let via_subst = carrier.sum_s_power(&subst);
        let direct_rs = {
            let mut acc = carrier.zero();
            for a in data.iter().rev() {
                let sacc = carrier.act_s(&acc);
                acc = carrier.add(&scaled(carrier, &sacc, &BigInt::from(r)), a);
            }
            acc
        };
        if !carrier.eq(&via_subst, &direct_rs) {
            substitution_exact = false;
            witness = format!("(rs) substitution failed on trial {trial}");
        }
    }

    Ok(TwoVarReport {
        carrier: carrier.name(),
        trials,
        commutation_exact: true,
        order_swap_exact,
        binomial_exact,
        substitution_exact,
        contraunitality_exact,
        witness: if witness.is_empty() { "all identities exact".into() } else { witness },
    })
}

/// Integer scaling through repeated addition on the abstract carrier
/// (binary expansion keeps it logarithmic).
fn scaled<C: Carrier>(carrier: &C, a: &C::Elem, c: &BigInt) -> C::Elem {
    let mut acc = carrier.zero();
    let mut base = a.clone();
    let mut k = c.clone();
    let negative = k < BigInt::zero();
    if negative {
        k = -k;
    }
    while k > BigInt::zero() {
        if (&k % 2u8) == BigInt::from(1) {
            acc = carrier.add(&acc, &base);
        }
        base = carrier.add(&base, &base);
        k /= 2u8;
    }
    if negative {
        carrier.neg(&acc)
    } else {
        acc
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut num = BigInt::from(1);
    for i in 0..k {
        num = num * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    num
}

#[derive(Debug, Clone, Serialize)]
pub struct NakayamaReport {
    pub requested_depth: usize,
    pub achieved_depth: usize,
    pub telescoping_identity_exact: bool,
    /// a_0 ∈ I^achieved certified by direct ideal-membership.
    pub membership_certified: bool,
    pub failure: Option<String>,
}

impl NakayamaReport {
    pub fn pass(&self) -> bool {
        self.telescoping_identity_exact && self.membership_certified
    }
}

/// Replay the double-array construction of the two-variable Nakayama
/// argument on the tower: split a = p·b' + x·b'' by coefficient extraction,
/// build the triangle a_{ij} to the requested depth, verify the telescoping
/// identity Σ s^i t^j a_{ij} = Σ_{i+j>0} s^i t^j a_{ij} exactly at the
/// cutoff, and certify a_0 ∈ I^d for the achieved depth d.
///
/// The trace stops early (with the partial certificate) when an element
/// outside (p, x) shows up: only elements of I^K split all the way to depth
/// K, which is precisely the Nakayama statement.
pub fn nakayama_trace(
    ctx: TowerContext,
    d0: &TowerElement,
    depth: usize,
) -> Result<NakayamaReport, PadError> {
    if d0.is_zero() {
        return Ok(NakayamaReport {
            requested_depth: depth,
            achieved_depth: depth,
            telescoping_identity_exact: true,
            membership_certified: true,
            failure: None,
        });
    }
    let k = depth;
    // a[i][j] for i+j ≤ achieved layer.
    let mut a = vec![vec![TowerElement::zero(ctx); k + 2]; k + 2];
    a[0][0] = d0.clone();
    let mut achieved = 0usize;
    let mut failure = None;

    'layers: for n in 0..k {
        // Split every a_{ij} with i+j = n.
        let mut bp = vec![TowerElement::zero(ctx); n + 1];
        let mut bx = vec![TowerElement::zero(ctx); n + 1];
        for i in 0..=n {
            let j = n - i;
            match a[i][j].split_coefficients() {
                Ok((p_part, x_part)) => {
                    bp[i] = p_part;
                    bx[i] = x_part;
                }
                Err(_) => {
                    failure = Some(format!(
                        "a_({i},{j}) = {:?} lies outside (p, x) at layer {n}",
                        a[i][j]
                    ));
                    break 'layers;
                }
            }
        }
        // a_{i,j} for i+j = n+1: b'_{i−1,j} + b''_{i,j−1}.
        for i in 0..=n + 1 {
            let j = n + 1 - i;
            let mut v = TowerElement::zero(ctx);
            if i >= 1 {
                v = v.add(&bp[i - 1]);
            }
            if j >= 1 && i <= n {
                v = v.add(&bx[i]);
            }
            a[i][j] = v;
        }
        achieved = n + 1;
    }

    // Telescoping identity: splitting and reindexing keeps every layer sum
    // Σ_{i+j=n} s^i t^j a_{ij} equal to a_0 = d0 exactly, which exhibits d0
    // inside I^n for each completed layer.
    let mut telescoping_identity_exact = true;
    for n in 0..=achieved {
        if layer_sum(ctx, &a, n) != *d0 {
            telescoping_identity_exact = false;
        }
    }
    // Independent certificate through coefficientwise divisibility.
    let membership_certified = d0.in_ideal_power(achieved as u32);

    Ok(NakayamaReport {
        requested_depth: depth,
        achieved_depth: achieved,
        telescoping_identity_exact,
        membership_certified,
        failure,
    })
}

fn layer_sum(ctx: TowerContext, a: &[Vec<TowerElement>], n: usize) -> TowerElement {
    let mut acc = TowerElement::zero(ctx);
    #[allow(clippy::needless_range_loop)] // the pair (i, n−i) walks an antidiagonal
    for i in 0..=n {
        let j = n - i;
        let mut term = a[i][j].clone();
        for _ in 0..i {
            term = term.mul_p();
        }
        for _ in 0..j {
            term = term.mul_x();
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    const CTX: TowerContext = TowerContext { p: 2, cutoff: 10 };

    #[test]
    fn two_var_identities_on_the_tower() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = TowerCarrier { ctx: TowerContext { p: 2, cutoff: 8 } };
        let report = two_var_report(&c, 20, &mut rng, Mutation::None).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn two_var_identities_on_scalars() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let c = ScalarPair { p: 3, precision: 12, t_factor: 2 };
        let report = two_var_report(&c, 20, &mut rng, Mutation::None).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn binomial_mutation_is_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let c = TowerCarrier { ctx: TowerContext { p: 2, cutoff: 8 } };
        let report = two_var_report(&c, 20, &mut rng, Mutation::BinomialIndexShift).unwrap();
        assert!(!report.binomial_exact);
    }

    #[test]
    fn nakayama_zero_and_deep_elements() {
        let zero = TowerElement::zero(CTX);
        let r = nakayama_trace(CTX, &zero, 8).unwrap();
        assert!(r.pass() && r.achieved_depth == 8);

        // d0 = p·x ∈ I²: the trace certifies exactly I-depth 2 before
        // coefficient extraction escapes the ideal.
        let px = TowerElement::constant(CTX, 2).mul(&TowerElement::x(CTX));
        let r = nakayama_trace(CTX, &px, 6).unwrap();
        assert!(r.pass(), "{r:?}");
        assert!(r.achieved_depth >= 2);
        assert!(px.in_ideal_power(r.achieved_depth as u32));

        // d0 deep in the ideal: the full depth is reachable.
        let mut deep = TowerElement::constant(CTX, 1);
        for _ in 0..6 {
            deep = deep.mul(&TowerElement::x(CTX));
        }
        let r = nakayama_trace(CTX, &deep, 6).unwrap();
        assert_eq!(r.achieved_depth, 6);
        assert!(r.pass());
    }

    #[test]
    fn nakayama_rejects_non_ideal_start() {
        let one = TowerElement::constant(CTX, 1);
        let r = nakayama_trace(CTX, &one, 4).unwrap();
        assert_eq!(r.achieved_depth, 0);
        assert!(r.failure.is_some());
        // a_0 ∈ I^0 trivially, identity trivially exact.
        assert!(r.membership_certified);
    }
}
