//! s-power infinite summation operations evaluated at truncation.
//!
//! A carrier packages a group with an endomorphism s that is topologically
//! nilpotent at the working precision, so Σ s^n·a_n is a finite partial sum
//! whose value is stable once the horizon passes the nilpotency depth. The
//! three axioms (additivity, contraunitality, contraassociativity) are
//! checked exactly on random finitely supported arrays.

use super::padic::PadicApprox;
use super::tailseq::TailSeq;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub trait Carrier {
    type Elem: Clone + std::fmt::Debug;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn act_s(&self, a: &Self::Elem) -> Self::Elem;
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
    /// Depth beyond which s^n annihilates everything at the precision.
    fn horizon(&self) -> usize;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Σ s^n·terms[n] over the finitely supported array.
    fn sum_s_power(&self, terms: &[Self::Elem]) -> Self::Elem {
        // Horner from the top: acc ← s·acc + a_n.
        let mut acc = self.zero();
        for t in terms.iter().rev() {
            acc = self.add(&self.act_s(&acc), t);
        }
        acc
    }

    /// Σ s^n·gen(n) with the horizon chosen from the precision; terms at
    /// index ≥ horizon() are annihilated by s^n, so the partial sum is the
    /// full value.
    fn sum_s_power_gen(&self, gen: &dyn Fn(usize) -> Self::Elem) -> Self::Elem {
        let terms: Vec<Self::Elem> = (0..self.horizon()).map(gen).collect();
        self.sum_s_power(&terms)
    }
}

/// Z_p at fixed precision with s = p.
pub struct ZpScalar {
    pub p: u64,
    pub precision: u32,
}

impl Carrier for ZpScalar {
    type Elem = PadicApprox;

    fn name(&self) -> String {
        format!("Zp({}) at precision {}", self.p, self.precision)
    }
    fn zero(&self) -> PadicApprox {
        PadicApprox::zero(self.p, self.precision)
    }
    fn add(&self, a: &PadicApprox, b: &PadicApprox) -> PadicApprox {
        a.add(b)
    }
    fn neg(&self, a: &PadicApprox) -> PadicApprox {
        a.neg()
    }
    fn act_s(&self, a: &PadicApprox) -> PadicApprox {
        a.mul_p()
    }
    fn eq(&self, a: &PadicApprox, b: &PadicApprox) -> bool {
        a.congruent(b)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> PadicApprox {
        PadicApprox::new(self.p, self.precision, BigInt::from(rng.gen::<u64>()))
    }
    fn horizon(&self) -> usize {
        self.precision as usize
    }
}

/// Z/p^k with s = p acting nilpotently.
pub struct ZpModPk {
    pub p: u64,
    pub k: u32,
}

impl Carrier for ZpModPk {
    type Elem = PadicApprox;

    fn name(&self) -> String {
        format!("Z/{}^{}", self.p, self.k)
    }
    fn zero(&self) -> PadicApprox {
        PadicApprox::zero(self.p, self.k)
    }
    fn add(&self, a: &PadicApprox, b: &PadicApprox) -> PadicApprox {
        a.add(b)
    }
    fn neg(&self, a: &PadicApprox) -> PadicApprox {
        a.neg()
    }
    fn act_s(&self, a: &PadicApprox) -> PadicApprox {
        a.mul_p()
    }
    fn eq(&self, a: &PadicApprox, b: &PadicApprox) -> bool {
        a.congruent(b)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> PadicApprox {
        PadicApprox::new(self.p, self.k, BigInt::from(rng.gen::<u64>()))
    }
    fn horizon(&self) -> usize {
        self.k as usize
    }
}

/// A finite product of copies of Z_p, componentwise.
pub struct FiniteProductZp {
    pub p: u64,
    pub precision: u32,
    pub copies: usize,
}

impl Carrier for FiniteProductZp {
    type Elem = Vec<PadicApprox>;

    fn name(&self) -> String {
        format!("Zp({})^{}", self.p, self.copies)
    }
    fn zero(&self) -> Self::Elem {
        vec![PadicApprox::zero(self.p, self.precision); self.copies]
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(PadicApprox::neg).collect()
    }
    fn act_s(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(PadicApprox::mul_p).collect()
    }
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.iter().zip(b).all(|(x, y)| x.congruent(y))
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        (0..self.copies)
            .map(|_| PadicApprox::new(self.p, self.precision, BigInt::from(rng.gen::<u64>())))
            .collect()
    }
    fn horizon(&self) -> usize {
        self.precision as usize
    }
}

/// The group C of null sequences of p-adic integers, in tail form.
pub struct NullSeqC {
    pub p: u64,
    pub precision: u32,
}

impl Carrier for NullSeqC {
    type Elem = TailSeq;

    fn name(&self) -> String {
        format!("null sequences over Zp({})", self.p)
    }
    fn zero(&self) -> TailSeq {
        TailSeq::zero(self.p, self.precision)
    }
    fn add(&self, a: &TailSeq, b: &TailSeq) -> TailSeq {
        a.add(b)
    }
    fn neg(&self, a: &TailSeq) -> TailSeq {
        a.neg()
    }
    fn act_s(&self, a: &TailSeq) -> TailSeq {
        a.mul_p()
    }
    fn eq(&self, a: &TailSeq, b: &TailSeq) -> bool {
        a.sub(b).is_zero_at_precision()
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> TailSeq {
        let l = rng.gen_range(0..=4usize);
        let prefix = (0..l).map(|_| BigInt::from(rng.gen::<u32>())).collect();
        TailSeq::new(self.p, self.precision, prefix, BigInt::from(rng.gen::<u32>()))
            .expect("prefix within precision")
    }
    fn horizon(&self) -> usize {
        self.precision as usize
    }
}

/// The quotient C/E: arithmetic on representatives, equality through
/// E-membership of the difference.
pub struct QuotientCmodE {
    pub p: u64,
    pub precision: u32,
}

impl Carrier for QuotientCmodE {
    type Elem = TailSeq;

    fn name(&self) -> String {
        format!("C/E over Zp({})", self.p)
    }
    fn zero(&self) -> TailSeq {
        TailSeq::zero(self.p, self.precision)
    }
    fn add(&self, a: &TailSeq, b: &TailSeq) -> TailSeq {
        a.add(b)
    }
    fn neg(&self, a: &TailSeq) -> TailSeq {
        a.neg()
    }
    fn act_s(&self, a: &TailSeq) -> TailSeq {
        a.mul_p()
    }
    fn eq(&self, a: &TailSeq, b: &TailSeq) -> bool {
        a.sub(b)
            .membership(super::tailseq::Space::E)
            .map(|v| v.member)
            .unwrap_or(false)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> TailSeq {
        let l = rng.gen_range(0..=4usize);
        let prefix = (0..l).map(|_| BigInt::from(rng.gen::<u32>())).collect();
        TailSeq::new(self.p, self.precision, prefix, BigInt::from(rng.gen::<u32>()))
            .expect("prefix within precision")
    }
    fn horizon(&self) -> usize {
        self.precision as usize
    }
}

/// V[[z]] for V = Z/m, with s = z acting by shift; coefficients beyond the
/// window are dropped (z is nilpotent at the truncation).
pub struct PowerSeriesMod {
    pub modulus: u64,
    pub window: usize,
}

impl Carrier for PowerSeriesMod {
    type Elem = Vec<u64>;

    fn name(&self) -> String {
        format!("(Z/{})[[z]] window {}", self.modulus, self.window)
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.window]
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.modulus).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.modulus - x) % self.modulus).collect()
    }
    fn act_s(&self, a: &Vec<u64>) -> Vec<u64> {
        let mut out = vec![0; self.window];
        out[1..self.window].copy_from_slice(&a[..self.window - 1]);
        out
    }
    fn eq(&self, a: &Vec<u64>, b: &Vec<u64>) -> bool {
        a == b
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<u64> {
        (0..self.window).map(|_| rng.gen::<u64>() % self.modulus).collect()
    }
    fn horizon(&self) -> usize {
        self.window
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub carrier: String,
    pub trials: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Verify the three axioms on random finitely supported arrays (size ≤ 8,
/// arrays up to 8×8 for contraassociativity), exactly at truncation, plus
/// stability of the partial sums under a deeper horizon.
pub fn check_axioms<C: Carrier>(carrier: &C, trials: usize, rng: &mut ChaCha8Rng) -> AxiomReport {
    let mut additivity = true;
    let mut contraunitality = true;
    let mut contraassociativity = true;
    let mut stability = true;
    let mut induced_endo = true;
    let mut witness = String::new();

    for trial in 0..trials {
        let len = 1 + (trial % 8);
        let a: Vec<C::Elem> = (0..len).map(|_| carrier.random(rng)).collect();
        let b: Vec<C::Elem> = (0..len).map(|_| carrier.random(rng)).collect();

        // Additivity.
        let sum_ab: Vec<C::Elem> =
            a.iter().zip(&b).map(|(x, y)| carrier.add(x, y)).collect();
        let lhs = carrier.sum_s_power(&sum_ab);
        let rhs = carrier.add(&carrier.sum_s_power(&a), &carrier.sum_s_power(&b));
        if !carrier.eq(&lhs, &rhs) {
            additivity = false;
            witness = format!("additivity failed on trial {trial}");
        }

        // Contraunitality: one-hot arrays return their head element.
        let one_hot = vec![a[0].clone()];
        if !carrier.eq(&carrier.sum_s_power(&one_hot), &a[0]) {
            contraunitality = false;
            witness = format!("contraunitality failed on trial {trial}");
        }

        // Contraassociativity on a len×len array.
        let grid: Vec<Vec<C::Elem>> = (0..len)
            .map(|_| (0..len).map(|_| carrier.random(rng)).collect())
            .collect();
        let row_sums: Vec<C::Elem> =
            grid.iter().map(|row| carrier.sum_s_power(row)).collect();
        let nested = carrier.sum_s_power(&row_sums);
        let mut diag: Vec<C::Elem> = vec![carrier.zero(); 2 * len];
        for (i, row) in grid.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                diag[i + j] = carrier.add(&diag[i + j], v);
            }
        }
        let flat = carrier.sum_s_power(&diag);
        if !carrier.eq(&nested, &flat) {
            contraassociativity = false;
            witness = format!("contraassociativity failed on trial {trial}");
        }

        // Horizon stability: padding with zeros beyond the horizon must not
        // change the value.
        let mut padded = a.clone();
        padded.resize(a.len() + carrier.horizon() + 3, carrier.zero());
        if !carrier.eq(&carrier.sum_s_power(&padded), &carrier.sum_s_power(&a)) {
            stability = false;
            witness = format!("horizon stability failed on trial {trial}");
        }

        // The one-hot-at-1 sum is the endomorphism s itself.
        let hot1 = vec![carrier.zero(), a[0].clone()];
        if !carrier.eq(&carrier.sum_s_power(&hot1), &carrier.act_s(&a[0])) {
            induced_endo = false;
            witness = format!("induced endomorphism failed on trial {trial}");
        }
    }

    AxiomReport {
        carrier: carrier.name(),
        trials,
        checks: vec![
            AxiomCheck {
                name: "additivity".into(),
                pass: additivity,
                witness: if additivity { "exact on all trials".into() } else { witness.clone() },
            },
            AxiomCheck {
                name: "contraunitality".into(),
                pass: contraunitality,
                witness: if contraunitality {
                    "one-hot arrays return their head".into()
                } else {
                    witness.clone()
                },
            },
            AxiomCheck {
                name: "contraassociativity".into(),
                pass: contraassociativity,
                witness: if contraassociativity {
                    "nested and diagonal sums agree".into()
                } else {
                    witness.clone()
                },
            },
            AxiomCheck {
                name: "horizon stability".into(),
                pass: stability,
                witness: if stability { "padding is invisible".into() } else { witness.clone() },
            },
            AxiomCheck {
                name: "induced endomorphism".into(),
                pass: induced_endo,
                witness: if induced_endo {
                    "position-1 one-hot equals s".into()
                } else {
                    witness.clone()
                },
            },
        ],
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TelescopeSolution {
    pub residuals_zero: bool,
    pub homogeneous_unique: bool,
    pub witness: String,
}

/// Solve b_n − s·b_{n+1} = a_n by b_n = Σ_i s^i·a_{n+i} and verify the
/// residuals exactly; uniqueness holds because s^H kills everything at the
/// working precision (checked on the data), so homogeneous solutions vanish.
pub fn solve_telescope<C: Carrier>(carrier: &C, a: &[C::Elem]) -> (Vec<C::Elem>, TelescopeSolution) {
    let h = a.len() + carrier.horizon() + 2;
    let b: Vec<C::Elem> = (0..h)
        .map(|n| {
            let tail: Vec<C::Elem> = a.iter().skip(n).cloned().collect();
            carrier.sum_s_power(&tail)
        })
        .collect();
    let mut residuals_zero = true;
    for n in 0..h - 1 {
        let lhs = carrier.sub(&b[n], &carrier.act_s(&b[n + 1]));
        let rhs = a.get(n).cloned().unwrap_or_else(|| carrier.zero());
        if !carrier.eq(&lhs, &rhs) {
            residuals_zero = false;
        }
    }
    // Nilpotence at truncation: s^horizon kills the data, hence any
    // homogeneous solution b_n = s^k·b_{n+k} dies.
    let mut homogeneous_unique = true;
    for x in a {
        let mut y = x.clone();
        for _ in 0..carrier.horizon() {
            y = carrier.act_s(&y);
        }
        if !carrier.eq(&y, &carrier.zero()) {
            homogeneous_unique = false;
        }
    }
    let sol = TelescopeSolution {
        residuals_zero,
        homogeneous_unique,
        witness: format!(
            "residuals checked to index {}, nilpotency depth {}",
            h - 2,
            carrier.horizon()
        ),
    };
    (b, sol)
}
