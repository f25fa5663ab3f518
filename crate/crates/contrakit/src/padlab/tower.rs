//! The truncated quotient R/I^K for R = Z[x], I = (p, x): elements are
//! polynomials with coefficient of x^b stored mod p^{K−b}, and the nested
//! completion algorithm that reassembles a Cauchy sequence from staged
//! telescope solves in the two generators.

use super::PadError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerContext {
    pub p: u64,
    pub cutoff: u32,
}

/// A canonical representative mod I^K: coefficients c_0..c_{K−1} with
/// c_b reduced mod p^{K−b} (x^K and p^{K−b}·x^b both lie in I^K).
#[derive(Clone, PartialEq, Eq)]
pub struct TowerElement {
    ctx: TowerContext,
    coeffs: Vec<BigInt>,
}

impl TowerElement {
    pub fn zero(ctx: TowerContext) -> Self {
        Self { ctx, coeffs: vec![BigInt::zero(); ctx.cutoff as usize] }
    }

    pub fn from_coeffs(ctx: TowerContext, coeffs: &[BigInt]) -> Self {
        let mut out = Self::zero(ctx);
        for (b, c) in coeffs.iter().enumerate().take(ctx.cutoff as usize) {
            out.coeffs[b] = c.mod_floor(&ctx.coeff_modulus(b));
        }
        out
    }

    pub fn constant(ctx: TowerContext, c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(ctx, &[c.into()])
    }

    pub fn x(ctx: TowerContext) -> Self {
        Self::from_coeffs(ctx, &[BigInt::zero(), BigInt::from(1)])
    }

    pub fn ctx(&self) -> TowerContext {
        self.ctx
    }

    pub fn coeff(&self, b: usize) -> &BigInt {
        &self.coeffs[b]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx);
        let coeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .map(|(b, (a, c))| (a + c).mod_floor(&self.ctx.coeff_modulus(b)))
            .collect();
        Self { ctx: self.ctx, coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(b, a)| (-a).mod_floor(&self.ctx.coeff_modulus(b)))
            .collect();
        Self { ctx: self.ctx, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx);
        let k = self.ctx.cutoff as usize;
        let mut acc = vec![BigInt::zero(); k];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= k {
                    break;
                }
                acc[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.ctx, &acc)
    }

    /// Multiplication by p.
    pub fn mul_p(&self) -> Self {
        self.smul(&BigInt::from(self.ctx.p))
    }

    pub fn smul(&self, c: &BigInt) -> Self {
        let coeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(b, a)| (a * c).mod_floor(&self.ctx.coeff_modulus(b)))
            .collect();
        Self { ctx: self.ctx, coeffs }
    }

    /// Multiplication by x: shift the coefficients up one degree.
    pub fn mul_x(&self) -> Self {
        let k = self.ctx.cutoff as usize;
        let mut acc = vec![BigInt::zero(); k];
        acc[1..k].clone_from_slice(&self.coeffs[..k - 1]);
        Self::from_coeffs(self.ctx, &acc)
    }

    /// Membership in I^n: the coefficient of x^b must be divisible by
    /// p^{n−b} for every b < n (within the cutoff).
    pub fn in_ideal_power(&self, n: u32) -> bool {
        let k = self.ctx.cutoff;
        for b in 0..(n.min(k) as usize) {
            let need = n - b as u32;
            let avail = k - b as u32;
            let test = need.min(avail);
            if !(self.coeff(b) % BigInt::from(self.ctx.p).pow(test)).is_zero() {
                return false;
            }
        }
        true
    }

    /// The constant coefficient divided by p and the x-quotient: a = p·b' + x·b''
    /// with b' the constant c_0/p and b'' = (a − c_0)/x. Defined exactly when
    /// p | c_0, i.e. when a ∈ (p, x).
    pub fn split_coefficients(&self) -> Result<(Self, Self), PadError> {
        let c0 = &self.coeffs[0];
        let (q, r) = c0.div_mod_floor(&BigInt::from(self.ctx.p));
        if !r.is_zero() {
            return Err(PadError::SplittingFailed { depth: 0, element: format!("{self:?}") });
        }
        let b_prime = Self::constant(self.ctx, q);
        let k = self.ctx.cutoff as usize;
        let mut rest = vec![BigInt::zero(); k];
        rest[..k - 1].clone_from_slice(&self.coeffs[1..k]);
        let b_dblprime = Self::from_coeffs(self.ctx, &rest);
        Ok((b_prime, b_dblprime))
    }
}

impl TowerContext {
    fn coeff_modulus(&self, b: usize) -> BigInt {
        let k = self.cutoff as usize;
        assert!(b < k);
        BigInt::from(self.p).pow((k - b) as u32)
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| match b {
                0 => format!("{c}"),
                1 => format!("{c}·x"),
                _ => format!("{c}·x^{b}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletionCertificate {
    /// The chosen decomposition a_{n1,n2} of the consecutive differences.
    pub a_array: Vec<((u32, u32), String)>,
    /// b ≡ c_n mod I^n verified for every n.
    pub congruences_verified: bool,
    /// Replaying the staged construction reproduces b.
    pub replay_matches: bool,
}

/// The nested completion: given a Cauchy sequence c_1..c_K (c_{n+1} − c_n ∈
/// I^n), produce b with b ≡ c_n mod I^n for all n, through the staged
/// telescope solves: first in x for every p-degree, then in p.
pub fn nested_completion(
    ctx: TowerContext,
    c: &[TowerElement],
) -> Result<(TowerElement, CompletionCertificate), PadError> {
    let k = ctx.cutoff as usize;
    assert!(!c.is_empty() && c.len() >= k, "need K entries c_1..c_K");
    for (idx, pair) in c.windows(2).enumerate() {
        let n = idx + 1;
        if !pair[1].sub(&pair[0]).in_ideal_power(n as u32) {
            return Err(PadError::NotCauchy { index: n });
        }
    }

    // Choose a_{n1,n2} with c_{n+1} − c_n = Σ_{n1+n2=n} p^{n1} x^{n2} a_{n1,n2};
    // a_{0,0} = c_1. The decomposition reads the coefficients directly:
    // the x^b coefficient of a difference in I^n is divisible by p^{n−b}.
    let mut a = vec![vec![TowerElement::zero(ctx); k + 1]; k + 1];
    a[0][0] = c[0].clone();
    for n in 1..k {
        let diff = c[n].sub(&c[n - 1]);
        for b in 0..k {
            let coeff = diff.coeff(b).clone();
            if coeff.is_zero() {
                continue;
            }
            if b < n {
                // p^{n−b}·x^b · u with u = coeff / p^{n−b}.
                let power = BigInt::from(ctx.p).pow((n - b) as u32);
                let (q, r) = coeff.div_mod_floor(&power);
                debug_assert!(r.is_zero(), "Cauchy check guarantees divisibility");
                let term = TowerElement::constant(ctx, q);
                a[n - b][b] = a[n - b][b].add(&term);
            } else {
                // x^n · (coeff · x^{b−n}).
                let mut rest = vec![BigInt::zero(); b - n + 1];
                rest[b - n] = coeff;
                let term = TowerElement::from_coeffs(ctx, &rest);
                a[0][n] = a[0][n].add(&term);
            }
        }
    }

    // Stage 1 (the generator x): for every p-degree n1 solve
    // b1[n1][k'] − x·b1[n1][k'+1] = a[n1][k'] by the finite summation
    // b1[n1][k'] = Σ_i x^i·a[n1][k'+i].
    let sum_x = |terms: &[TowerElement]| -> TowerElement {
        let mut acc = TowerElement::zero(ctx);
        for t in terms.iter().rev() {
            acc = acc.mul_x().add(t);
        }
        acc
    };
    let sum_p = |terms: &[TowerElement]| -> TowerElement {
        let mut acc = TowerElement::zero(ctx);
        for t in terms.iter().rev() {
            acc = acc.mul_p().add(t);
        }
        acc
    };
    let mut b1 = vec![vec![TowerElement::zero(ctx); k + 2]; k + 1];
    for (n1, row) in b1.iter_mut().enumerate() {
        for (kk, slot) in row.iter_mut().enumerate().take(k + 1) {
            let tail: Vec<TowerElement> = (kk..=k).map(|i| a[n1][i].clone()).collect();
            *slot = sum_x(&tail);
        }
    }
    // Stage 2 (the generator p): solve b2[k'] − p·b2[k'+1] = b1[k'][0].
    let mut b2 = vec![TowerElement::zero(ctx); k + 2];
    for (kk, slot) in b2.iter_mut().enumerate().take(k + 1) {
        let tail: Vec<TowerElement> = (kk..=k).map(|i| b1[i][0].clone()).collect();
        *slot = sum_p(&tail);
    }
    let b = b2[0].clone();

    // Certificate: verify the congruences and replay the construction.
    let mut congruences_verified = true;
    for n in 1..=k {
        if !b.sub(&c[n - 1]).in_ideal_power(n as u32) {
            congruences_verified = false;
        }
    }
    // Replay: the double sum Σ p^{n1} x^{n2} a_{n1,n2} must equal b.
    let mut replay = TowerElement::zero(ctx);
    for (n1, row) in a.iter().enumerate() {
        for (n2, val) in row.iter().enumerate() {
            let mut term = val.clone();
            for _ in 0..n1 {
                term = term.mul_p();
            }
            for _ in 0..n2 {
                term = term.mul_x();
            }
            replay = replay.add(&term);
        }
    }
    let replay_matches = replay == b;

    let a_array = a
        .iter()
        .enumerate()
        .flat_map(|(n1, row)| {
            row.iter().enumerate().filter_map(move |(n2, v)| {
                if v.is_zero() {
                    None
                } else {
                    Some(((n1 as u32, n2 as u32), format!("{v:?}")))
                }
            })
        })
        .collect();

    Ok((b, CompletionCertificate { a_array, congruences_verified, replay_matches }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CTX: TowerContext = TowerContext { p: 2, cutoff: 8 };

    #[test]
    fn arithmetic_and_ideal_membership() {
        let x = TowerElement::x(CTX);
        let p = TowerElement::constant(CTX, 2);
        let px = p.mul(&x);
        assert!(px.in_ideal_power(2));
        assert!(!px.in_ideal_power(3));
        assert!(x.mul(&x).in_ideal_power(2));
        assert!(TowerElement::constant(CTX, 4).in_ideal_power(2));
        assert!(!TowerElement::constant(CTX, 4).in_ideal_power(3));
        // x^K = 0 at the cutoff.
        let mut xk = x.clone();
        for _ in 0..CTX.cutoff {
            xk = xk.mul_x();
        }
        assert!(xk.is_zero());
    }

    #[test]
    fn splitting_by_coefficient_extraction() {
        let a = TowerElement::from_coeffs(
            CTX,
            &[BigInt::from(6), BigInt::from(5), BigInt::from(3)],
        );
        let (bp, bx) = a.split_coefficients().unwrap();
        let back = bp.mul_p().add(&bx.mul_x());
        assert_eq!(back, a);
        // Constant term odd: not in (p, x).
        assert!(TowerElement::constant(CTX, 3).split_coefficients().is_err());
    }

    #[test]
    fn constant_sequence_completes_to_itself() {
        let c0 = TowerElement::from_coeffs(CTX, &[BigInt::from(5), BigInt::from(3)]);
        let c: Vec<TowerElement> = (0..CTX.cutoff).map(|_| c0.clone()).collect();
        let (b, cert) = nested_completion(CTX, &c).unwrap();
        assert_eq!(b, c0);
        assert!(cert.congruences_verified);
        assert!(cert.replay_matches);
    }

    #[test]
    fn partial_sums_of_a_power_series_complete() {
        // c_n = Σ_{k : 2k < n} (px)^k: partial sums of the geometric-type
        // series in px, Cauchy since (px)^k ∈ I^{2k}.
        let px = TowerElement::constant(CTX, 2).mul(&TowerElement::x(CTX));
        let c: Vec<TowerElement> = (1..=CTX.cutoff)
            .map(|n| {
                let mut acc = TowerElement::zero(CTX);
                let mut term = TowerElement::constant(CTX, 1);
                let mut k = 0;
                while 2 * k < n {
                    acc = acc.add(&term);
                    term = term.mul(&px);
                    k += 1;
                }
                acc
            })
            .collect();
        let (b, cert) = nested_completion(CTX, &c).unwrap();
        assert!(cert.congruences_verified && cert.replay_matches);
        // Independent route: the full truncated sum Σ (px)^k directly.
        let mut expect = TowerElement::zero(CTX);
        let mut term = TowerElement::constant(CTX, 1);
        for _ in 0..CTX.cutoff {
            expect = expect.add(&term);
            term = term.mul(&px);
        }
        assert_eq!(b, expect);
    }

    #[test]
    fn non_cauchy_rejected() {
        let mut c: Vec<TowerElement> =
            (0..CTX.cutoff).map(|_| TowerElement::zero(CTX)).collect();
        c[3] = TowerElement::x(CTX); // jump of x at depth 3 is not in I^3
        assert!(matches!(
            nested_completion(CTX, &c),
            Err(PadError::NotCauchy { .. })
        ));
    }
}
