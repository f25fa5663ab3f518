//! Truncated p-adic integers: a residue mod p^N with tracked precision.

use super::PadError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct PadicApprox {
    p: u64,
    precision: u32,
    residue: BigInt,
}

impl PadicApprox {
    pub fn new(p: u64, precision: u32, value: impl Into<BigInt>) -> Self {
        assert!(precision >= 1, "precision must be at least 1");
        let modulus = BigInt::from(p).pow(precision);
        Self { p, precision, residue: value.into().mod_floor(&modulus) }
    }

    pub fn zero(p: u64, precision: u32) -> Self {
        Self::new(p, precision, 0)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.precision)
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn meet(&self, other: &Self) -> u32 {
        assert_eq!(self.p, other.p, "mixed primes");
        self.precision.min(other.precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.p, self.meet(other), &self.residue + &other.residue)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.p, self.meet(other), &self.residue - &other.residue)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.p, self.meet(other), &self.residue * &other.residue)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.precision, -&self.residue)
    }

    pub fn smul(&self, c: &BigInt) -> Self {
        Self::new(self.p, self.precision, &self.residue * c)
    }

    pub fn mul_p(&self) -> Self {
        Self::new(self.p, self.precision, &self.residue * self.p)
    }

    /// Division by p: requires divisibility and costs one digit of precision.
    pub fn div_p(&self) -> Result<Self, PadError> {
        if self.precision <= 1 {
            return Err(PadError::PrecisionExhausted);
        }
        let (q, r) = self.residue.div_mod_floor(&BigInt::from(self.p));
        if !r.is_zero() {
            return Err(PadError::NotDivisible);
        }
        Ok(Self::new(self.p, self.precision - 1, q))
    }

    pub fn reduce_to(&self, precision: u32) -> Self {
        assert!(precision <= self.precision && precision >= 1);
        Self::new(self.p, precision, self.residue.clone())
    }

    /// Equality at the common precision.
    pub fn congruent(&self, other: &Self) -> bool {
        let n = self.meet(other);
        self.reduce_to(n).residue == other.reduce_to(n).residue
    }

    /// p-adic valuation within the window: v with p^v | residue, capped at
    /// the precision for zero residues.
    pub fn valuation(&self) -> u32 {
        if self.residue.is_zero() {
            return self.precision;
        }
        crate::arith::valuation(&self.residue, self.p)
    }
}

impl fmt::Debug for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.p, self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_precision() {
        let a = PadicApprox::new(2, 8, 200);
        let b = PadicApprox::new(2, 6, 100);
        let s = a.add(&b);
        assert_eq!(s.precision(), 6);
        assert_eq!(s.residue(), &BigInt::from((200 + 100) % 64));
        let p = a.mul(&b).precision();
        assert_eq!(p, 6);
    }

    #[test]
    fn division_by_p() {
        let a = PadicApprox::new(3, 5, 18);
        let d = a.div_p().unwrap();
        assert_eq!(d.precision(), 4);
        assert_eq!(d.residue(), &BigInt::from(6));
        assert!(PadicApprox::new(3, 5, 7).div_p().is_err());
        assert!(matches!(
            PadicApprox::new(3, 1, 0).div_p(),
            Err(PadError::PrecisionExhausted)
        ));
    }

    #[test]
    fn geometric_series_value() {
        // (1 − 2)·Σ 2^n = 1 forces Σ 2^n·1 = −1 ≡ 255 mod 2^8.
        let mut acc = PadicApprox::zero(2, 8);
        let mut pw = PadicApprox::new(2, 8, 1);
        for _ in 0..8 {
            acc = acc.add(&pw);
            pw = pw.mul_p();
        }
        assert_eq!(acc.residue(), &BigInt::from(255));
    }

    #[test]
    fn precision_monotonicity() {
        let hi = PadicApprox::new(5, 10, 123_456);
        let lo = PadicApprox::new(5, 6, 123_456);
        assert!(hi.reduce_to(6).congruent(&lo));
    }
}
