//! Shared exact integer arithmetic: factorization, prime predicates, and
//! invariant-factor normalization of cyclic decompositions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Prime factorization d = ∏ p^e as an ordered map. Requires d ≥ 1.
/// Trial division first; Pollard rho with a Miller–Rabin gate for anything
/// that survives past 10^6.
pub fn factorize(d: &BigInt) -> BTreeMap<u64, u32> {
    assert!(d >= &BigInt::one(), "factorize expects d >= 1, got {d}");
    let mut out = BTreeMap::new();
    let mut n = d.clone();
    let mut p = 2u64;
    while p <= 1_000_000 && BigInt::from(p).pow(2) <= n {
        while (&n % p).is_zero() {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n > BigInt::one() {
        factorize_large(&n, &mut out);
    }
    out
}

fn factorize_large(n: &BigInt, out: &mut BTreeMap<u64, u32>) {
    if let Some(small) = n.to_u64() {
        if small <= 1_000_000_000_000 {
            // No factor below 10^6 survived trial division, so a value this
            // small is prime.
            *out.entry(small).or_insert(0) += 1;
            return;
        }
    }
    let n64 = n
        .to_u64()
        .unwrap_or_else(|| panic!("factorization out of supported range: {n}"));
    if is_prime_u64(n64) {
        *out.entry(n64).or_insert(0) += 1;
        return;
    }
    let f = pollard_rho(n64);
    factorize_large(&BigInt::from(f), out);
    factorize_large(&BigInt::from(n64 / f), out);
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    // Deterministic witness set for u64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn pollard_rho(n: u64) -> u64 {
    assert!(n > 1 && !n.is_multiple_of(2));
    let mut c = 1u64;
    loop {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = mul_mod(x, x, n).wrapping_add(c) % n;
            y = mul_mod(y, y, n).wrapping_add(c) % n;
            y = mul_mod(y, y, n).wrapping_add(c) % n;
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Largest divisor of d supported on the primes dividing s (the "s-part");
/// the complementary factor is coprime to s. s must be nonzero here.
pub fn s_part(d: &BigInt, s: &BigInt) -> BigInt {
    assert!(!s.is_zero());
    assert!(d >= &BigInt::one());
    let mut part = BigInt::one();
    let mut rest = d.clone();
    loop {
        let g = rest.gcd(s);
        if g.is_one() {
            return part;
        }
        loop {
            let h = rest.gcd(&g);
            if h.is_one() {
                break;
            }
            rest /= &h;
            part *= &h;
        }
    }
}

/// v_p(d): exponent of p in d. d ≥ 1.
pub fn valuation(d: &BigInt, p: u64) -> u32 {
    let mut n = d.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Normalize a multiset of cyclic orders (each ≥ 2) into the ascending
/// divisibility chain d_1 | d_2 | … | d_k of the direct sum ⊕ Z/c_i.
pub fn invariant_factors_from_cyclics(cyclics: &[BigInt]) -> Vec<BigInt> {
    // Per prime, exponents sorted descending; the j-th invariant factor from
    // the top multiplies together the j-th largest exponent of every prime.
    let mut per_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for c in cyclics {
        for (p, e) in factorize(c) {
            per_prime.entry(p).or_default().push(e);
        }
    }
    let mut depth = 0;
    for exps in per_prime.values_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        depth = depth.max(exps.len());
    }
    let mut chain = Vec::new();
    for j in 0..depth {
        let mut d = BigInt::one();
        for (p, exps) in &per_prime {
            if let Some(e) = exps.get(j) {
                d *= BigInt::from(*p).pow(*e);
            }
        }
        chain.push(d);
    }
    chain.reverse();
    chain.retain(|d| !d.is_one());
    chain
}

/// Distinct primes dividing |s|, ascending. Empty for s ∈ {0, ±1}.
pub fn prime_support(s: i64) -> Vec<u64> {
    let a = s.unsigned_abs();
    if a <= 1 {
        return Vec::new();
    }
    factorize(&BigInt::from(a)).into_keys().collect()
}

/// Modular inverse of a mod m for gcd(a, m) = 1.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_roundtrip() {
        for n in [1u64, 2, 12, 360, 1_000_003, 999_999_937 * 2] {
            let f = factorize(&BigInt::from(n));
            let back: BigInt = f
                .iter()
                .map(|(p, e)| BigInt::from(*p).pow(*e))
                .product();
            assert_eq!(back, BigInt::from(n));
            for p in f.keys() {
                assert!(is_prime_u64(*p), "{p} not prime");
            }
        }
    }

    #[test]
    fn s_part_splits_coprimely() {
        let d = BigInt::from(360); // 2^3·3^2·5
        assert_eq!(s_part(&d, &BigInt::from(6)), BigInt::from(72));
        assert_eq!(s_part(&d, &BigInt::from(5)), BigInt::from(5));
        assert_eq!(s_part(&d, &BigInt::from(7)), BigInt::one());
        assert_eq!(s_part(&d, &BigInt::from(-2)), BigInt::from(8));
    }

    #[test]
    fn cyclic_normalization() {
        // Z/4 ⊕ Z/6 ≅ Z/2 ⊕ Z/12
        let chain = invariant_factors_from_cyclics(&[BigInt::from(4), BigInt::from(6)]);
        assert_eq!(chain, vec![BigInt::from(2), BigInt::from(12)]);
        // Z/2 ⊕ Z/2 stays put.
        let chain = invariant_factors_from_cyclics(&[BigInt::from(2), BigInt::from(2)]);
        assert_eq!(chain, vec![BigInt::from(2), BigInt::from(2)]);
        assert!(invariant_factors_from_cyclics(&[]).is_empty());
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(48), 2), 4);
        assert_eq!(valuation(&BigInt::from(48), 3), 1);
        assert_eq!(valuation(&BigInt::from(48), 5), 0);
    }
}
