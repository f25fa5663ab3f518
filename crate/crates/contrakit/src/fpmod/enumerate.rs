//! Brute-force enumeration oracle for finite modules.
//!
//! Everything here works on the canonical invariants with elements as tuples
//! (x_1, …, x_k), x_i ∈ Z/d_i, and deliberately avoids the Smith machinery
//! so it can stand as ground truth against it.

use super::module::FPModule;
use super::FpError;
use num_traits::ToPrimitive;

pub const DEFAULT_ENUM_BOUND: u64 = 1_000_000;

/// Enumeration bound: CONTRAKIT_MAX_ENUM overrides the default 10^6.
pub fn enum_bound() -> u64 {
    std::env::var("CONTRAKIT_MAX_ENUM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUM_BOUND)
}

/// A fully enumerated finite abelian group ⊕ Z/d_i.
pub struct Enumerated {
    pub factors: Vec<u64>,
    pub order: u64,
}

pub type Tuple = Vec<u64>;

impl Enumerated {
    pub fn from_module(m: &FPModule) -> Result<Self, FpError> {
        Self::from_module_bounded(m, enum_bound())
    }

    pub fn from_module_bounded(m: &FPModule, bound: u64) -> Result<Self, FpError> {
        if !m.is_finite() {
            return Err(FpError::InfiniteModule);
        }
        let mut order: u64 = 1;
        let mut factors = Vec::new();
        for d in m.torsion() {
            let d = d
                .to_u64()
                .ok_or(FpError::OrderBoundExceeded { bound })?;
            order = order
                .checked_mul(d)
                .ok_or(FpError::OrderBoundExceeded { bound })?;
            if order > bound {
                return Err(FpError::OrderBoundExceeded { bound });
            }
            factors.push(d);
        }
        Ok(Self { factors, order })
    }

    pub fn from_factors(factors: Vec<u64>) -> Self {
        let order = factors.iter().product();
        Self { factors, order }
    }

    pub fn zero(&self) -> Tuple {
        vec![0; self.factors.len()]
    }

    pub fn add(&self, a: &Tuple, b: &Tuple) -> Tuple {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &Tuple) -> Tuple {
        a.iter()
            .zip(&self.factors)
            .map(|(x, d)| (d - x) % d)
            .collect()
    }

    pub fn smul(&self, s: i64, a: &Tuple) -> Tuple {
        a.iter()
            .zip(&self.factors)
            .map(|(x, d)| {
                let sd = s.rem_euclid(*d as i64) as u64;
                (sd * x) % d
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Tuple> + '_ {
        let n = self.factors.len();
        (0..self.order).map(move |mut idx| {
            let mut t = vec![0u64; n];
            for (i, d) in self.factors.iter().enumerate() {
                t[i] = idx % d;
                idx /= d;
            }
            t
        })
    }

    pub fn element_order(&self, a: &Tuple) -> u64 {
        let mut ord = 1u64;
        for (x, d) in a.iter().zip(&self.factors) {
            if *x == 0 {
                continue;
            }
            let o = d / crate::arith::gcd_u64(*x, *d);
            ord = num_integer::lcm(ord, o);
        }
        ord
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |a, d| num_integer::lcm(a, *d))
    }

    /// Count of x with s·x = 0, by direct scan.
    pub fn count_killed_by(&self, s: i64) -> u64 {
        self.elements()
            .filter(|x| self.smul(s, x).iter().all(|v| *v == 0))
            .count() as u64
    }

    /// Number of elements of each order, sorted by order: an isomorphism
    /// invariant strong enough to separate any two finite abelian groups.
    pub fn order_census(&self) -> Vec<(u64, u64)> {
        let mut counts = std::collections::BTreeMap::new();
        for x in self.elements() {
            *counts.entry(self.element_order(&x)).or_insert(0u64) += 1;
        }
        counts.into_iter().collect()
    }

    /// Brute-force homomorphism count into `other`: tuples of generator
    /// images (y_1..y_k), y_i killed by d_i, each checked by scan.
    pub fn hom_count(&self, other: &Enumerated) -> u64 {
        let mut total = 1u64;
        for d in &self.factors {
            let killed = other
                .elements()
                .filter(|y| other.smul(*d as i64, y).iter().all(|v| *v == 0))
                .count() as u64;
            total *= killed;
        }
        total
    }

    /// Check the group axioms hold for the tuple arithmetic (oracle
    /// self-test): associativity and inverses on all pairs/triples up to a
    /// sample cap.
    pub fn axioms_hold(&self, cap: u64) -> bool {
        let elems: Vec<Tuple> = self.elements().take(cap as usize).collect();
        for a in &elems {
            if self.add(a, &self.neg(a)) != self.zero() {
                return false;
            }
            for b in &elems {
                if self.add(a, b) != self.add(b, a) {
                    return false;
                }
            }
        }
        true
    }
}

/// Brute-force count of group homomorphisms M → N from presentations alone:
/// every map of generators is tried and kept when all relations die.
/// Exponential; callers keep it to tiny instances.
pub fn hom_count_by_presentation(m: &FPModule, n: &FPModule) -> Result<u64, FpError> {
    let ne = Enumerated::from_module_bounded(n, 10_000)?;
    let gens = m.generators();
    let total = ne.order.checked_pow(gens as u32).ok_or(FpError::OrderBoundExceeded {
        bound: 10_000,
    })?;
    if total > 2_000_000 {
        return Err(FpError::OrderBoundExceeded { bound: 2_000_000 });
    }
    let targets: Vec<Tuple> = ne.elements().collect();
    let mut count = 0u64;
    let mut assignment = vec![0usize; gens];
    loop {
        // Does this generator assignment kill every relation of M?
        let ok = m.presentation().iter_rows().all(|rel| {
            let mut acc = ne.zero();
            for (g, coeff) in rel.iter().enumerate() {
                let c = coeff.to_i64().expect("desk-scale relation entries");
                acc = ne.add(&acc, &ne.smul(c, &targets[assignment[g]]));
            }
            acc.iter().all(|v| *v == 0)
        });
        if ok {
            count += 1;
        }
        // Next assignment in mixed radix.
        let mut i = 0;
        loop {
            if i == gens {
                return Ok(count);
            }
            assignment[i] += 1;
            if assignment[i] < targets.len() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
        if gens == 0 {
            return Ok(count);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    
    #[test]
    fn documented_enumerations() {
        let z6 = Enumerated::from_module(&FPModule::cyclic(6)).unwrap();
        assert_eq!(z6.order, 6);
        assert_eq!(z6.elements().count(), 6);

        let klein =
            FPModule::from_invariants(0, &[BigInt::from(2), BigInt::from(2)]).unwrap();
        let e = Enumerated::from_module(&klein).unwrap();
        assert_eq!(e.order, 4);
        assert_eq!(e.exponent(), 2);

        let m = FPModule::from_presentation(super::super::matrix::IntMatrix::from_i64(
            2,
            2,
            &[4, 2, 2, 4],
        ));
        let e = Enumerated::from_module(&m).unwrap();
        assert_eq!(e.order, 12);
        assert!(e.axioms_hold(12));
    }

    #[test]
    fn infinite_and_oversize_rejected() {
        assert!(matches!(
            Enumerated::from_module(&FPModule::free(1)),
            Err(FpError::InfiniteModule)
        ));
        let big = FPModule::cyclic(1_000_003);
        assert!(matches!(
            Enumerated::from_module_bounded(&big, 1000),
            Err(FpError::OrderBoundExceeded { .. })
        ));
    }

    #[test]
    fn hom_count_against_symbolic() {
        // |Hom(Z/6, Z/4)| = gcd(6,4) = 2, counted by generator-image scan.
        let m = FPModule::cyclic(6);
        let n = FPModule::cyclic(4);
        assert_eq!(hom_count_by_presentation(&m, &n).unwrap(), 2);
        let h = super::super::homalg::hom(&m, &n);
        let he = Enumerated::from_module(&h).unwrap();
        assert_eq!(he.order, 2);
    }
}
