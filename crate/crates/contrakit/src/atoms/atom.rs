//! Standard atoms and formal finite sums of them.
//!
//! The normal form splits every finite cyclic group into prime-power pieces,
//! folds Z[1/s] to its squarefree radical, and keeps a single distinguished
//! adele block ∏_{all p} Z_p^r. Equality of `AtomExpr` is equality of normal
//! forms.

use crate::arith::{factorize, is_prime_u64};
use crate::fpmod::FPModule;
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// Z
    Free,
    /// Q
    Rat,
    /// Z/p^k
    Cyclic { p: u64, k: u32 },
    /// Z_p
    PadicInt(u64),
    /// Q_p
    PadicRat(u64),
    /// Q_p/Z_p
    Prufer(u64),
    /// Z[1/s], s the squarefree radical ≥ 2
    Localized(u64),
}

impl Atom {
    pub fn cyclic(p: u64, k: u32) -> Self {
        assert!(is_prime_u64(p) && k >= 1);
        Atom::Cyclic { p, k }
    }

    pub fn validate(&self) -> Result<(), AtomError> {
        match self {
            Atom::Cyclic { p, k } => {
                if !is_prime_u64(*p) || *k == 0 {
                    return Err(AtomError::BadParameter(format!("Z/{p}^{k}")));
                }
            }
            Atom::PadicInt(p) | Atom::PadicRat(p) | Atom::Prufer(p) => {
                if !is_prime_u64(*p) {
                    return Err(AtomError::BadParameter(format!("prime expected, got {p}")));
                }
            }
            Atom::Localized(s) => {
                if *s < 2 {
                    return Err(AtomError::BadParameter(format!("Zinv({s})")));
                }
            }
            Atom::Free | Atom::Rat => {}
        }
        Ok(())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Free => write!(f, "Z"),
            Atom::Rat => write!(f, "Q"),
            Atom::Cyclic { p, k } => write!(f, "Z/{}", pow_u64(*p, *k)),
            Atom::PadicInt(p) => write!(f, "Zp({p})"),
            Atom::PadicRat(p) => write!(f, "Qp({p})"),
            Atom::Prufer(p) => write!(f, "Prufer({p})"),
            Atom::Localized(s) => write!(f, "Zinv({s})"),
        }
    }
}

fn pow_u64(p: u64, k: u32) -> u128 {
    (p as u128).pow(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AtomExpr {
    terms: BTreeMap<Atom, u64>,
    /// Rank of the block ∏_{all primes} Z_p^r.
    adele_rank: u64,
}

impl AtomExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn atom(a: Atom) -> Self {
        Self::atom_power(a, 1)
    }

    pub fn atom_power(a: Atom, mult: u64) -> Self {
        let mut e = Self::zero();
        e.add_atom(a, mult);
        e
    }

    pub fn adele(rank: u64) -> Self {
        Self { terms: BTreeMap::new(), adele_rank: rank }
    }

    pub fn add_atom(&mut self, a: Atom, mult: u64) {
        if mult == 0 {
            return;
        }
        // Composite cyclic parameters are not representable: Atom::Cyclic is
        // prime-power by construction. Localized is folded by the caller.
        *self.terms.entry(a).or_insert(0) += mult;
    }

    /// Add a cyclic group of arbitrary order d ≥ 2, split into prime powers.
    pub fn add_cyclic_order(&mut self, d: &BigInt, mult: u64) {
        for (p, k) in factorize(d) {
            self.add_atom(Atom::Cyclic { p, k }, mult);
        }
    }

    pub fn sum(mut self, other: &AtomExpr) -> AtomExpr {
        for (a, m) in &other.terms {
            self.add_atom(a.clone(), *m);
        }
        self.adele_rank += other.adele_rank;
        self
    }

    pub fn scaled(&self, mult: u64) -> AtomExpr {
        if mult == 0 {
            return AtomExpr::zero();
        }
        let mut e = AtomExpr::zero();
        for (a, m) in &self.terms {
            e.add_atom(a.clone(), m * mult);
        }
        e.adele_rank = self.adele_rank * mult;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.adele_rank == 0
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, u64)> {
        self.terms.iter().map(|(a, m)| (a, *m))
    }

    pub fn adele_rank(&self) -> u64 {
        self.adele_rank
    }

    pub fn multiplicity(&self, a: &Atom) -> u64 {
        self.terms.get(a).copied().unwrap_or(0)
    }

    /// The finitely presented tier embedded in atoms: Z^rank plus the
    /// prime-power splitting of the torsion chain.
    pub fn from_fp(m: &FPModule) -> AtomExpr {
        let (rank, torsion) = m.decompose();
        let mut e = AtomExpr::zero();
        e.add_atom(Atom::Free, rank as u64);
        for d in &torsion {
            e.add_cyclic_order(d, 1);
        }
        e
    }

    /// If the expression is a finitely presented group (only Z and cyclic
    /// atoms), return it as an FPModule.
    pub fn to_fp(&self) -> Option<FPModule> {
        if self.adele_rank != 0 {
            return None;
        }
        let mut rank = 0usize;
        let mut cyclics: Vec<BigInt> = Vec::new();
        for (a, m) in &self.terms {
            match a {
                Atom::Free => rank += *m as usize,
                Atom::Cyclic { p, k } => {
                    let d = BigInt::from(*p).pow(*k);
                    for _ in 0..*m {
                        cyclics.push(d.clone());
                    }
                }
                _ => return None,
            }
        }
        let chain = crate::arith::invariant_factors_from_cyclics(&cyclics);
        FPModule::from_invariants(rank, &chain).ok()
    }

    /// (rank of Q part, Prüfer multiplicities per prime) when the expression
    /// is divisible; None when any non-divisible atom or an adele block is
    /// present.
    pub fn divisible_part_if_divisible(&self) -> Option<(u64, BTreeMap<u64, u64>)> {
        if self.adele_rank != 0 {
            return None;
        }
        let mut rat = 0;
        let mut prufer = BTreeMap::new();
        for (a, m) in &self.terms {
            match a {
                Atom::Rat => rat += *m,
                Atom::Prufer(p) => *prufer.entry(*p).or_insert(0) += *m,
                _ => return None,
            }
        }
        Some((rat, prufer))
    }
}

impl fmt::Display for AtomExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, m) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}^{m}")?;
            }
        }
        if self.adele_rank > 0 {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Prod{{all}}[Zp^{}]", self.adele_rank)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomError {
    Parse { pos: usize, message: String },
    BadParameter(String),
    NotPPrimary,
    UnknownCorpusEntry(String),
    AtomRuleMissing(String),
}

impl fmt::Display for AtomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomError::Parse { pos, message } => {
                write!(f, "parse error at byte {pos}: {message}")
            }
            AtomError::BadParameter(s) => write!(f, "invalid atom parameter: {s}"),
            AtomError::NotPPrimary => write!(f, "not a finite p-group"),
            AtomError::UnknownCorpusEntry(s) => write!(f, "unknown corpus entry: {s}"),
            AtomError::AtomRuleMissing(s) => write!(f, "no rule for {s}"),
        }
    }
}

impl std::error::Error for AtomError {}

/// Recursive-descent parser for the atom grammar:
///
/// ```text
/// expr   := '0' | term ('+' term)*
/// term   := factor ('^' uint)?
/// factor := 'Z' | 'Q' | 'Z/' uint | 'Zp(' p ')' | 'Qp(' p ')'
///         | 'Prufer(' p ')' | 'Zinv(' s ')' | 'Adele(' r ')'
///         | 'Prod' '{' ('all' | p (',' p)*) '}' '[' expr ']'
/// ```
///
/// Inside a `Prod` body the prime-generic tokens `Zp`, `Qp`, `Prufer`, and
/// `Z/p^k` (literally with `p`) are instantiated at each listed prime.
/// `Prod{all}` only admits `Zp^r` and is the adele block; `Adele(r)` is an
/// accepted alias for it. Finite products expand to direct sums.
pub fn parse_expr(input: &str) -> Result<AtomExpr, AtomError> {
    let mut p = Parser { input: input.as_bytes(), pos: 0 };
    p.skip_ws();
    let e = p.expr(None)?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.err("trailing input"));
    }
    e.concrete(&mut AtomExpr::zero())
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

/// Parsed term before prime instantiation.
enum GTerm {
    Concrete(Atom),
    AdeleBlock(u64),
    GenericPadicInt,
    GenericPadicRat,
    GenericPrufer,
    GenericCyclic(u32),
    Sum(Vec<(GTerm, u64)>),
}

impl GTerm {
    fn instantiate(&self, p: u64, mult: u64, out: &mut AtomExpr) -> Result<(), AtomError> {
        match self {
            GTerm::Concrete(a) => out.add_atom(a.clone(), mult),
            GTerm::AdeleBlock(r) => out.adele_rank += r * mult,
            GTerm::GenericPadicInt => out.add_atom(Atom::PadicInt(p), mult),
            GTerm::GenericPadicRat => out.add_atom(Atom::PadicRat(p), mult),
            GTerm::GenericPrufer => out.add_atom(Atom::Prufer(p), mult),
            GTerm::GenericCyclic(k) => out.add_atom(Atom::Cyclic { p, k: *k }, mult),
            GTerm::Sum(parts) => {
                for (t, m) in parts {
                    t.instantiate(p, m * mult, out)?;
                }
            }
        }
        Ok(())
    }

    fn concrete(&self, acc: &mut AtomExpr) -> Result<AtomExpr, AtomError> {
        let mut out = std::mem::take(acc);
        match self {
            GTerm::Sum(parts) => {
                for (t, m) in parts {
                    match t {
                        GTerm::Concrete(a) => out.add_atom(a.clone(), *m),
                        GTerm::AdeleBlock(r) => out.adele_rank += r * m,
                        GTerm::Sum(_) => {
                            let inner = t.concrete(&mut AtomExpr::zero())?;
                            out = out.sum(&inner.scaled(*m));
                        }
                        _ => {
                            return Err(AtomError::BadParameter(
                                "prime-generic atom outside Prod".into(),
                            ))
                        }
                    }
                }
                Ok(out)
            }
            GTerm::Concrete(a) => {
                out.add_atom(a.clone(), 1);
                Ok(out)
            }
            GTerm::AdeleBlock(r) => {
                out.adele_rank += r;
                Ok(out)
            }
            _ => Err(AtomError::BadParameter("prime-generic atom outside Prod".into())),
        }
    }
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> AtomError {
        AtomError::Parse { pos: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), AtomError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn uint(&mut self) -> Result<u64, AtomError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.input[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self, generic: Option<()>) -> Result<GTerm, AtomError> {
        self.skip_ws();
        if self.peek() == Some(b'0') {
            // A bare zero expression.
            let save = self.pos;
            self.pos += 1;
            self.skip_ws();
            if self.pos == self.input.len() || matches!(self.peek(), Some(b']')) {
                return Ok(GTerm::Sum(vec![]));
            }
            self.pos = save;
        }
        let mut parts = Vec::new();
        loop {
            let t = self.factor(generic)?;
            self.skip_ws();
            let mult = if self.eat(b'^') {
                self.skip_ws();
                let m = self.uint()?;
                self.skip_ws();
                m
            } else {
                1
            };
            parts.push((t, mult));
            if !self.eat(b'+') {
                break;
            }
            self.skip_ws();
        }
        Ok(GTerm::Sum(parts))
    }

    fn prime(&mut self) -> Result<u64, AtomError> {
        let at = self.pos;
        let p = self.uint()?;
        if !is_prime_u64(p) {
            self.pos = at;
            return Err(self.err(&format!("{p} is not prime")));
        }
        Ok(p)
    }

    fn factor(&mut self, generic: Option<()>) -> Result<GTerm, AtomError> {
        self.skip_ws();
        if self.keyword("Zp") {
            self.skip_ws();
            if self.eat(b'(') {
                let p = self.prime()?;
                self.expect(b')')?;
                return Ok(GTerm::Concrete(Atom::PadicInt(p)));
            }
            if generic.is_some() {
                return Ok(GTerm::GenericPadicInt);
            }
            return Err(self.err("Zp needs a prime argument outside Prod"));
        }
        if self.keyword("Z/") {
            self.skip_ws();
            if generic.is_some() && self.keyword("p") {
                let k = if self.eat(b'^') { self.uint()? as u32 } else { 1 };
                return Ok(GTerm::GenericCyclic(k));
            }
            let d = self.uint()?;
            if d < 2 {
                return Err(self.err("cyclic order must be >= 2"));
            }
            let mut e = AtomExpr::zero();
            e.add_cyclic_order(&BigInt::from(d), 1);
            let parts = e
                .terms
                .into_iter()
                .map(|(a, m)| (GTerm::Concrete(a), m))
                .collect();
            return Ok(GTerm::Sum(parts));
        }
        if self.keyword("Zinv") {
            self.skip_ws();
            self.expect(b'(')?;
            let s = self.uint()?;
            self.expect(b')')?;
            if s < 2 {
                return Err(self.err("Zinv argument must have |s| >= 2"));
            }
            let radical: u64 = factorize(&BigInt::from(s)).keys().product();
            return Ok(GTerm::Concrete(Atom::Localized(radical)));
        }
        if self.keyword("Z") {
            return Ok(GTerm::Concrete(Atom::Free));
        }
        if self.keyword("Qp") {
            self.skip_ws();
            if self.eat(b'(') {
                let p = self.prime()?;
                self.expect(b')')?;
                return Ok(GTerm::Concrete(Atom::PadicRat(p)));
            }
            if generic.is_some() {
                return Ok(GTerm::GenericPadicRat);
            }
            return Err(self.err("Qp needs a prime argument outside Prod"));
        }
        if self.keyword("Q") {
            return Ok(GTerm::Concrete(Atom::Rat));
        }
        if self.keyword("Prufer") {
            self.skip_ws();
            if self.eat(b'(') {
                let p = self.prime()?;
                self.expect(b')')?;
                return Ok(GTerm::Concrete(Atom::Prufer(p)));
            }
            if generic.is_some() {
                return Ok(GTerm::GenericPrufer);
            }
            return Err(self.err("Prufer needs a prime argument outside Prod"));
        }
        if self.keyword("Adele") {
            self.skip_ws();
            self.expect(b'(')?;
            let r = self.uint()?;
            self.expect(b')')?;
            return Ok(GTerm::AdeleBlock(r));
        }
        if self.keyword("Prod") {
            self.skip_ws();
            self.expect(b'{')?;
            self.skip_ws();
            let primes = if self.keyword("all") {
                None
            } else {
                let mut ps = vec![self.prime()?];
                self.skip_ws();
                while self.eat(b',') {
                    self.skip_ws();
                    ps.push(self.prime()?);
                    self.skip_ws();
                }
                Some(ps)
            };
            self.skip_ws();
            self.expect(b'}')?;
            self.skip_ws();
            self.expect(b'[')?;
            let body = self.expr(Some(()))?;
            self.skip_ws();
            self.expect(b']')?;
            match primes {
                None => {
                    // Infinite block: only Zp^r is representable.
                    let rank = adele_rank_of_body(&body)
                        .ok_or_else(|| self.err("Prod{all} body must be Zp^r"))?;
                    Ok(GTerm::AdeleBlock(rank))
                }
                Some(ps) => {
                    let mut out = AtomExpr::zero();
                    for p in ps {
                        body.instantiate(p, 1, &mut out)?;
                    }
                    let parts = out
                        .terms
                        .into_iter()
                        .map(|(a, m)| (GTerm::Concrete(a), m))
                        .collect::<Vec<_>>();
                    let mut sum = parts;
                    if out.adele_rank > 0 {
                        sum.push((GTerm::AdeleBlock(out.adele_rank), 1));
                    }
                    Ok(GTerm::Sum(sum))
                }
            }
        } else {
            Err(self.err("expected an atom"))
        }
    }
}

fn adele_rank_of_body(body: &GTerm) -> Option<u64> {
    match body {
        GTerm::GenericPadicInt => Some(1),
        GTerm::Sum(parts) => {
            let mut total = 0u64;
            for (t, m) in parts {
                total += adele_rank_of_body(t)? * m;
            }
            Some(total)
        }
        _ => None,
    }
}

/// Convenience for tests and the CLI.
pub fn print_expr(e: &AtomExpr) -> String {
    e.to_string()
}

impl AtomExpr {
    /// Multiplicities as a BigInt count of each atom term, for reports.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "atoms": self.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(s: &str) -> String {
        parse_expr(s).unwrap().to_string()
    }

    #[test]
    fn grammar_tokens_roundtrip() {
        assert_eq!(roundtrip("Z"), "Z");
        assert_eq!(roundtrip("Z/8"), "Z/8");
        assert_eq!(roundtrip("Q"), "Q");
        assert_eq!(roundtrip("Zp(2)"), "Zp(2)");
        assert_eq!(roundtrip("Qp(3)"), "Qp(3)");
        assert_eq!(roundtrip("Prufer(5)"), "Prufer(5)");
        assert_eq!(roundtrip("Zinv(6)"), "Zinv(6)");
        assert_eq!(roundtrip("Adele(2)"), "Prod{all}[Zp^2]");
        assert_eq!(roundtrip("Prod{all}[Zp^2]"), "Prod{all}[Zp^2]");
        assert_eq!(roundtrip("0"), "0");
    }

    #[test]
    fn normalization() {
        // Composite cyclics split into prime powers; 12 = 4·3, and the
        // canonical order puts Z/4 (p = 2) before Z/3 (p = 3).
        assert_eq!(roundtrip("Z/12"), "Z/4 + Z/3");
        // Zinv folds to the radical.
        assert_eq!(roundtrip("Zinv(12)"), "Zinv(6)");
        // Multiplicities merge.
        assert_eq!(roundtrip("Z + Z + Z^2"), "Z^4");
        // Finite products expand.
        assert_eq!(roundtrip("Prod{2,3}[Zp^1]"), "Zp(2) + Zp(3)");
        assert_eq!(roundtrip("Prod{2,3}[Z/p^2]"), "Z/4 + Z/9");
    }

    #[test]
    fn parse_print_is_identity_on_printed_forms() {
        for s in [
            "Z^2 + Z/4 + Z/3 + Zp(5)",
            "Q + Prufer(2)^3",
            "Z/2 + Z/2 + Prod{all}[Zp^1]",
            "Qp(7) + Zinv(10)",
        ] {
            let e = parse_expr(s).unwrap();
            let printed = e.to_string();
            assert_eq!(parse_expr(&printed).unwrap(), e);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_expr("Zp(4)").unwrap_err();
        assert!(matches!(err, AtomError::Parse { .. }));
        let err = parse_expr("Z/1").unwrap_err();
        assert!(matches!(err, AtomError::Parse { .. }));
        let err = parse_expr("Z + ").unwrap_err();
        assert!(matches!(err, AtomError::Parse { .. }));
        let err = parse_expr("Prod{all}[Q]").unwrap_err();
        assert!(matches!(err, AtomError::Parse { .. }));
    }

    #[test]
    fn fp_conversion() {
        let m = FPModule::from_invariants(2, &[BigInt::from(12)]).unwrap();
        let e = AtomExpr::from_fp(&m);
        assert_eq!(e.to_string(), "Z^2 + Z/4 + Z/3");
        let back = e.to_fp().unwrap();
        assert!(back.isomorphic(&m));
        assert!(AtomExpr::atom(Atom::PadicInt(2)).to_fp().is_none());
    }
}
