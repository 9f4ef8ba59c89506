//! Formal products `q · π^{h/2} · Π ζ(odd)^e · Π L(Sym², odd)^e`.
//!
//! Even zeta values are expanded to π-monomials through Bernoulli numbers;
//! odd zeta values and symmetric-square L-values stay symbolic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use super::{rational_to_string, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    /// ζ(n), n odd ≥ 3.
    Zeta(u32),
    /// L(r, Sym² π_f), r odd ≥ 1.
    SymSq(u32),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Zeta(n) => write!(f, "zeta{n}"),
            Symbol::SymSq(r) => write!(f, "symsq{r}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    pub pi_half_power: i64,
    pub symbols: BTreeMap<Symbol, i64>,
}

impl Monomial {
    fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut symbols = self.symbols.clone();
        for (s, e) in &rhs.symbols {
            let v = symbols.entry(*s).or_insert(0);
            *v += e;
            if *v == 0 {
                symbols.remove(s);
            }
        }
        Monomial { pi_half_power: self.pi_half_power + rhs.pi_half_power, symbols }
    }

    fn inv(&self) -> Monomial {
        Monomial { pi_half_power: -self.pi_half_power, symbols: self.symbols.iter().map(|(s, e)| (*s, -e)).collect() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SpecialValue {
    terms: BTreeMap<Monomial, Rational>,
}

impl SpecialValue {
    pub fn zero() -> Self {
        SpecialValue::default()
    }

    pub fn rational(q: Rational) -> Self {
        Self::term(q, Monomial::default())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    pub fn term(q: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        SpecialValue { terms }
    }

    /// π^{h/2}.
    pub fn pi_half(h: i64) -> Self {
        Self::term(Rational::one(), Monomial { pi_half_power: h, symbols: BTreeMap::new() })
    }

    pub fn symbol(s: Symbol, e: i64) -> Self {
        let mut symbols = BTreeMap::new();
        if e != 0 {
            symbols.insert(s, e);
        }
        Self::term(Rational::one(), Monomial { pi_half_power: 0, symbols })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The single term, when there is exactly one.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Pure rational value, if no π or symbol survives.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let (m, q) = self.as_monomial()?;
        (m.pi_half_power == 0 && m.symbols.is_empty()).then(|| q.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, q) in &rhs.terms {
            let v = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *v += q;
            if v.is_zero() {
                terms.remove(m);
            }
        }
        SpecialValue { terms }
    }

    pub fn neg(&self) -> Self {
        SpecialValue { terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = SpecialValue::zero();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &rhs.terms {
                out = out.add(&Self::term(q1 * q2, m1.mul(m2)));
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::rational(q.clone()))
    }

    /// Division by a single-term value.
    pub fn div_monomial(&self, rhs: &Self) -> Result<Self> {
        let (m, q) = rhs.as_monomial().ok_or(Error::NonMonomialDivisor(rhs.terms.len()))?;
        Ok(self.mul(&Self::term(q.recip(), m.inv())))
    }

    /// Integer power of a single-term value.
    pub fn pow_monomial(&self, e: i64) -> Result<Self> {
        let (m, q) = self.as_monomial().ok_or(Error::NonMonomialDivisor(self.terms.len()))?;
        let mut out = SpecialValue::rational(Rational::one());
        let base = if e >= 0 { Self::term(q.clone(), m.clone()) } else { Self::term(q.recip(), m.inv()) };
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }
}

impl fmt::Display for SpecialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{q}")?;
            if m.pi_half_power != 0 {
                write!(f, "*pi^({}/2)", m.pi_half_power)?;
            }
            for (s, e) in &m.symbols {
                write!(f, "*{s}^{e}")?;
            }
        }
        Ok(())
    }
}

struct SymbolMap<'a>(&'a BTreeMap<Symbol, i64>);

impl Serialize for SymbolMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }
}

#[derive(Serialize)]
struct TermRepr<'a> {
    coeff: String,
    pi_half_power: i64,
    symbols: SymbolMap<'a>,
}

/// Serialized as a JSON array of `{coeff, pi_half_power, symbols}` objects.
impl Serialize for SpecialValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, q) in &self.terms {
            seq.serialize_element(&TermRepr {
                coeff: rational_to_string(q),
                pi_half_power: m.pi_half_power,
                symbols: SymbolMap(&m.symbols),
            })?;
        }
        seq.end()
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: u64, k: u64) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Bernoulli numbers B_0..B_n with B_1 = −1/2.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(m as u64 + 1, k as u64)) * bk;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// ζ(n) for integer n ≥ 2: a π-monomial for even n, a symbol for odd n.
pub fn zeta(n: u32) -> Result<SpecialValue> {
    if n < 2 {
        return Err(Error::Domain(format!("zeta({n}) is not handled")));
    }
    if n % 2 == 1 {
        return Ok(SpecialValue::symbol(Symbol::Zeta(n), 1));
    }
    let m = (n / 2) as i64;
    let b = &bernoulli_numbers(n as usize)[n as usize];
    let sign = if m % 2 == 1 { Rational::one() } else { -Rational::one() };
    let coeff = sign * b * Rational::from_integer(BigInt::one() << n as usize)
        / Rational::from_integer(BigInt::from(2) * factorial(n as u64));
    Ok(SpecialValue::rational(coeff).mul(&SpecialValue::pi_half(2 * n as i64)))
}

/// Γ(n2/2) for a positive integer n2.
pub fn gamma_half(n2: i64) -> Result<SpecialValue> {
    if n2 <= 0 {
        return Err(Error::NonPositiveGammaArgument(Rational::new(BigInt::from(n2), BigInt::from(2))));
    }
    if n2 % 2 == 0 {
        return Ok(SpecialValue::integer(factorial((n2 / 2 - 1) as u64)));
    }
    // Γ(m + 1/2) = (2m)! / (4^m m!) · √π
    let m = (n2 - 1) / 2;
    let q = Rational::new(factorial(2 * m as u64), (BigInt::one() << (2 * m as usize)) * factorial(m as u64));
    Ok(SpecialValue::rational(q).mul(&SpecialValue::pi_half(1)))
}

/// ξ(s) = π^{−s/2} Γ(s/2) ζ(s).
pub fn xi(s: u32) -> Result<SpecialValue> {
    Ok(SpecialValue::pi_half(-(s as i64)).mul(&gamma_half(s as i64)?).mul(&zeta(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[12], rat(-691, 2730));
        assert!(b[11].is_zero());
    }

    #[test]
    fn even_zeta() {
        assert_eq!(zeta(2).unwrap(), SpecialValue::rational(rat(1, 6)).mul(&SpecialValue::pi_half(4)));
        let z6 = zeta(6).unwrap();
        assert_eq!(z6, SpecialValue::rational(rat(1, 945)).mul(&SpecialValue::pi_half(12)));
        let prod = zeta(2).unwrap().mul(&z6);
        assert_eq!(prod, SpecialValue::rational(rat(1, 2 * 81 * 5 * 7)).mul(&SpecialValue::pi_half(16)));
    }

    #[test]
    fn symbols_cancel() {
        let z5 = zeta(5).unwrap();
        assert_eq!(z5.div_monomial(&z5).unwrap(), SpecialValue::rational(rat(1, 1)));
        assert_eq!(SpecialValue::zero().add(&z5), z5);
    }

    #[test]
    fn half_integer_gamma() {
        assert_eq!(gamma_half(5).unwrap(), SpecialValue::rational(rat(3, 4)).mul(&SpecialValue::pi_half(1)));
        assert_eq!(gamma_half(9).unwrap(), SpecialValue::rational(rat(105, 16)).mul(&SpecialValue::pi_half(1)));
        assert_eq!(gamma_half(10).unwrap(), SpecialValue::integer(24));
        assert!(gamma_half(0).is_err());
    }

    #[test]
    fn non_monomial_division() {
        let two_terms = zeta(5).unwrap().add(&SpecialValue::integer(1));
        let e = SpecialValue::integer(1).div_monomial(&two_terms).unwrap_err();
        assert!(e.to_string().contains("non-monomial divisor"));
    }
}
