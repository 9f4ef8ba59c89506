use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_traits::Zero;

use super::{ConstRing, Rational, Ring};

/// Variable tag for [`LaurentPoly`] and [`TruncSeries`](super::TruncSeries).
pub trait Var: Clone + Copy + PartialEq + Eq + fmt::Debug + Send + Sync + Default + 'static {
    const NAME: &'static str;
}

macro_rules! var_tag {
    ($($t:ident => $n:literal),* $(,)?) => {$(
        #[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Hash)]
        pub struct $t;
        impl Var for $t {
            const NAME: &'static str = $n;
        }
    )*};
}

var_tag!(VarX => "X", VarT => "t", VarU => "u", VarA => "A", VarB => "B", VarC => "C");

/// Finitely supported Laurent polynomial `Σ c_e v^e` with coefficients in a
/// [`ConstRing`] (rationals, or another Laurent polynomial for nested use).
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C, V> {
    terms: BTreeMap<i64, C>,
    _var: PhantomData<V>,
}

pub type PolyX = LaurentPoly<Rational, VarX>;

impl<C: ConstRing, V: Var> LaurentPoly<C, V> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new(), _var: PhantomData }
    }

    pub fn one() -> Self {
        Self::monomial(C::one_elem(), 0)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, e: i64) -> Self {
        let mut p = Self::zero();
        if !c.is_zero_elem() {
            p.terms.insert(e, c);
        }
        p
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(C::one_elem(), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    /// Coefficients `[c_0, c_1, ...]` of an ordinary polynomial.
    pub fn from_coeffs(cs: Vec<C>) -> Self {
        Self::from_terms(cs.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
    }

    pub fn add_term(&mut self, e: i64, c: &C) {
        if c.is_zero_elem() {
            return;
        }
        let remove = match self.terms.get_mut(&e) {
            Some(old) => {
                *old = old.plus(c);
                old.is_zero_elem()
            }
            None => {
                self.terms.insert(e, c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero_elem)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn is_polynomial(&self) -> bool {
        self.low_degree().is_none_or(|e| e >= 0)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a.times(c))))
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(), _var: PhantomData }
    }

    /// `p(v^k)` for nonzero integer `k` (negative `k` inverts the variable).
    pub fn subs_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution by v^0");
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(), _var: PhantomData }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(C::one_elem());
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }

    pub fn map_coeffs<D: ConstRing, F: Fn(&C) -> D>(&self, f: F) -> LaurentPoly<D, V> {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Evaluate at a point of the coefficient ring (negative powers need an inverse).
    pub fn eval(&self, x: &C) -> Option<C> {
        let mut acc = C::zero_elem();
        for (e, c) in &self.terms {
            let base = if *e < 0 { x.try_inverse()? } else { x.clone() };
            let mut pw = C::one_elem();
            for _ in 0..e.unsigned_abs() {
                pw = pw.times(&base);
            }
            acc = acc.plus(&c.times(&pw));
        }
        Some(acc)
    }
}

impl<V: Var> LaurentPoly<Rational, V> {
    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let dl = d.low_degree()?;
        let lead_inv = d.coeff(dd).try_inverse()?;
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let (Some(rd), Some(rl)) = (rem.degree(), rem.low_degree()) {
            if rd - rl < dd - dl {
                return None;
            }
            let c = rem.coeff(rd).times(&lead_inv);
            let e = rd - dd;
            q.add_term(e, &c);
            rem = rem.minus(&d.shift(e).scale(&c));
        }
        Some(q)
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn eval_rational(&self, x: &Rational) -> Option<Rational> {
        if x.is_zero() && self.low_degree().is_some_and(|e| e < 0) {
            return None;
        }
        self.eval(x)
    }
}

impl<C: ConstRing, V: Var> Ring for LaurentPoly<C, V> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::constant(C::one_elem())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(C::from_int(n))
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
    fn minus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &c.negate());
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &c1.times(c2));
            }
        }
        out
    }
    fn negate(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.negate())).collect(), _var: PhantomData }
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.try_inverse()?, -e))
    }
    fn half(&self) -> Option<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.terms.insert(*e, c.half()?);
        }
        Some(out)
    }
}

impl<C: ConstRing, V: Var> ConstRing for LaurentPoly<C, V> {
    fn zero_elem() -> Self {
        LaurentPoly::zero()
    }
    fn one_elem() -> Self {
        LaurentPoly::constant(C::one_elem())
    }
    fn from_int(n: i64) -> Self {
        LaurentPoly::constant(C::from_int(n))
    }
}

impl<C: ConstRing + fmt::Display, V: Var> fmt::Display for LaurentPoly<C, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match *e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", V::NAME)?,
                _ => write!(f, "({c})*{}^{e}", V::NAME)?,
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug, V: Var> fmt::Debug for LaurentPoly<C, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (e, c) in &self.terms {
            m.entry(&format_args!("{}^{e}", V::NAME), c);
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn x() -> PolyX {
        PolyX::var()
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let one = PolyX::one();
        let p = x().plus(&one);
        let q = x().minus(&one);
        let prod = p.times(&q);
        assert_eq!(prod, x().pow(2).minus(&one));
        assert_eq!(prod.minus(&prod).num_terms(), 0);
    }

    #[test]
    fn exact_division() {
        let one = PolyX::one();
        let a = x().plus(&one).pow(3).shift(-2);
        let b = x().plus(&one);
        assert_eq!(a.div_exact(&b).unwrap(), x().plus(&one).pow(2).shift(-2));
        assert!(x().pow(2).plus(&one).div_exact(&b).is_none());
    }

    #[test]
    fn substitution() {
        let p = x().plus(&PolyX::monomial(rat(3, 1), 2));
        let q = p.subs_power(-2);
        assert_eq!(q.coeff(-2), rat(1, 1));
        assert_eq!(q.coeff(-4), rat(3, 1));
        assert_eq!(p.eval_rational(&rat(2, 1)).unwrap(), rat(14, 1));
    }
}
