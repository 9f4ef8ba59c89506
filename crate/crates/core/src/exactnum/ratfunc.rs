use std::collections::BTreeMap;

use super::{LaurentPoly, Rational, Ring, Var};

/// Quotient of two Laurent polynomials over Q, kept unreduced.
///
/// No gcd cancellation is attempted; [`RatFunc::into_poly`] performs the one
/// exact division at the end of a computation.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<V: Var> {
    pub num: LaurentPoly<Rational, V>,
    pub den: LaurentPoly<Rational, V>,
}

impl<V: Var> RatFunc<V> {
    pub fn new(num: LaurentPoly<Rational, V>, den: LaurentPoly<Rational, V>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }
    }

    pub fn from_poly(p: LaurentPoly<Rational, V>) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RatFunc { num: self.num.plus(&rhs.num), den: self.den.clone() };
        }
        RatFunc { num: self.num.times(&rhs.den).plus(&rhs.num.times(&self.den)), den: self.den.times(&rhs.den) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.negate(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RatFunc { num: self.num.times(&rhs.num), den: self.den.times(&rhs.den) }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.num.is_zero(), "division by zero rational function");
        RatFunc { num: self.num.times(&rhs.den), den: self.den.times(&rhs.num) }
    }

    pub fn mul_poly(&self, p: &LaurentPoly<Rational, V>) -> Self {
        RatFunc { num: self.num.times(p), den: self.den.clone() }
    }

    /// `r(1/v)`.
    pub fn subs_inverse(&self) -> Self {
        RatFunc { num: self.num.subs_power(-1), den: self.den.subs_power(-1) }
    }

    /// The quotient as a Laurent polynomial, or `None` if the division leaves a remainder.
    pub fn into_poly(&self) -> Option<LaurentPoly<Rational, V>> {
        self.num.div_exact(&self.den)
    }
}

/// `coef · v^exp / Π (1 − c·v^k)^mult`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorTerm {
    pub coef: Rational,
    pub exp: i64,
    /// Entries `(c, k, mult)` with `c ≠ 0`, `k ≠ 0`.
    pub factors: Vec<(Rational, i64, u32)>,
}

impl FactorTerm {
    pub fn new(coef: Rational, exp: i64, factors: Vec<(Rational, i64, u32)>) -> Self {
        FactorTerm { coef, exp, factors }
    }

    /// Rewrite every `(1 − c v^{-k})` with `k > 0` as `−c v^{-k} (1 − c^{-1} v^k)`.
    fn normalized(&self) -> Self {
        let mut out = FactorTerm { coef: self.coef.clone(), exp: self.exp, factors: Vec::new() };
        for (c, k, m) in &self.factors {
            if *k > 0 {
                out.factors.push((c.clone(), *k, *m));
            } else {
                let f = -c.recip();
                for _ in 0..*m {
                    out.coef = &out.coef * &f;
                }
                out.exp -= k * i64::from(*m);
                out.factors.push((c.recip(), -k, *m));
            }
        }
        out
    }
}

fn one_minus<V: Var>(c: &Rational, k: i64) -> LaurentPoly<Rational, V> {
    LaurentPoly::from_terms([(0, Rational::from_integer(1.into())), (k, -c.clone())])
}

/// Numerators of the terms over their least common denominator, and that
/// denominator (a polynomial with constant term 1).
pub fn common_denominator<V: Var>(terms: &[FactorTerm]) -> (Vec<LaurentPoly<Rational, V>>, LaurentPoly<Rational, V>) {
    let norm: Vec<FactorTerm> = terms.iter().map(FactorTerm::normalized).collect();
    let owned = |t: &FactorTerm| {
        let mut own: BTreeMap<(i64, Rational), u32> = BTreeMap::new();
        for (c, k, m) in &t.factors {
            *own.entry((*k, c.clone())).or_insert(0) += m;
        }
        own
    };
    let mut lcm: BTreeMap<(i64, Rational), u32> = BTreeMap::new();
    for t in &norm {
        for (key, m) in owned(t) {
            let e = lcm.entry(key).or_insert(0);
            *e = (*e).max(m);
        }
    }
    let mut den = LaurentPoly::one();
    for ((k, c), m) in &lcm {
        den = den.times(&one_minus::<V>(c, *k).pow(*m));
    }
    let nums = norm
        .iter()
        .map(|t| {
            let own = owned(t);
            let mut cof = LaurentPoly::monomial(t.coef.clone(), t.exp);
            for ((k, c), m) in &lcm {
                let rest = m - own.get(&(*k, c.clone())).copied().unwrap_or(0);
                cof = cof.times(&one_minus::<V>(c, *k).pow(rest));
            }
            cof
        })
        .collect();
    (nums, den)
}

type RatPoly<V> = LaurentPoly<Rational, V>;

/// Sum of [`FactorTerm`]s over their least common denominator, followed by
/// one exact division. Returns the summed numerator, the denominator, and the
/// quotient if the division is exact.
pub fn sum_factor_terms<V: Var>(terms: &[FactorTerm]) -> (RatPoly<V>, RatPoly<V>, Option<RatPoly<V>>) {
    let (nums, den) = common_denominator::<V>(terms);
    let num = nums.iter().fold(LaurentPoly::zero(), |acc, n| acc.plus(n));
    let q = num.div_exact(&den);
    (num, den, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, VarX};

    type P = LaurentPoly<Rational, VarX>;

    #[test]
    fn partial_fractions_recombine() {
        // 1/(1-X) - X/(1-X) = 1
        let one = P::one();
        let den = P::from_coeffs(vec![rat(1, 1), rat(-1, 1)]);
        let a = RatFunc::new(one.clone(), den.clone());
        let b = RatFunc::new(P::var(), den);
        assert_eq!(a.sub(&b).into_poly().unwrap(), one);
    }

    #[test]
    fn inverse_substitution() {
        // (1 - X^{-1}) / (1 - X) = -X^{-1}
        let r = RatFunc::new(
            P::from_coeffs(vec![rat(1, 1), rat(-1, 1)]).subs_power(-1),
            P::from_coeffs(vec![rat(1, 1), rat(-1, 1)]),
        );
        assert_eq!(r.into_poly().unwrap(), P::monomial(rat(-1, 1), -1));
        assert!(RatFunc::new(P::one(), P::from_coeffs(vec![rat(1, 1), rat(1, 1)])).into_poly().is_none());
    }
}
