//! The local Siegel series polynomial `f_T^p(X)` for
//! `T ~ p^{m1} ⊥ p^{m1+m2} ⊥ p^{m1+m3}` and its palindromic normalization.
//!
//! Two independent derivations are provided: the eight-term closed form
//! ([`f_poly`]) and the recursion from the `m1 = 0` base sum
//! ([`f_poly_oracle`]).

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, rat_pow, sum_factor_terms, FactorTerm, PolyX, RatFunc, Rational, Ring};
use crate::padic::ElemDivisors;

#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoly {
    pub p: u64,
    /// `(m1, m2, m3)` with `m2 ≤ m3`.
    pub m: [u32; 3],
    pub poly: PolyX,
}

#[derive(Serialize)]
struct SiegelJson {
    p: u64,
    m: [u32; 3],
    coeffs: Vec<String>,
}

impl Serialize for SiegelPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SiegelJson { p: self.p, m: self.m, coeffs: self.coeffs().iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

impl SiegelPoly {
    /// `ord_p(det T) = 3m1 + m2 + m3`.
    pub fn ord(&self) -> i64 {
        i64::from(3 * self.m[0] + self.m[1] + self.m[2])
    }

    /// Integer coefficients from degree 0 upward.
    pub fn coeffs(&self) -> Vec<BigInt> {
        let d = self.poly.degree().unwrap_or(0);
        (0..=d).map(|e| self.poly.coeff(e).to_integer()).collect()
    }
}

/// `(m1, m2, m3)` of a sorted exponent triple.
pub fn shape_of(d: &ElemDivisors) -> [u32; 3] {
    [d.a[0], d.a[1] - d.a[0], d.a[2] - d.a[0]]
}

fn check_shape(m: [u32; 3]) -> Result<()> {
    if m[1] > m[2] {
        return Err(Error::Domain(format!("need m2 ≤ m3, got {m:?}")));
    }
    Ok(())
}

fn finish(p: u64, m: [u32; 3], q: Option<PolyX>) -> Result<SiegelPoly> {
    let poly = q.ok_or(Error::TranscriptionError((m[0], m[1], m[2])))?;
    if !poly.is_polynomial() || !poly.has_integer_coeffs() {
        return Err(Error::TranscriptionError((m[0], m[1], m[2])));
    }
    Ok(SiegelPoly { p, m, poly })
}

/// The eight rational terms of the closed form, before summation.
pub fn eight_terms(p: u64, m: [u32; 3]) -> Vec<FactorTerm> {
    let (m1, m2, m3) = (i64::from(m[0]), i64::from(m[1]), i64::from(m[2]));
    let q = |e: i64| rat_pow(p, e);
    let one = Rational::one();
    let f = |c: Rational, k: i64, mult: u32| (c, k, mult);
    let three = |k: i64| vec![f(one.clone(), k, 1), f(q(4), k, 1), f(q(8), k, 1)];
    let sq = |c: Rational, k: i64| vec![f(one.clone(), k, 2), f(c, k, 1)];
    let big = 3 * m1 + m2 + m3;
    vec![
        FactorTerm::new(one.clone(), 0, three(1)),
        FactorTerm::new(one.clone(), big, three(-1)),
        FactorTerm::new(-q(8 * m1 + 8), m1 + 1, three(1)),
        FactorTerm::new(-q(8 * m1 + 8), 2 * m1 + m2 + m3 - 1, three(-1)),
        FactorTerm::new(-q(8 * m1 + 4 * (m2 + 1)), m1 + m2 + 1, sq(q(4), 1)),
        FactorTerm::new(-q(8 * m1 + 4 * (m2 + 1)), 2 * m1 + m3 - 1, sq(q(4), -1)),
        FactorTerm::new(-q(8 * m1 + 4 * m2), m1 + m3 + 1, sq(q(-4), 1)),
        FactorTerm::new(-q(8 * m1 + 4 * m2), 2 * m1 + m2 - 1, sq(q(-4), -1)),
    ]
}

/// `f_T^p(X)` from the eight-term closed form, summed over the common
/// denominator and divided exactly.
pub fn f_poly(p: u64, m: [u32; 3]) -> Result<SiegelPoly> {
    check_shape(m)?;
    let (_, _, q) = sum_factor_terms(&eight_terms(p, m));
    finish(p, m, q)
}

/// `Σ_{k=0}^{m2} (p⁴X)^k (1 + X + … + X^{m2+m3−2k})`, the `m1 = 0` case.
pub fn base_sum(p: u64, m2: u32, m3: u32) -> PolyX {
    let p4 = rat_pow(p, 4);
    let mut out = PolyX::zero();
    let mut pk = Rational::one();
    for k in 0..=m2 {
        for i in 0..=(m2 + m3 - 2 * k) {
            out.add_term(i64::from(k + i), &pk);
        }
        pk = &pk * &p4;
    }
    out
}

fn lin(c: Rational) -> PolyX {
    PolyX::from_coeffs(vec![Rational::one(), -c])
}

/// `f_T^p(X)` from the base sum and the `C_0`/`C_1` recursion in `m1`.
pub fn f_poly_oracle(p: u64, m: [u32; 3]) -> Result<SiegelPoly> {
    check_shape(m)?;
    let (m1, m2, m3) = (m[0], m[1], m[2]);
    let f0 = base_sum(p, m2, m3);
    let fm1 = if m2 == 0 { PolyX::zero() } else { base_sum(p, m2 - 1, m3 - 1) };
    let rf = |x: PolyX| RatFunc::from_poly(x);
    let c0 = RatFunc::new(PolyX::one(), lin(int(1)).times(&lin(rat_pow(p, 4))).times(&lin(rat_pow(p, 8))).times(&f0));
    let head = RatFunc::new(PolyX::from_coeffs(vec![int(1), int(1) + rat_pow(p, 4)]).negate(), lin(rat_pow(p, 8)));
    let c1 =
        head.add(&rf(f0.clone())).sub(&rf(fm1.shift(2))).div(&rf(lin(int(1)).times(&lin(rat_pow(p, -4))).times(&f0)));
    let p8 = PolyX::constant(rat_pow(p, 8 * i64::from(m1)));
    let x = |e: u32| PolyX::monomial(Rational::one(), i64::from(e));
    let inner = c0
        .subs_inverse()
        .mul_poly(&x(3 * m1))
        .add(&c1.subs_inverse().mul_poly(&p8.times(&x(2 * m1))))
        .add(&c1.mul_poly(&p8.times(&x(m1))))
        .add(&c0);
    finish(p, m, inner.mul_poly(&f0).into_poly())
}

/// `X^{m} f(X^{-2})` with `m = ord_p(det T)`.
pub fn tilde_f(s: &SiegelPoly) -> PolyX {
    s.poly.subs_power(-2).shift(s.ord())
}

/// The alternative normalization `X^{-m} f(X²)`; equal to [`tilde_f`] by the
/// functional equation.
pub fn tilde_f_alt(s: &SiegelPoly) -> PolyX {
    s.poly.subs_power(2).shift(-s.ord())
}

/// Coefficients `c_j` (for `j = m, m−2, …, ≥ 0`) with
/// `t = Σ_{j>0} c_j (X^j + X^{-j}) + [m even] c_0`.
pub fn symmetric_coefficients(t: &PolyX, m: i64) -> Result<Vec<(i64, BigInt)>> {
    if *t != t.subs_power(-1) {
        return Err(Error::NonPalindromic);
    }
    if t.terms().any(|(e, _)| (e - m).rem_euclid(2) != 0 || e.abs() > m) {
        return Err(Error::ParityBug(0));
    }
    let mut out = Vec::new();
    let mut j = m;
    while j >= 0 {
        let c = t.coeff(j);
        if !c.is_integer() {
            return Err(Error::Domain(format!("non-integral coefficient {c}")));
        }
        out.push((j, c.to_integer()));
        j -= 2;
    }
    Ok(out)
}

/// Inverse of [`symmetric_coefficients`].
pub fn from_symmetric_coefficients(cs: &[(i64, BigInt)]) -> PolyX {
    let mut t = PolyX::zero();
    for (j, c) in cs {
        let c = Rational::from_integer(c.clone());
        t.add_term(*j, &c);
        if *j != 0 {
            t.add_term(-*j, &c);
        }
    }
    t
}

/// All shapes with `3m1 + m2 + m3 ≤ bound`.
pub fn shapes_up_to(bound: u32) -> Vec<[u32; 3]> {
    let mut v = Vec::new();
    for m1 in 0..=bound / 3 {
        for m3 in 0..=(bound - 3 * m1) {
            for m2 in 0..=m3 {
                if 3 * m1 + m2 + m3 <= bound {
                    v.push([m1, m2, m3]);
                }
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        for p in [2u64, 3, 5] {
            assert_eq!(f_poly(p, [0, 0, 0]).unwrap().coeffs(), ints(&[1]));
            assert_eq!(f_poly(p, [0, 0, 1]).unwrap().coeffs(), ints(&[1, 1]));
            assert_eq!(f_poly(p, [0, 0, 2]).unwrap().coeffs(), ints(&[1, 1, 1]));
        }
    }

    #[test]
    fn frozen_values() {
        assert_eq!(f_poly(2, [1, 0, 0]).unwrap().coeffs(), ints(&[1, 273, 273, 1]));
        assert_eq!(f_poly(2, [0, 1, 2]).unwrap().coeffs(), ints(&[1, 17, 17, 1]));
        assert_eq!(f_poly_oracle(2, [1, 0, 0]).unwrap().coeffs(), ints(&[1, 273, 273, 1]));
    }

    #[test]
    fn two_routes_agree() {
        for p in [2u64, 3] {
            for m in shapes_up_to(9) {
                let a = f_poly(p, m).unwrap();
                let b = f_poly_oracle(p, m).unwrap();
                assert_eq!(a, b, "p={p} m={m:?}");
                assert_eq!(a.poly.degree(), Some(a.ord()));
                assert_eq!(a.poly.coeff(0), Rational::one());
            }
        }
    }

    #[test]
    fn tilde_examples() {
        let s = f_poly(3, [0, 0, 1]).unwrap();
        let t = tilde_f(&s);
        assert_eq!(t, PolyX::from_terms([(1, int(1)), (-1, int(1))]));
        assert_eq!(symmetric_coefficients(&t, 1).unwrap(), vec![(1, BigInt::from(1))]);
        let s = f_poly(3, [0, 0, 2]).unwrap();
        let t = tilde_f(&s);
        assert_eq!(symmetric_coefficients(&t, 2).unwrap(), vec![(2, BigInt::from(1)), (0, BigInt::from(1))]);
        let s = f_poly(2, [0, 1, 2]).unwrap();
        let t = tilde_f(&s);
        let c = symmetric_coefficients(&t, 3).unwrap();
        assert_eq!(from_symmetric_coefficients(&c), t);
        assert_eq!(tilde_f_alt(&s), t);
    }

    #[test]
    fn non_palindromic_rejected() {
        let t = PolyX::from_terms([(1, int(2)), (-1, int(1))]);
        assert_eq!(symmetric_coefficients(&t, 1).unwrap_err(), Error::NonPalindromic);
    }
}
