//! Local densities, group orders and the mass formula.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    big_pow, factorial, int, one_minus_p_pow, rat_pow, ratfun_expand, zeta, LaurentPoly, Rational, SpecialValue,
    TruncSeries, VarU,
};
use crate::jordan::JordanElement;
use crate::padic::{genus_invariants, ElemDivisors};

/// The products of `(1 − p^{-e})` that appear in the closed forms.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityConstants {
    pub p: u64,
    /// `(1−p⁻²)(1−p⁻⁶)(1−p⁻⁸)(1−p⁻¹²)`
    pub c1: Rational,
    /// `(1−p⁻²)(1−p⁻⁴)(1−p⁻⁶)(1−p⁻⁸)`
    pub c2: Rational,
    /// `(1−p⁻²)(1−p⁻⁴)²(1−p⁻⁶)`
    pub c3: Rational,
    /// `(1−p⁻²)(1−p⁻⁵)(1−p⁻⁶)(1−p⁻⁸)(1−p⁻⁹)(1−p⁻¹²)`
    pub delta: Rational,
}

fn prod(p: u64, exps: &[i64]) -> Rational {
    exps.iter().fold(Rational::one(), |acc, &e| acc * one_minus_p_pow(p, e))
}

impl DensityConstants {
    pub fn new(p: u64) -> Self {
        DensityConstants {
            p,
            c1: prod(p, &[2, 6, 8, 12]),
            c2: prod(p, &[2, 4, 6, 8]),
            c3: prod(p, &[2, 4, 4, 6]),
            delta: prod(p, &[2, 5, 6, 8, 9, 12]),
        }
    }
}

/// `β_p` of the class with exponents `d`.
pub fn beta_p(d: &ElemDivisors) -> Rational {
    let k = DensityConstants::new(d.p);
    let [a1, a2, a3] = d.a.map(i64::from);
    let p = d.p;
    if a1 == a2 && a2 == a3 {
        rat_pow(p, 27 * a1) * k.c1
    } else if a1 == a2 {
        rat_pow(p, 26 * a1 + a3) * k.c2
    } else if a2 == a3 {
        rat_pow(p, 17 * a1 + 10 * a3) * k.c2
    } else {
        rat_pow(p, 17 * a1 + 9 * a2 + a3) * k.c3
    }
}

/// `α_p = |det T|_p^{-9} δ_p / β_p`.
pub fn alpha_p(d: &ElemDivisors) -> Rational {
    let k = DensityConstants::new(d.p);
    rat_pow(d.p, 9 * i64::from(d.sum())) * k.delta / beta_p(d)
}

/// All sorted exponent triples with the given sum.
pub fn triples_with_sum(m: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a1 in 0..=m / 3 {
        for a2 in a1..=(m - a1) / 2 {
            out.push([a1, a2, m - a1 - a2]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IgusaReport {
    pub p: u64,
    pub order: usize,
    pub ok: bool,
    /// First u-exponent where the two sides differ.
    pub first_mismatch: Option<usize>,
}

/// Compare `Σ_T u^{ord det T}/β_p(T)` with `1/[c1 (1−u/p)(1−u/p⁵)(1−u/p⁹)]` through `u^M`.
pub fn igusa_series(p: u64, order: usize) -> Result<(TruncSeries<Rational, VarU>, TruncSeries<Rational, VarU>)> {
    let lhs: Vec<Rational> = (0..=order as u32)
        .map(|m| {
            triples_with_sum(m)
                .into_iter()
                .map(|a| beta_p(&ElemDivisors::new(p, a)).recip())
                .fold(Rational::zero(), |s, x| s + x)
        })
        .collect();
    let lhs = TruncSeries::from_coeffs(lhs, order);
    let c1 = DensityConstants::new(p).c1;
    let lin = |e: i64| LaurentPoly::<Rational, VarU>::from_coeffs(vec![Rational::one(), -rat_pow(p, -e)]);
    let rhs = ratfun_expand(&LaurentPoly::constant(c1.recip()), &[lin(1), lin(5), lin(9)], order)?;
    Ok((lhs, rhs))
}

pub fn igusa_verify(p: u64, order: usize) -> Result<IgusaReport> {
    let (lhs, rhs) = igusa_series(p, order)?;
    let first_mismatch = (0..=order).find(|&j| lhs.coeff(j) != rhs.coeff(j));
    Ok(IgusaReport { p, order, ok: first_mismatch.is_none(), first_mismatch })
}

/// `(#M(Z/p^n), #M′(Z/p^n))`.
pub fn group_orders(p: u64, n: u32) -> (BigInt, BigInt) {
    assert!(n >= 1, "n must be positive");
    let pb = BigInt::from(p);
    let f = |e: u32| big_pow(p, e) - 1;
    let m1_prime = big_pow(p, 36) * f(12) * f(9) * f(8) * f(6) * f(5) * f(2);
    let m1 = &m1_prime * (&pb - 1);
    (m1 * big_pow(p, 79 * (n - 1)), m1_prime * big_pow(p, 78 * (n - 1)))
}

/// `c = 5!·7!·11!/(2π)^{28}` as a formal value.
pub fn mass_constant_c() -> SpecialValue {
    let num = factorial(5) * factorial(7) * factorial(11);
    SpecialValue::rational(Rational::new(num, big_pow(2, 28))).mul(&SpecialValue::pi_half(-56))
}

/// `c·ζ(2)ζ(6)ζ(8)ζ(12)`, which is rational.
pub fn c_zeta_product() -> Rational {
    let mut v = mass_constant_c();
    for n in [2, 6, 8, 12] {
        v = v.mul(&zeta(n).expect("even zeta"));
    }
    v.as_rational().expect("π-powers cancel in c·ζ(2)ζ(6)ζ(8)ζ(12)")
}

/// The expected value of [`c_zeta_product`], `691/(2^15·3^6·5^2·7^2·13)`.
pub fn c_zeta_product_expected() -> Rational {
    int(691) / (int(1 << 15) * int(729) * int(25) * int(49) * int(13))
}

/// `Mass(T) = c (det T)^9 / Π_p β_p(T)`, with the primes not dividing
/// `det T` absorbed into `c·ζ(2)ζ(6)ζ(8)ζ(12)`.
pub fn mass(t: &JordanElement<BigInt>) -> Result<Rational> {
    if !t.is_positive() {
        return Err(Error::NonPositive);
    }
    let det = t.det();
    let mut m = c_zeta_product() * Rational::from_integer(num_traits::pow(det.clone(), 9));
    for (p, d) in genus_invariants(t)? {
        m = m * DensityConstants::new(p).c1 / beta_p(&d);
    }
    Ok(m)
}

/// Closed-form `β_p(1_3)` check value: `δ_p(1−p⁻¹)p^{27}/#nonsingular(J(F_p))`
/// given the count of nonsingular elements.
pub fn beta_from_count(p: u64, nonsingular: &BigInt) -> Rational {
    let k = DensityConstants::new(p);
    k.delta * one_minus_p_pow(p, 1) * Rational::from_integer(big_pow(p, 27))
        / Rational::from_integer(nonsingular.clone())
}

/// `p^{12}(p−1)(p⁵−1)(p⁹−1)`, the number of nonsingular elements of `J(F_p)`
/// implied by the closed form for `β_p(1_3)`.
pub fn expected_nonsingular_count(p: u64) -> BigInt {
    big_pow(p, 12) * (big_pow(p, 1) - 1) * (big_pow(p, 5) - 1) * (big_pow(p, 9) - 1)
}

/// All sorted exponent triples with `a3 ≤ bound`.
pub fn triples_up_to(bound: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a3 in 0..=bound {
        for a2 in 0..=a3 {
            for a1 in 0..=a2 {
                out.push([a1, a2, a3]);
            }
        }
    }
    out
}

/// Check on every triple with `a3 ≤ bound`:
/// `β(pT) = p^{27}β(T)`, `β(T × T) = p^{9 ord det T}β(T)` and, when
/// `a1 = 0 < a3` and `a2 < a3`, `β(T′) = pβ(T)` with `e_3(T′) = e_3(T) + 1`.
/// Returns the first failing triple with the rule name.
pub fn beta_recursions(p: u64, bound: u32) -> std::result::Result<(), ([u32; 3], &'static str)> {
    let b = |a: [u32; 3]| beta_p(&ElemDivisors::new(p, a));
    for a in triples_up_to(bound) {
        let base = b(a);
        if b(a.map(|x| x + 1)) != rat_pow(p, 27) * &base {
            return Err((a, "scaling"));
        }
        let adj = [a[1] + a[2], a[0] + a[2], a[0] + a[1]];
        if b(adj) != rat_pow(p, 9 * i64::from(a[0] + a[1] + a[2])) * &base {
            return Err((a, "adjoint"));
        }
        if a[0] == 0 && a[1] < a[2] && b([a[0], a[1], a[2] + 1]) != int(p as i64) * &base {
            return Err((a, "step"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ed(p: u64, a: [u32; 3]) -> ElemDivisors {
        ElemDivisors::new(p, a)
    }

    #[test]
    fn closed_form_examples() {
        for p in [2u64, 3, 5] {
            let k = DensityConstants::new(p);
            assert_eq!(beta_p(&ed(p, [0, 0, 0])), k.c1);
            assert_eq!(beta_p(&ed(p, [0, 0, 1])), int(p as i64) * &k.c2);
            assert_eq!(beta_p(&ed(p, [0, 1, 2])), rat_pow(p, 11) * &k.c3);
            assert_eq!(&k.delta / &k.c1, one_minus_p_pow(p, 5) * one_minus_p_pow(p, 9));
        }
    }

    #[test]
    fn alpha_examples() {
        let p = 3;
        let k = DensityConstants::new(p);
        assert_eq!(alpha_p(&ed(p, [0, 0, 0])), &k.delta / &k.c1);
        assert_eq!(alpha_p(&ed(p, [1, 1, 1])), &k.delta / &k.c1);
        assert_eq!(alpha_p(&ed(p, [0, 0, 1])), rat_pow(p, 9) * &k.delta / (int(3) * &k.c2));
    }

    #[test]
    fn igusa_low_orders() {
        let p = 2;
        let (lhs, rhs) = igusa_series(p, 3).unwrap();
        let k = DensityConstants::new(p);
        assert_eq!(lhs.coeff(0), &k.c1.recip());
        let u1 = (rat_pow(p, -1) + rat_pow(p, -5) + rat_pow(p, -9)) / &k.c1;
        assert_eq!(rhs.coeff(1), &u1);
        assert_eq!(u1, (int(2) * &k.c2).recip());
        assert!(igusa_verify(2, 12).unwrap().ok);
    }

    #[test]
    fn recursions() {
        for p in [2u64, 3, 5] {
            assert_eq!(beta_recursions(p, 6), Ok(()));
        }
        assert_eq!(triples_up_to(1).len(), 4);
    }

    #[test]
    fn group_order_examples() {
        let (m, mp) = group_orders(2, 1);
        assert_eq!(m, &mp * BigInt::from(1));
        let (m3, mp3) = group_orders(3, 1);
        assert_eq!(m3, &mp3 * BigInt::from(2));
        let f = |e: u32| big_pow(2, e) - 1;
        assert_eq!(m, big_pow(2, 36) * f(12) * f(9) * f(8) * f(6) * f(5) * f(2) * f(1));
        let (m2, mp2) = group_orders(2, 2);
        assert_eq!(m2, &m * big_pow(2, 79));
        assert_eq!(mp2, &mp * big_pow(2, 78));
    }

    #[test]
    fn c_times_zetas() {
        assert_eq!(c_zeta_product(), c_zeta_product_expected());
    }

    #[test]
    fn mass_examples() {
        let one = JordanElement::<BigInt>::identity();
        assert_eq!(mass(&one).unwrap(), c_zeta_product_expected());
        let k = DensityConstants::new(2);
        let expect = c_zeta_product_expected() * int(512) * &k.c1 / (int(2) * &k.c2);
        assert_eq!(mass(&JordanElement::diag_i64(1, 1, 2)).unwrap(), expect);
        for m in [2, 3] {
            assert_eq!(mass(&JordanElement::diag_i64(m, m, m)).unwrap(), c_zeta_product_expected());
        }
        assert_eq!(mass(&JordanElement::diag_i64(1, 1, -1)).unwrap_err(), Error::NonPositive);
    }

    #[test]
    fn census_count_matches_c1() {
        assert_eq!(expected_nonsingular_count(2), BigInt::from(64_884_736u64));
        assert_eq!(beta_from_count(2, &expected_nonsingular_count(2)), DensityConstants::new(2).c1);
    }
}
