//! Exact arithmetic kernel: rationals, residue rings, Laurent polynomials,
//! truncated power series, rational functions, formal special values and
//! rational reconstruction.

mod laurent;
mod ratfunc;
mod reconstruct;
mod ring;
mod series;
mod special;
mod zmod;

use num_bigint::BigInt;
use num_traits::One;

pub use laurent::{LaurentPoly, PolyX, Var, VarA, VarB, VarC, VarT, VarU, VarX};
pub use ratfunc::{common_denominator, sum_factor_terms, FactorTerm, RatFunc};
pub use reconstruct::{parse_decimal, rational_reconstruct};
pub use ring::{ConstRing, OrderedRing, Ring};
pub use series::{ratfun_expand, TruncSeries};
pub use special::{bernoulli_numbers, factorial, gamma_half, xi, zeta, Monomial, SpecialValue, Symbol};
pub use zmod::Zmod;

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational literals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p^e` for any integer exponent.
pub fn rat_pow(p: u64, e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

pub fn big_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `"num/den"`, always with an explicit denominator.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Serde adapter writing a rational as `"num/den"`.
pub fn serde_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(q))
}

/// Inverse of [`rational_to_string`]; bare integers are accepted.
pub fn rational_from_string(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rational::new(s.parse().ok()?, BigInt::one())),
    }
}

/// `(1 − p^{-e})`.
pub fn one_minus_p_pow(p: u64, e: i64) -> Rational {
    Rational::one() - rat_pow(p, -e)
}
