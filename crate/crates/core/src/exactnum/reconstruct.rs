use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Parse a decimal literal such as `-0.1428571`, `3`, or `1.5e-7` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let e = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut q = if e >= 0 {
        Rational::from_integer(n * num_traits::pow(ten, e as usize))
    } else {
        Rational::new(n, num_traits::pow(ten, (-e) as usize))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

/// Smallest-denominator continued-fraction convergent `p/q` of `x` with
/// `q <= max_den` and `|x - p/q| < err`, if any.
pub fn rational_reconstruct(x: &Rational, err: &Rational, max_den: &BigInt) -> Option<Rational> {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    loop {
        if den.is_zero() {
            return None;
        }
        let (a, r) = num.div_mod_floor(&den);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > max_den {
            return None;
        }
        let cand = Rational::new(h2.clone(), k2.clone());
        if (x - &cand).abs() < *err {
            return Some(cand);
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        num = den;
        den = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn eps() -> Rational {
        parse_decimal("1e-10").unwrap()
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_decimal("-1.5e2").unwrap(), rat(-150, 1));
        assert_eq!(parse_decimal("7").unwrap(), rat(7, 1));
        assert!(parse_decimal("abc").is_none());
    }

    #[test]
    fn reconstruct_examples() {
        let md = BigInt::from(1_000_000);
        let x = parse_decimal("0.333333333333").unwrap();
        assert_eq!(rational_reconstruct(&x, &eps(), &md), Some(rat(1, 3)));
        let x = parse_decimal("0.142857142857").unwrap();
        assert_eq!(rational_reconstruct(&x, &eps(), &md), Some(rat(1, 7)));
        let x = parse_decimal("0.141592653589").unwrap();
        assert_eq!(rational_reconstruct(&x, &eps(), &BigInt::from(1000)), None);
    }

    #[test]
    fn negative_values() {
        let x = parse_decimal("-2.4285714285714").unwrap();
        assert_eq!(rational_reconstruct(&x, &eps(), &BigInt::from(100)), Some(rat(-17, 7)));
    }
}
