//! Complex arithmetic, conversions and `ln Γ` on top of `astro_float`.

use std::sync::OnceLock;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, Sign as BSign};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exactnum::{bernoulli_numbers, Rational};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Largest Stirling index used; `B_{2K}` for `K ≤ KMAX` are cached.
const KMAX: usize = 120;

/// Working precision and constant cache. One per task, so results never
/// depend on which thread computed a constant first.
pub struct Ctx {
    pub p: usize,
    pub cc: Consts,
}

impl Ctx {
    pub fn new(p: usize) -> Self {
        Ctx { p, cc: Consts::new().expect("constant cache allocation") }
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }

    pub fn big(&self, n: &BigInt) -> BigFloat {
        from_bigint(n, self.p)
    }

    pub fn rational(&self, q: &Rational) -> BigFloat {
        self.div(&self.big(q.numer()), &self.big(q.denom()))
    }

    /// `atan2(b, a)`.
    pub fn arg(&mut self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        if a.is_zero() {
            let pi = self.pi();
            let half = self.div(&pi, &self.int(2));
            return if b.is_negative() { half.neg() } else { half };
        }
        let t = self.div(b, a).atan(self.p, RM, &mut self.cc);
        if a.is_positive() {
            t
        } else {
            let pi = self.pi();
            if b.is_negative() {
                self.sub(&t, &pi)
            } else {
                self.add(&t, &pi)
            }
        }
    }
}

/// Exact conversion of an integer; the result carries all its bits.
pub fn from_bigint(n: &BigInt, p: usize) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, p);
    }
    let (s, words) = n.to_u64_digits();
    let ws: Vec<Word> = words.iter().map(|&w| w as Word).collect();
    let sign = if s == BSign::Minus { Sign::Neg } else { Sign::Pos };
    let e = (64 * ws.len()) as astro_float::Exponent;
    BigFloat::from_words(&ws, sign, e)
}

/// The exact rational value of a finite float.
pub fn to_rational(x: &BigFloat) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let words = x.mantissa_digits().expect("finite value");
    let e = i64::from(x.exponent().expect("finite value")) - 64 * words.len() as i64;
    let mut m = BigInt::zero();
    for w in words.iter().rev() {
        m = (m << 64) + BigInt::from(*w);
    }
    if x.is_negative() {
        m = -m;
    }
    if e >= 0 {
        Rational::from_integer(m << e as usize)
    } else {
        Rational::new(m, BigInt::from(1) << (-e) as usize)
    }
}

pub fn to_f64(x: &BigFloat) -> f64 {
    to_rational(x).to_f64().unwrap_or(f64::NAN)
}

/// `log2 |x|`, cheap and approximate; `-inf` for zero.
pub fn log2_abs(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let words = x.mantissa_digits().expect("finite value");
    let top = words[words.len() - 1] as f64 / 2f64.powi(64);
    top.log2() + f64::from(x.exponent().expect("finite value"))
}

/// Scientific notation with `sig` significant digits, rounded to nearest.
pub fn format_sci(q: &Rational, sig: usize) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigInt::from(10);
    let approx = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow10 = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            Rational::new(BigInt::from(1), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    let mut e = approx - 1;
    while pow10(e + 1) <= a {
        e += 1;
    }
    while pow10(e) > a {
        e -= 1;
    }
    let scaled = &a * pow10(sig as i64 - 1 - e);
    let mut digits = scaled.round().to_integer();
    if digits.to_string().len() > sig {
        digits /= 10;
        e += 1;
    }
    let s = digits.to_string();
    let (head, tail) = s.split_at(1);
    let mant = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
    format!("{}{}e{}", if neg { "-" } else { "" }, mant, e)
}

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Complex { re, im }
    }

    pub fn real(c: &Ctx, re: BigFloat) -> Self {
        Complex { re, im: c.int(0) }
    }

    pub fn add(&self, o: &Complex, c: &Ctx) -> Complex {
        Complex::new(c.add(&self.re, &o.re), c.add(&self.im, &o.im))
    }

    pub fn sub(&self, o: &Complex, c: &Ctx) -> Complex {
        Complex::new(c.sub(&self.re, &o.re), c.sub(&self.im, &o.im))
    }

    pub fn mul(&self, o: &Complex, c: &Ctx) -> Complex {
        let re = c.sub(&c.mul(&self.re, &o.re), &c.mul(&self.im, &o.im));
        let im = c.add(&c.mul(&self.re, &o.im), &c.mul(&self.im, &o.re));
        Complex::new(re, im)
    }

    pub fn scale(&self, r: &BigFloat, c: &Ctx) -> Complex {
        Complex::new(c.mul(&self.re, r), c.mul(&self.im, r))
    }

    pub fn norm_sqr(&self, c: &Ctx) -> BigFloat {
        c.add(&c.mul(&self.re, &self.re), &c.mul(&self.im, &self.im))
    }

    pub fn recip(&self, c: &Ctx) -> Complex {
        let n = self.norm_sqr(c);
        Complex::new(c.div(&self.re, &n), c.div(&self.im, &n).neg())
    }

    pub fn div(&self, o: &Complex, c: &Ctx) -> Complex {
        self.mul(&o.recip(c), c)
    }

    /// Principal logarithm.
    pub fn ln(&self, c: &mut Ctx) -> Complex {
        let n = self.norm_sqr(c);
        let l = c.ln(&n);
        let re = c.div(&l, &c.int(2));
        let im = c.arg(&self.re, &self.im);
        Complex::new(re, im)
    }

    pub fn exp(&self, c: &mut Ctx) -> Complex {
        let r = c.exp(&self.re);
        let cos = self.im.cos(c.p, RM, &mut c.cc);
        let sin = self.im.sin(c.p, RM, &mut c.cc);
        Complex::new(c.mul(&r, &cos), c.mul(&r, &sin))
    }
}

fn even_bernoulli() -> &'static [Rational] {
    static B: OnceLock<Vec<Rational>> = OnceLock::new();
    B.get_or_init(|| {
        let all = bernoulli_numbers(2 * KMAX);
        (0..=KMAX).map(|k| all[2 * k].clone()).collect()
    })
}

/// `ln Γ(z)` for `Re z > 0`, up to a multiple of `2πi`.
///
/// Shifts `z` to `|z| ≥ R` with `R ≈ p/4` and applies Stirling's series.
pub fn ln_gamma(z: &Complex, c: &mut Ctx) -> Complex {
    let r = (c.p as f64 / 4.0).max(20.0);
    let re = to_f64(&z.re);
    let shift = if re < r { (r - re).ceil() as i64 } else { 0 };
    let mut prod = Complex::real(c, c.int(1));
    let mut zz = z.clone();
    for _ in 0..shift {
        prod = prod.mul(&zz, c);
        zz = zz.add(&Complex::real(c, c.int(1)), c);
    }
    let half = c.f64(0.5);
    let lnz = zz.ln(c);
    let zm = Complex::new(c.sub(&zz.re, &half), zz.im.clone());
    let pi = c.pi();
    let two_pi = c.mul(&c.int(2), &pi);
    let ln2pi = c.ln(&two_pi);
    let mut acc = zm.mul(&lnz, c).sub(&zz, c);
    acc.re = c.add(&acc.re, &c.mul(&ln2pi, &half));
    let inv = zz.recip(c);
    let inv2 = inv.mul(&inv, c);
    let mut pw = inv;
    let log2_z = 0.5 * (to_f64(&zz.norm_sqr(c))).log2();
    let b = even_bernoulli();
    for (k, bk) in b.iter().enumerate().skip(1) {
        let kk = k as i64;
        let coeff = bk / Rational::from_integer(BigInt::from(2 * kk * (2 * kk - 1)));
        let cf = to_f64_rat(&coeff).abs();
        let mag = cf.log2() - (2 * kk - 1) as f64 * log2_z;
        acc = acc.add(&pw.scale(&c.rational(&coeff), c), c);
        if mag < -(c.p as f64) - 8.0 {
            break;
        }
        assert!(k < KMAX, "Stirling series did not converge");
        pw = pw.mul(&inv2, c);
    }
    if shift > 0 {
        acc = acc.sub(&prod.ln(c), c);
    }
    acc
}

fn to_f64_rat(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::INFINITY)
}

/// Number of bits for `digits` decimal digits plus guard.
pub fn bits_for(digits: u32) -> usize {
    let b = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + 64;
    b.div_ceil(64) * 64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn rational_roundtrip() {
        let c = Ctx::new(256);
        for q in [rat(3, 4), rat(-5, 8), int(1 << 40), int(-7)] {
            assert_eq!(to_rational(&c.rational(&q)), q);
        }
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(to_rational(&c.big(&big)), Rational::from_integer(big));
    }

    #[test]
    fn scientific_format() {
        assert_eq!(format_sci(&rat(2, 3), 5), "6.6667e-1");
        assert_eq!(format_sci(&int(-1234), 2), "-1.2e3");
        assert_eq!(format_sci(&rat(999, 1000), 2), "1.0e0");
    }

    #[test]
    fn gamma_at_integers_and_half() {
        let mut c = Ctx::new(192);
        // Γ(10) = 362880
        let g = ln_gamma(&Complex::real(&c, c.int(10)), &mut c).exp(&mut c);
        let err = to_f64(&c.sub(&g.re, &c.int(362_880))).abs();
        assert!(err < 1e-40, "{err}");
        // Γ(1/2)² = π
        let g = ln_gamma(&Complex::real(&c, c.f64(0.5)), &mut c).exp(&mut c);
        let pi = c.pi();
        let err = to_f64(&c.sub(&c.mul(&g.re, &g.re), &pi)).abs();
        assert!(err < 1e-40, "{err}");
    }

    #[test]
    fn gamma_reflection_on_critical_line() {
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        let mut c = Ctx::new(192);
        let y = c.int(3);
        let g = ln_gamma(&Complex::new(c.f64(0.5), y.clone()), &mut c).exp(&mut c);
        let lhs = g.norm_sqr(&c);
        let pi = c.pi();
        let py = c.mul(&pi, &y);
        let ch = py.cosh(c.p, RM, &mut c.cc);
        let rhs = c.div(&pi, &ch);
        let rel = to_f64(&c.div(&c.sub(&lhs, &rhs), &rhs)).abs();
        assert!(rel < 1e-45, "{rel}");
    }
}
