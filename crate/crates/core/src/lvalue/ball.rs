//! Midpoint-radius numbers: a binary float with an absolute error bound.

use astro_float::BigFloat;
use serde::Serialize;

use super::mpc::{format_sci, log2_abs, to_f64, to_rational, Ctx};
use crate::exactnum::Rational;

/// `mid ± rad`. The radius is an `f64` upper bound, inflated slightly at
/// every step to absorb its own rounding.
#[derive(Clone, Debug)]
pub struct Ball {
    pub mid: BigFloat,
    pub rad: f64,
}

const INFLATE: f64 = 1.0 + 1e-12;

fn ulp(x: &BigFloat, p: usize) -> f64 {
    let l = log2_abs(x);
    if l == f64::NEG_INFINITY {
        0.0
    } else {
        2f64.powf(l - p as f64 + 1.0)
    }
}

impl Ball {
    pub fn new(mid: BigFloat, rad: f64) -> Self {
        Ball { mid, rad }
    }

    /// A float known to within its last bit.
    pub fn rounded(mid: BigFloat, c: &Ctx) -> Self {
        let rad = ulp(&mid, c.p);
        Ball { mid, rad }
    }

    pub fn abs_f64(&self) -> f64 {
        to_f64(&self.mid).abs()
    }

    pub fn add(&self, o: &Ball, c: &Ctx) -> Ball {
        let mid = c.add(&self.mid, &o.mid);
        let rad = (self.rad + o.rad + ulp(&mid, c.p)) * INFLATE;
        Ball { mid, rad }
    }

    pub fn sub(&self, o: &Ball, c: &Ctx) -> Ball {
        let mid = c.sub(&self.mid, &o.mid);
        let rad = (self.rad + o.rad + ulp(&mid, c.p)) * INFLATE;
        Ball { mid, rad }
    }

    pub fn mul(&self, o: &Ball, c: &Ctx) -> Ball {
        let mid = c.mul(&self.mid, &o.mid);
        let (a, b) = (self.abs_f64(), o.abs_f64());
        let rad = (a * o.rad + b * self.rad + self.rad * o.rad + ulp(&mid, c.p)) * INFLATE;
        Ball { mid, rad }
    }

    /// Division; the radius is infinite when `o` may contain zero.
    pub fn div(&self, o: &Ball, c: &Ctx) -> Ball {
        let mid = c.div(&self.mid, &o.mid);
        let (a, b) = (self.abs_f64(), o.abs_f64());
        let rad = if b <= o.rad {
            f64::INFINITY
        } else {
            ((a * o.rad + b * self.rad) / (b * (b - o.rad)) + ulp(&mid, c.p)) * INFLATE
        };
        Ball { mid, rad }
    }

    pub fn scale(&self, q: &Rational, c: &Ctx) -> Ball {
        let f = Ball::rounded(c.rational(q), c);
        self.mul(&f, c)
    }

    /// Whether the two balls intersect.
    pub fn overlaps(&self, o: &Ball) -> bool {
        let d = to_rational(&self.mid) - to_rational(&o.mid);
        to_f64_rat(&d).abs() <= self.rad + o.rad
    }

    pub fn mid_rational(&self) -> Rational {
        to_rational(&self.mid)
    }

    pub fn to_json(&self, sig: usize) -> BallJson {
        BallJson { value: format_sci(&self.mid_rational(), sig), error_bound: format!("{:.3e}", self.rad) }
    }
}

fn to_f64_rat(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::INFINITY)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallJson {
    pub value: String,
    pub error_bound: String,
}
