//! Coefficient rings.
//!
//! [`Ring`] is the interface used by the octonion and Jordan layers. Rings
//! whose elements carry run-time context (residues mod `m`) cannot produce a
//! zero out of nothing, so constructors take an existing element as a
//! template (`zero_like`, `from_i64_like`). Rings without such context also
//! implement [`ConstRing`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn is_zero_elem(&self) -> bool;

    /// Multiplicative inverse, if it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;

    /// `x / 2` when it lies in the ring.
    fn half(&self) -> Option<Self>;

    /// Whether two elements live in the same ring (same modulus for `Z/m`).
    fn same_ring(&self, _other: &Self) -> bool {
        true
    }

    fn times_i64(&self, n: i64) -> Self {
        self.times(&self.from_i64_like(n))
    }
}

pub trait ConstRing: Ring {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_int(n: i64) -> Self;
}

/// Ordered rings, for positivity tests.
pub trait OrderedRing: Ring {
    fn is_positive_elem(&self) -> bool;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
    fn half(&self) -> Option<Self> {
        if self.is_even() {
            Some(self >> 1)
        } else {
            None
        }
    }
}

impl ConstRing for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl OrderedRing for BigInt {
    fn is_positive_elem(&self) -> bool {
        self.is_positive()
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn half(&self) -> Option<Self> {
        Some(self / Rational::from_integer(BigInt::from(2)))
    }
}

impl ConstRing for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl OrderedRing for Rational {
    fn is_positive_elem(&self) -> bool {
        self.is_positive()
    }
}
