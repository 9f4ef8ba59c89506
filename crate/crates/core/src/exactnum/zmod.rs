use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Ring;

/// Residue class modulo `modulus` (at most 2^63).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Zmod {
    value: u64,
    modulus: u64,
}

impl Zmod {
    pub fn new(value: i128, modulus: u64) -> Self {
        assert!((1..=1 << 63).contains(&modulus), "modulus out of range");
        let v = value.rem_euclid(modulus as i128) as u64;
        Zmod { value: v, modulus }
    }

    pub fn from_bigint(n: &BigInt, modulus: u64) -> Self {
        let r = n.mod_floor(&BigInt::from(modulus));
        Zmod { value: r.to_u64().expect("residue fits"), modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// p-adic valuation of the canonical representative, capped at `cap`
    /// (zero has valuation `cap`).
    pub fn valuation(&self, p: u64, cap: u32) -> u32 {
        if self.value == 0 {
            return cap;
        }
        let mut v = self.value;
        let mut k = 0;
        while v.is_multiple_of(p) && k < cap {
            v /= p;
            k += 1;
        }
        k
    }

    /// Exact division of the representative by `d`; the caller guarantees `d | value`.
    pub fn div_exact_repr(&self, d: u64) -> Self {
        debug_assert_eq!(self.value % d, 0);
        Zmod { value: self.value / d, modulus: self.modulus }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "ring mismatch: Z/{} vs Z/{}", self.modulus, other.modulus);
    }
}

impl Ring for Zmod {
    fn zero_like(&self) -> Self {
        Zmod { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Zmod::new(1, self.modulus)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Zmod::new(n as i128, self.modulus)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Zmod { value: s as u64, modulus: self.modulus }
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let m = self.modulus as u128;
        let s = (self.value as u128 + m - rhs.value as u128) % m;
        Zmod { value: s as u64, modulus: self.modulus }
    }
    fn times(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Zmod { value: s as u64, modulus: self.modulus }
    }
    fn negate(&self) -> Self {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        Zmod { value: v, modulus: self.modulus }
    }
    fn is_zero_elem(&self) -> bool {
        self.value == 0
    }
    fn try_inverse(&self) -> Option<Self> {
        let e = (self.value as i128).extended_gcd(&(self.modulus as i128));
        if e.gcd != 1 {
            return None;
        }
        Some(Zmod::new(e.x, self.modulus))
    }
    fn half(&self) -> Option<Self> {
        if self.modulus % 2 == 1 {
            let two = Zmod::new(2, self.modulus);
            two.try_inverse().map(|h| self.times(&h))
        } else {
            None
        }
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}
