//! Elementary divisors of Jordan elements over Z_p.
//!
//! A nonsingular `T ∈ J(Z_p)` is equivalent under the structure group to
//! `diag(p^{a1} u1, p^{a2} u2, p^{a3} u3)` with units `u_i`; the sorted
//! exponents classify the orbit. They are computed by explicit reduction in
//! `J(Z/p^N)` with `N = ord_p(det T) + 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cayley::Octonion;
use crate::error::{Error, Result};
use crate::exactnum::{Ring, Zmod};
use crate::jordan::{Generator, JordanElement};
use crate::util::{factorize, ord_p};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ElemDivisors {
    pub p: u64,
    /// Sorted exponents `a1 ≤ a2 ≤ a3`.
    pub a: [u32; 3],
}

impl ElemDivisors {
    pub fn new(p: u64, mut a: [u32; 3]) -> Self {
        a.sort_unstable();
        ElemDivisors { p, a }
    }

    pub fn sum(&self) -> u32 {
        self.a.iter().sum()
    }
}

type Jz = JordanElement<Zmod>;

fn perm_swap(i: usize, k: usize) -> Generator<Zmod> {
    let mut s = [0, 1, 2];
    s.swap(i, k);
    Generator::Perm(s)
}

fn oct_valuation(o: &Octonion<Zmod>, p: u64, cap: u32) -> u32 {
    o.c.iter().map(|x| x.valuation(p, cap)).min().unwrap_or(cap)
}

/// Candidate multipliers for the off-diagonal pivot: the eight basis
/// vectors, then (for p ≤ 5) every nonzero class of o/p·o.
fn pivot_candidates(p: u64, t: &Zmod) -> impl Iterator<Item = Octonion<Zmod>> + '_ {
    let basis = (0..8).map(move |i| Octonion::alpha(i, t));
    let exhaustive_len = if p <= 5 { p.pow(8) } else { 1 };
    let rest = (1..exhaustive_len).map(move |mut n| {
        let mut v = [0i64; 8];
        for d in v.iter_mut() {
            *d = (n % p) as i64;
            n /= p;
        }
        Octonion::from_i64s_like(v, t)
    });
    basis.chain(rest)
}

fn reduce(mut x: Jz, p: u64, n: u32) -> Result<[u32; 3]> {
    let t = x.a.zero_like();
    let mut exps = [0u32; 3];
    for k in 0..3 {
        let diag_val = |x: &Jz, i: usize| x.diag_entry(i).valuation(p, n);
        let off: Vec<(usize, usize)> = [(0, 1), (0, 2), (1, 2)].into_iter().filter(|&(i, _)| i >= k).collect();
        let mu = (k..3)
            .map(|i| diag_val(&x, i))
            .chain(off.iter().map(|&(i, j)| oct_valuation(&x.entry(i, j), p, n)))
            .min()
            .unwrap_or(n);
        if mu >= n {
            return Err(Error::InsufficientPrecision(p, n));
        }
        if k == 2 {
            exps[2] = mu;
            break;
        }
        let pivot = match (k..3).find(|&i| diag_val(&x, i) == mu) {
            Some(i) => i,
            None => {
                let (i, j) = off
                    .iter()
                    .copied()
                    .find(|&(i, j)| oct_valuation(&x.entry(i, j), p, n) == mu)
                    .ok_or(Error::ReductionFailure(p))?;
                let mut found = None;
                for xi in pivot_candidates(p, &t) {
                    let g = Generator::M { xi, i: j, j: i };
                    let (y, _) = g.act(&x)?;
                    if y.diag_entry(i).valuation(p, n) == mu {
                        found = Some(y);
                        break;
                    }
                }
                x = found.ok_or(Error::ReductionFailure(p))?;
                i
            }
        };
        if pivot != k {
            x = perm_swap(pivot, k).act(&x)?.0;
        }
        let pmu = p.pow(mu);
        let u = x.diag_entry(k).div_exact_repr(pmu);
        let uinv = u.try_inverse().ok_or(Error::ReductionFailure(p))?;
        for r in (k + 1)..3 {
            let e = x.entry(k, r);
            let xi = e.map(|c| c.div_exact_repr(pmu).times(&uinv).negate());
            x = Generator::M { xi, i: k, j: r }.act(&x)?.0;
            debug_assert!(x.entry(k, r).is_zero());
        }
        exps[k] = mu;
    }
    exps.sort_unstable();
    Ok(exps)
}

/// Elementary divisors of a nonsingular integral `T` at `p`, working in
/// `Z/p^N` (`N` defaults to `ord_p(det T) + 1`).
pub fn elementary_divisors(t: &JordanElement<BigInt>, p: u64, precision: Option<u32>) -> Result<ElemDivisors> {
    let det = t.det();
    if det == BigInt::from(0) {
        return Err(Error::Singular);
    }
    let ord = ord_p(&det, p);
    let n = precision.unwrap_or(ord + 1);
    let modulus = (p as u128)
        .checked_pow(n)
        .filter(|&m| m <= 1u128 << 63)
        .ok_or_else(|| Error::Domain(format!("working modulus {p}^{n} exceeds 63 bits")))? as u64;
    if n <= ord {
        return Err(Error::InsufficientPrecision(p, n));
    }
    let x = t.map(|c| Zmod::from_bigint(c, modulus));
    let a = reduce(x, p, n)?;
    if a.iter().sum::<u32>() != ord {
        return Err(Error::ReductionFailure(p));
    }
    Ok(ElemDivisors { p, a })
}

/// Elementary divisors at every prime dividing `det T`.
pub fn genus_invariants(t: &JordanElement<BigInt>) -> Result<BTreeMap<u64, ElemDivisors>> {
    let det = t.det();
    let f = factorize(&det)?;
    f.keys().map(|&p| Ok((p, elementary_divisors(t, p, None)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::random_word;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type J = JordanElement<BigInt>;

    fn pw(p: u64, e: u32) -> i64 {
        (p as i64).pow(e)
    }

    #[test]
    fn diagonal_input() {
        for p in [2u64, 3, 5] {
            let t = J::diag_i64(1, pw(p, 1), pw(p, 3));
            assert_eq!(elementary_divisors(&t, p, None).unwrap().a, [0, 1, 3]);
        }
    }

    #[test]
    fn off_diagonal_example() {
        let mut t = J::diag_i64(2, 2, 1);
        t.x = Octonion::e(1, &BigInt::from(0));
        assert_eq!(elementary_divisors(&t, 3, Some(2)).unwrap().a, [0, 0, 1]);
        let g = genus_invariants(&t).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[&3].a, [0, 0, 1]);
    }

    #[test]
    fn genus_examples() {
        assert!(genus_invariants(&J::identity()).unwrap().is_empty());
        let g = genus_invariants(&J::diag_i64(1, 1, 4)).unwrap();
        assert_eq!(g[&2].a, [0, 0, 2]);
    }

    #[test]
    fn precision_errors() {
        let t = J::diag_i64(1, 2, 4);
        assert_eq!(elementary_divisors(&t, 2, Some(3)).unwrap_err(), Error::InsufficientPrecision(2, 3));
        assert_eq!(elementary_divisors(&t, 2, Some(6)).unwrap().a, [0, 1, 2]);
        assert_eq!(elementary_divisors(&J::diag_i64(1, 0, 1), 2, None).unwrap_err(), Error::Singular);
    }

    #[test]
    fn off_diagonal_pivot_needed() {
        // all diagonal entries divisible by p, an off-diagonal unit
        let mut t = J::diag_i64(2, 2, 2);
        t.x = Octonion::alpha(0, &BigInt::from(0));
        let d = elementary_divisors(&t, 2, None).unwrap();
        assert_eq!(d.sum(), crate::util::ord_p(&t.det(), 2));
    }

    #[test]
    fn scrambled_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [2u64, 3, 5] {
            for _ in 0..40 {
                let mut a = [rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4)];
                let t = J::diag_i64(pw(p, a[0]), pw(p, a[1]), pw(p, a[2]));
                let w = random_word(&mut rng, 8, true);
                let (s, nu) = t.apply(&w).unwrap();
                assert_eq!(nu, BigInt::from(1));
                a.sort_unstable();
                assert_eq!(elementary_divisors(&s, p, None).unwrap().a, a);
            }
        }
    }
}
