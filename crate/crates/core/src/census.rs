//! Exhaustive rank census of `J(F_2)` and a sampler for `J(F_3)`.
//!
//! An element of `J(F_2)` is packed into 27 bits: `a` = bit 0, `b` = bit 1,
//! `c` = bit 2, then the α-coordinates of `x` (bits 3..11), `y` (bits 11..19)
//! and `z` (bits 19..27), coordinate `i` at the low end.

use std::sync::OnceLock;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::Octonion;
use crate::density::{beta_from_count, expected_nonsingular_count};
use crate::exactnum::{Rational, Zmod};
use crate::jordan::JordanElement;

pub const F2_BITS: u32 = 27;

/// A packed element of `J(F_2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PackedJordanF2(pub u32);

impl PackedJordanF2 {
    pub fn a(self) -> u8 {
        (self.0 & 1) as u8
    }
    pub fn b(self) -> u8 {
        (self.0 >> 1 & 1) as u8
    }
    pub fn c(self) -> u8 {
        (self.0 >> 2 & 1) as u8
    }
    pub fn x(self) -> u8 {
        (self.0 >> 3) as u8
    }
    pub fn y(self) -> u8 {
        (self.0 >> 11) as u8
    }
    pub fn z(self) -> u8 {
        (self.0 >> 19) as u8
    }

    pub fn pack(a: u8, b: u8, c: u8, x: u8, y: u8, z: u8) -> Self {
        PackedJordanF2(
            u32::from(a & 1)
                | u32::from(b & 1) << 1
                | u32::from(c & 1) << 2
                | u32::from(x) << 3
                | u32::from(y) << 11
                | u32::from(z) << 19,
        )
    }

    pub fn to_jordan(self) -> JordanElement<Zmod> {
        let r = |v: u8| Zmod::new(i128::from(v), 2);
        let o = |v: u8| Octonion::from_coords(std::array::from_fn(|i| r(v >> i & 1)));
        JordanElement::new(r(self.a()), r(self.b()), r(self.c()), o(self.x()), o(self.y()), o(self.z()))
    }

    /// Rank in `{0, 1, 2, 3}`: 3 if `det ≠ 0`, 0 if zero, 1 if `X × X = 0`.
    pub fn rank(self) -> u8 {
        let t = tables();
        let (a, b, c) = (self.a(), self.b(), self.c());
        let (x, y, z) = (self.x() as usize, self.y() as usize, self.z() as usize);
        let det = (a & b & c) ^ (a & t.norm[z]) ^ (b & t.norm[y]) ^ (c & t.norm[x]) ^ t.pair(t.mul(x, z), y);
        if det == 1 {
            3
        } else if self.0 == 0 {
            0
        } else if t.adjoint_vanishes(a, b, c, x, y, z) {
            1
        } else {
            2
        }
    }
}

/// Octonion arithmetic on bytes (α-coordinates mod 2).
struct F2Tables {
    mul: Vec<u8>,
    conj: [u8; 256],
    norm: [u8; 256],
    /// `gram[v]` = the vector `G v`, so `Tr(u v̄) = parity(u & G v)`.
    gram: [u8; 256],
}

impl F2Tables {
    fn mul(&self, u: usize, v: usize) -> usize {
        self.mul[u << 8 | v] as usize
    }

    fn pair(&self, u: usize, v: usize) -> u8 {
        ((u as u8 & self.gram[v]).count_ones() & 1) as u8
    }

    fn adjoint_vanishes(&self, a: u8, b: u8, c: u8, x: usize, y: usize, z: usize) -> bool {
        let sel = |bit: u8, v: usize| if bit == 1 { v } else { 0 };
        (b & c) == self.norm[z]
            && (a & c) == self.norm[y]
            && (a & b) == self.norm[x]
            && self.mul(y, self.conj[z] as usize) == sel(c, x)
            && self.mul(x, z) == sel(b, y)
            && self.mul(self.conj[x] as usize, y) == sel(a, z)
    }
}

fn oct(v: usize) -> Octonion<Zmod> {
    Octonion::from_coords(std::array::from_fn(|i| Zmod::new((v >> i & 1) as i128, 2)))
}

fn byte(o: &Octonion<Zmod>) -> u8 {
    o.c.iter().enumerate().fold(0u8, |acc, (i, r)| acc | ((r.value() as u8) << i))
}

fn tables() -> &'static F2Tables {
    static T: OnceLock<F2Tables> = OnceLock::new();
    T.get_or_init(|| {
        let basis: Vec<Octonion<Zmod>> = (0..8).map(|i| oct(1 << i)).collect();
        let mut mul = vec![0u8; 1 << 16];
        // Bilinear: products of basis vectors, then XOR.
        let mut bb = [[0u8; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                bb[i][j] = byte(&basis[i].mul(&basis[j]));
            }
        }
        for u in 0..256usize {
            for v in 0..256usize {
                let mut acc = 0u8;
                for i in (0..8).filter(|i| u >> i & 1 == 1) {
                    for j in (0..8).filter(|j| v >> j & 1 == 1) {
                        acc ^= bb[i][j];
                    }
                }
                mul[u << 8 | v] = acc;
            }
        }
        let mut gram = [0u8; 256];
        let mut g_cols = [0u8; 8];
        for j in 0..8 {
            g_cols[j] = (0..8).fold(0u8, |acc, i| acc | ((basis[i].trace_pairing(&basis[j]).value() as u8) << i));
        }
        for v in 0..256usize {
            gram[v] = (0..8).filter(|j| v >> j & 1 == 1).fold(0u8, |acc, j| acc ^ g_cols[j]);
        }
        let conj = std::array::from_fn(|v| byte(&oct(v).conj()));
        let norm = std::array::from_fn(|v| oct(v).norm().value() as u8);
        F2Tables { mul, conj, norm, gram }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusCounts {
    pub rank0: u64,
    pub rank1: u64,
    pub rank2: u64,
    pub rank3: u64,
    pub total: u64,
}

/// Rank strata of all `2^27` elements, split across `threads` workers by the
/// top byte (`z`). The result does not depend on `threads`.
pub fn census_f2(threads: usize) -> CensusCounts {
    let t = tables();
    let threads = threads.clamp(1, 256);
    let chunks: Vec<(usize, usize)> = (0..threads).map(|i| (256 * i / threads, 256 * (i + 1) / threads)).collect();
    let partial: Vec<[u64; 4]> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|&(lo, hi)| {
                s.spawn(move || {
                    let mut cnt = [0u64; 4];
                    for z in lo..hi {
                        for y in 0..256usize {
                            for x in 0..256usize {
                                let pxz = t.pair(t.mul(x, z), y);
                                let (nx, ny, nz) = (t.norm[x], t.norm[y], t.norm[z]);
                                for abc in 0..8u8 {
                                    let (a, b, c) = (abc & 1, abc >> 1 & 1, abc >> 2 & 1);
                                    let det = (a & b & c) ^ (a & nz) ^ (b & ny) ^ (c & nx) ^ pxz;
                                    let r = if det == 1 {
                                        3
                                    } else if abc == 0 && x == 0 && y == 0 && z == 0 {
                                        0
                                    } else if t.adjoint_vanishes(a, b, c, x, y, z) {
                                        1
                                    } else {
                                        2
                                    };
                                    cnt[r] += 1;
                                }
                            }
                        }
                    }
                    cnt
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("census worker")).collect()
    });
    let mut c = [0u64; 4];
    for p in partial {
        for i in 0..4 {
            c[i] += p[i];
        }
    }
    CensusCounts { rank0: c[0], rank1: c[1], rank2: c[2], rank3: c[3], total: c.iter().sum() }
}

/// `β_2(1_3)` recovered from the number of nonsingular elements.
pub fn beta_from_census(counts: &CensusCounts) -> Rational {
    beta_from_count(2, &BigInt::from(counts.rank3))
}

/// `(q^{12} − 1)(q^9 − 1)/(q^4 − 1)`, the number of nonzero `X` with
/// `X × X = 0`: `q − 1` times the number of `F_q`-points of the Cayley plane.
pub fn expected_rank1_count(q: u64) -> u64 {
    (q.pow(12) - 1) * (q.pow(9) - 1) / (q.pow(4) - 1)
}

/// Compare the packed rank with the generic Jordan arithmetic over `Z/2` on
/// `samples` random indices; returns the first disagreeing index.
pub fn spot_check_f2(samples: usize, seed: u64) -> Option<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| rng.gen_range(0..1u32 << F2_BITS)).find(|&i| {
        let e = PackedJordanF2(i);
        let j = e.to_jordan();
        let generic = if j.det().value() == 1 {
            3
        } else if j.is_zero() {
            0
        } else if j.adjoint().is_zero() {
            1
        } else {
            2
        };
        generic != e.rank()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub p: u64,
    pub samples: u64,
    pub nonsingular: u64,
    pub estimate: f64,
    /// 99.9% Wilson interval.
    pub ci: (f64, f64),
    /// `(1 − p⁻¹)(1 − p⁻⁵)(1 − p⁻⁹)`.
    pub expected: f64,
    pub within: bool,
}

/// Fraction of nonsingular elements of `J(F_3)` from uniform samples.
pub fn sample_f3(samples: u64, seed: u64, threads: usize) -> SampleReport {
    let p = 3u64;
    let threads = threads.max(1) as u64;
    let count: u64 = std::thread::scope(|s| {
        let hs: Vec<_> = (0..threads)
            .map(|i| {
                s.spawn(move || {
                    let n = samples * (i + 1) / threads - samples * i / threads;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
                    let mut hits = 0u64;
                    for _ in 0..n {
                        let mut r = || Zmod::new(rng.gen_range(0..3), p);
                        let (a, b, c) = (r(), r(), r());
                        let mut o =
                            || Octonion::from_coords(std::array::from_fn(|_| Zmod::new(rng.gen_range(0..3), p)));
                        let (x, y, z) = (o(), o(), o());
                        if JordanElement::new(a, b, c, x, y, z).det().value() != 0 {
                            hits += 1;
                        }
                    }
                    hits
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().expect("sampler worker")).sum()
    });
    let n = samples as f64;
    let est = count as f64 / n;
    let zq = 3.29;
    let den = 1.0 + zq * zq / n;
    let centre = (est + zq * zq / (2.0 * n)) / den;
    let half = zq * (est * (1.0 - est) / n + zq * zq / (4.0 * n * n)).sqrt() / den;
    let ci = (centre - half, centre + half);
    let pf = p as f64;
    let expected = (1.0 - 1.0 / pf) * (1.0 - pf.powi(-5)) * (1.0 - pf.powi(-9));
    SampleReport {
        p,
        samples,
        nonsingular: count,
        estimate: est,
        ci,
        expected,
        within: ci.0 <= expected && expected <= ci.1,
    }
}

/// `2^{12}(2−1)(2^5−1)(2^9−1)`.
pub fn expected_rank3_f2() -> u64 {
    use num_traits::ToPrimitive;
    expected_nonsingular_count(2).to_u64().expect("fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_roundtrip() {
        let e = PackedJordanF2::pack(1, 0, 1, 0xA5, 0x3C, 0xFF);
        assert_eq!((e.a(), e.b(), e.c(), e.x(), e.y(), e.z()), (1, 0, 1, 0xA5, 0x3C, 0xFF));
        assert!(e.0 < 1 << F2_BITS);
    }

    #[test]
    fn small_ranks() {
        assert_eq!(PackedJordanF2(0).rank(), 0);
        assert_eq!(PackedJordanF2::pack(1, 1, 1, 0, 0, 0).rank(), 3);
        assert_eq!(PackedJordanF2::pack(1, 0, 0, 0, 0, 0).rank(), 1);
        assert_eq!(PackedJordanF2::pack(1, 1, 0, 0, 0, 0).rank(), 2);
    }

    #[test]
    fn packed_agrees_with_generic() {
        assert_eq!(spot_check_f2(20_000, 7), None);
    }

    #[test]
    fn sampler_f3() {
        let r = sample_f3(20_000, 11, 4);
        assert!(r.within, "{r:?}");
    }

    #[test]
    fn full_census_f2() {
        let c = census_f2(8);
        assert_eq!(c.total, 1 << 27);
        assert_eq!(c.rank0, 1);
        assert_eq!(c.rank3, expected_rank3_f2());
        assert_eq!(c.rank3, 64_884_736);
        assert_eq!(c.rank1, expected_rank1_count(2));
        assert_eq!(beta_from_census(&c), crate::density::DensityConstants::new(2).c1);
        assert_eq!(census_f2(3), c);
    }
}
