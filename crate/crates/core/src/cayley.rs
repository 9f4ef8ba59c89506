//! Cayley numbers and their integral order `o`.
//!
//! The e-basis `e_0 = 1, e_1, …, e_7` multiplies by `e_i² = −1`,
//! anticommutativity of distinct imaginary units, and the Fano lines
//! `{i, i+1, i+3}` (indices mod 7 in `1..=7`) with `e_i e_{i+1} = e_{i+3}` and
//! its cyclic shifts. Elements are stored in the integral α-basis
//!
//! ```text
//! α_0 = e_0            α_4 = ½( e_1 + e_2 + e_3 − e_4)
//! α_1 = e_1            α_5 = ½(−e_0 − e_1 − e_4 + e_5)
//! α_2 = e_2            α_6 = ½(−e_0 + e_1 − e_2 + e_6)
//! α_3 = −e_4           α_7 = ½(−e_0 + e_2 + e_4 + e_7)
//! ```
//!
//! whose Z-span is closed under multiplication and has a unimodular trace
//! form (the E8 lattice).

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{ConstRing, Rational, Ring};

/// Twice the e-coordinates of α_0..α_7.
pub const ALPHA_IN_E_DOUBLED: [[i64; 8]; 8] = [
    [2, 0, 0, 0, 0, 0, 0, 0],
    [0, 2, 0, 0, 0, 0, 0, 0],
    [0, 0, 2, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -2, 0, 0, 0],
    [0, 1, 1, 1, -1, 0, 0, 0],
    [-1, -1, 0, 0, -1, 1, 0, 0],
    [-1, 1, -1, 0, 0, 0, 1, 0],
    [-1, 0, 1, 0, 1, 0, 0, 1],
];

/// `Tr(α_i)`.
const TRACE_ALPHA: [i64; 8] = [2, 0, 0, 0, 0, -1, -1, -1];

/// Multiplication data for the α-basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    /// `table[i][j]` = α-coordinates of `α_i α_j`.
    pub table: [[[i64; 8]; 8]; 8],
    /// α-coordinates of `e_0..e_7`.
    pub e_in_alpha: [[i64; 8]; 8],
    nonzero: Vec<(usize, usize, usize, i64)>,
}

/// Signed e-basis products: `e_i e_j = sign · e_k`.
fn e_basis_table() -> [[(i64, usize); 8]; 8] {
    let mut t = [[(0i64, 0usize); 8]; 8];
    for i in 0..8 {
        t[0][i] = (1, i);
        t[i][0] = (1, i);
    }
    for i in 1..8 {
        t[i][i] = (-1, 0);
    }
    let m7 = |x: usize| (x - 1) % 7 + 1;
    for i in 1..8 {
        let (a, b, c) = (i, m7(i + 1), m7(i + 3));
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            t[x][y] = (1, z);
            t[y][x] = (-1, z);
        }
    }
    t
}

fn e_mul(t: &[[(i64, usize); 8]; 8], u: &[Rational; 8], v: &[Rational; 8]) -> [Rational; 8] {
    let mut r: [Rational; 8] = std::array::from_fn(|_| Rational::zero());
    for i in 0..8 {
        for j in 0..8 {
            let (s, k) = t[i][j];
            r[k] += &u[i] * &v[j] * Rational::from_int(s);
        }
    }
    r
}

/// Solve `x · A = b` for the row vector `x`, with `A` the α→e matrix.
fn invert_alpha_matrix() -> [[Rational; 8]; 8] {
    let mut a: Vec<Vec<Rational>> = (0..8)
        .map(|i| {
            let mut row: Vec<Rational> =
                ALPHA_IN_E_DOUBLED[i].iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(2))).collect();
            row.extend((0..8).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..8 {
        let piv = (col..8).find(|&r| !a[r][col].is_zero()).expect("α-basis is a basis");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..8 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    // rows of the right block form A^{-1}; e-coordinate vector v maps to v · A^{-1}
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][8 + j].clone()))
}

fn to_integer(q: &Rational, what: &str) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::OrderNotClosed(format!("{what} has coordinate {q}")));
    }
    q.to_integer().try_into().map_err(|_| Error::OrderNotClosed(format!("{what} overflow")))
}

/// Derive the α-basis multiplication table from the e-basis rules.
pub fn build_structure_constants() -> Result<StructureConstants> {
    let t = e_basis_table();
    let ainv = invert_alpha_matrix();
    let alpha_e: Vec<[Rational; 8]> = (0..8)
        .map(|i| std::array::from_fn(|k| Rational::new(BigInt::from(ALPHA_IN_E_DOUBLED[i][k]), BigInt::from(2))))
        .collect();
    let to_alpha = |v: &[Rational; 8], what: &str| -> Result<[i64; 8]> {
        let mut out = [0i64; 8];
        for (j, o) in out.iter_mut().enumerate() {
            let mut acc = Rational::zero();
            for k in 0..8 {
                acc += &v[k] * &ainv[k][j];
            }
            *o = to_integer(&acc, what)?;
        }
        Ok(out)
    };
    let mut e_in_alpha = [[0i64; 8]; 8];
    for (i, row) in e_in_alpha.iter_mut().enumerate() {
        let v: [Rational; 8] = std::array::from_fn(|k| if k == i { Rational::one() } else { Rational::zero() });
        *row = to_alpha(&v, &format!("e_{i}"))?;
    }
    let mut table = [[[0i64; 8]; 8]; 8];
    let mut nonzero = Vec::new();
    for i in 0..8 {
        for j in 0..8 {
            let prod = e_mul(&t, &alpha_e[i], &alpha_e[j]);
            table[i][j] = to_alpha(&prod, &format!("α_{i}·α_{j}"))?;
            for k in 0..8 {
                if table[i][j][k] != 0 {
                    nonzero.push((i, j, k, table[i][j][k]));
                }
            }
        }
    }
    Ok(StructureConstants { table, e_in_alpha, nonzero })
}

/// Process-wide structure constants.
pub fn structure_constants() -> &'static StructureConstants {
    static SC: OnceLock<StructureConstants> = OnceLock::new();
    SC.get_or_init(|| build_structure_constants().expect("octonion convention is closed"))
}

/// Octonion with coordinates in the α-basis over a coefficient ring.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Octonion<R> {
    pub c: [R; 8],
}

impl<R: Ring> Octonion<R> {
    pub fn from_coords(c: [R; 8]) -> Self {
        Octonion { c }
    }

    pub fn zero_like(t: &R) -> Self {
        Octonion { c: std::array::from_fn(|_| t.zero_like()) }
    }

    /// Integer α-coordinates embedded in the ring of `t`.
    pub fn from_i64s_like(v: [i64; 8], t: &R) -> Self {
        Octonion { c: std::array::from_fn(|i| t.from_i64_like(v[i])) }
    }

    /// `α_i`.
    pub fn alpha(i: usize, t: &R) -> Self {
        let mut v = [0i64; 8];
        v[i] = 1;
        Self::from_i64s_like(v, t)
    }

    /// `e_i`.
    pub fn e(i: usize, t: &R) -> Self {
        Self::from_i64s_like(structure_constants().e_in_alpha[i], t)
    }

    /// `r · e_0`.
    pub fn scalar(r: &R) -> Self {
        let mut o = Self::zero_like(r);
        o.c[0] = r.clone();
        o
    }

    pub fn ring_template(&self) -> &R {
        &self.c[0]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero_elem())
    }

    pub fn add(&self, o: &Self) -> Self {
        Octonion { c: std::array::from_fn(|i| self.c[i].plus(&o.c[i])) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Octonion { c: std::array::from_fn(|i| self.c[i].minus(&o.c[i])) }
    }

    pub fn neg(&self) -> Self {
        Octonion { c: std::array::from_fn(|i| self.c[i].negate()) }
    }

    pub fn scale(&self, r: &R) -> Self {
        Octonion { c: std::array::from_fn(|i| self.c[i].times(r)) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let sc = structure_constants();
        let mut out = Self::zero_like(&self.c[0]);
        for &(i, j, k, n) in &sc.nonzero {
            if self.c[i].is_zero_elem() || o.c[j].is_zero_elem() {
                continue;
            }
            let t = self.c[i].times(&o.c[j]);
            out.c[k] = out.c[k].plus(&t.times_i64(n));
        }
        out
    }

    /// Multiplication with an explicit ring-compatibility check.
    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if !self.c[0].same_ring(&o.c[0]) {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul(o))
    }

    pub fn trace(&self) -> R {
        let mut acc = self.c[0].zero_like();
        for (x, &t) in self.c.iter().zip(TRACE_ALPHA.iter()) {
            if t != 0 {
                acc = acc.plus(&x.times_i64(t));
            }
        }
        acc
    }

    pub fn conj(&self) -> Self {
        let mut out = self.neg();
        out.c[0] = out.c[0].plus(&self.trace());
        out
    }

    /// `N(x) = x x̄`, via the quadratic form of the trace pairing.
    pub fn norm(&self) -> R {
        let g = gram();
        let mut acc = self.c[0].zero_like();
        for i in 0..8 {
            if self.c[i].is_zero_elem() {
                continue;
            }
            acc = acc.plus(&self.c[i].times(&self.c[i]));
            for j in (i + 1)..8 {
                if g[i][j] != 0 && !self.c[j].is_zero_elem() {
                    acc = acc.plus(&self.c[i].times(&self.c[j]).times_i64(g[i][j]));
                }
            }
        }
        acc
    }

    pub fn conj_trace_norm(&self) -> (Self, R, R) {
        (self.conj(), self.trace(), self.norm())
    }

    /// `Tr(x ȳ)`, the bilinear form with `Tr(x x̄) = 2 N(x)`.
    pub fn trace_pairing(&self, o: &Self) -> R {
        let g = gram();
        let mut acc = self.c[0].zero_like();
        for i in 0..8 {
            if self.c[i].is_zero_elem() {
                continue;
            }
            for j in 0..8 {
                if g[i][j] != 0 && !o.c[j].is_zero_elem() {
                    acc = acc.plus(&self.c[i].times(&o.c[j]).times_i64(g[i][j]));
                }
            }
        }
        acc
    }

    /// Twice the e-basis coordinates.
    pub fn e_coords_doubled(&self) -> [R; 8] {
        let mut out: [R; 8] = std::array::from_fn(|_| self.c[0].zero_like());
        for i in 0..8 {
            for k in 0..8 {
                let a = ALPHA_IN_E_DOUBLED[i][k];
                if a != 0 {
                    out[k] = out[k].plus(&self.c[i].times_i64(a));
                }
            }
        }
        out
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> Octonion<S> {
        Octonion { c: std::array::from_fn(|i| f(&self.c[i])) }
    }
}

impl<R: ConstRing> Octonion<R> {
    pub fn zero() -> Self {
        Self::zero_like(&R::zero_elem())
    }

    pub fn one() -> Self {
        Self::alpha(0, &R::zero_elem())
    }

    pub fn from_i64s(v: [i64; 8]) -> Self {
        Self::from_i64s_like(v, &R::zero_elem())
    }
}

/// Gram matrix `G[i][j] = Tr(α_i ᾱ_j)` of the trace pairing.
pub fn trace_pairing_gram() -> [[i64; 8]; 8] {
    let mut g = [[0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let a = Octonion::<BigInt>::alpha(i, &BigInt::zero());
            let b = Octonion::<BigInt>::alpha(j, &BigInt::zero());
            let prod = a.mul(&b.conj_via_table());
            let t: BigInt = prod.c.iter().zip(TRACE_ALPHA.iter()).map(|(c, &t)| c * t).sum();
            *x = i64::try_from(t).expect("small");
        }
    }
    g
}

fn gram() -> &'static [[i64; 8]; 8] {
    static G: OnceLock<[[i64; 8]; 8]> = OnceLock::new();
    G.get_or_init(trace_pairing_gram)
}

impl Octonion<BigInt> {
    /// Conjugation computed from the trace vector alone (used while the Gram matrix is built).
    fn conj_via_table(&self) -> Self {
        let mut tr = BigInt::zero();
        for (x, &t) in self.c.iter().zip(TRACE_ALPHA.iter()) {
            tr += x * t;
        }
        let mut out = self.neg();
        out.c[0] += tr;
        out
    }
}

/// Determinant of a small integer matrix by fraction-free elimination.
pub fn integer_determinant(m: &[[i64; 8]; 8]) -> BigInt {
    let n = 8;
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    type O = Octonion<BigInt>;

    fn e(i: usize) -> O {
        O::e(i, &BigInt::zero())
    }

    #[test]
    fn fano_products() {
        assert_eq!(e(1).mul(&e(2)), e(4));
        assert_eq!(e(1).mul(&e(2).mul(&e(4))), e(0).neg());
        assert_eq!(e(3).mul(&e(3)), e(0).neg());
        assert_eq!(e(1).mul(&e(2)).mul(&e(2)), e(1).neg());
        assert_eq!(e(2).mul(&e(1)), e(4).neg());
    }

    #[test]
    fn alpha_four_norm() {
        let a4 = O::alpha(4, &BigInt::zero());
        assert_eq!(a4.norm(), BigInt::from(1));
        let (c, t, n) = e(5).conj_trace_norm();
        assert_eq!((c, t, n), (e(5).neg(), BigInt::zero(), BigInt::from(1)));
        let (c, t, n) = e(0).conj_trace_norm();
        assert_eq!((c, t, n), (e(0), BigInt::from(2), BigInt::from(1)));
        assert_eq!(O::alpha(5, &BigInt::zero()).norm(), BigInt::from(1));
    }

    #[test]
    fn gram_is_unimodular() {
        let g = trace_pairing_gram();
        assert_eq!(g[0][0], 2);
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(g[i][j], g[j][i]);
            }
        }
        assert_eq!(integer_determinant(&g), BigInt::from(1));
    }

    #[test]
    fn norm_matches_product_with_conjugate() {
        for i in 0..8 {
            for j in 0..8 {
                let x = O::alpha(i, &BigInt::zero()).add(&O::alpha(j, &BigInt::zero()));
                let n = x.mul(&x.conj());
                assert_eq!(n, O::scalar(&x.norm()));
            }
        }
    }

    #[test]
    fn e_coordinates_are_half_integral() {
        let d = O::alpha(6, &BigInt::zero()).e_coords_doubled();
        let want: [BigInt; 8] = std::array::from_fn(|k| BigInt::from(ALPHA_IN_E_DOUBLED[6][k]));
        assert_eq!(d, want);
    }
}
