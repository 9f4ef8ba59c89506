//! The exceptional Jordan algebra of Hermitian 3×3 octonion matrices
//!
//! ```text
//!     ⎛ a  x  y ⎞
//! X = ⎜ x̄  b  z ⎟
//!     ⎝ ȳ  z̄  c ⎠
//! ```
//!
//! with entries in a coefficient ring `R` and octonions in the integral order.

use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cayley::Octonion;
use crate::error::{Error, Result};
use crate::exactnum::{ConstRing, OrderedRing, Ring};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct JordanElement<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub x: Octonion<R>,
    pub y: Octonion<R>,
    pub z: Octonion<R>,
}

type Matrix<R> = [[Octonion<R>; 3]; 3];

impl<R: Ring> JordanElement<R> {
    pub fn new(a: R, b: R, c: R, x: Octonion<R>, y: Octonion<R>, z: Octonion<R>) -> Self {
        JordanElement { a, b, c, x, y, z }
    }

    pub fn diag(a: R, b: R, c: R) -> Self {
        let o = Octonion::zero_like(&a);
        JordanElement { x: o.clone(), y: o.clone(), z: o, a, b, c }
    }

    pub fn identity_like(t: &R) -> Self {
        Self::diag(t.one_like(), t.one_like(), t.one_like())
    }

    pub fn zero_like(t: &R) -> Self {
        Self::diag(t.zero_like(), t.zero_like(), t.zero_like())
    }

    pub fn template(&self) -> &R {
        &self.a
    }

    pub fn same_ring(&self, o: &Self) -> bool {
        self.a.same_ring(&o.a)
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> JordanElement<S> {
        JordanElement {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            x: self.x.map(&f),
            y: self.y.map(&f),
            z: self.z.map(&f),
        }
    }

    /// The 27 coordinates: a, b, c, then the α-coordinates of x, y, z.
    pub fn coords(&self) -> Vec<&R> {
        let mut v = vec![&self.a, &self.b, &self.c];
        v.extend(self.x.c.iter());
        v.extend(self.y.c.iter());
        v.extend(self.z.c.iter());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|x| x.is_zero_elem())
    }

    pub fn add(&self, o: &Self) -> Self {
        JordanElement {
            a: self.a.plus(&o.a),
            b: self.b.plus(&o.b),
            c: self.c.plus(&o.c),
            x: self.x.add(&o.x),
            y: self.y.add(&o.y),
            z: self.z.add(&o.z),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&self.a.from_i64_like(-1)))
    }

    pub fn scale(&self, r: &R) -> Self {
        JordanElement {
            a: self.a.times(r),
            b: self.b.times(r),
            c: self.c.times(r),
            x: self.x.scale(r),
            y: self.y.scale(r),
            z: self.z.scale(r),
        }
    }

    pub fn trace(&self) -> R {
        self.a.plus(&self.b).plus(&self.c)
    }

    /// `abc − aN(z) − bN(y) − cN(x) + Tr((xz)ȳ)`.
    pub fn det(&self) -> R {
        let abc = self.a.times(&self.b).times(&self.c);
        let t = self.x.mul(&self.z).trace_pairing(&self.y);
        abc.minus(&self.a.times(&self.z.norm()))
            .minus(&self.b.times(&self.y.norm()))
            .minus(&self.c.times(&self.x.norm()))
            .plus(&t)
    }

    /// `X × X`, integral over any ring.
    pub fn adjoint(&self) -> Self {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (x, y, z) = (&self.x, &self.y, &self.z);
        JordanElement {
            a: b.times(c).minus(&z.norm()),
            b: a.times(c).minus(&y.norm()),
            c: a.times(b).minus(&x.norm()),
            x: y.mul(&z.conj()).sub(&x.scale(c)),
            y: x.mul(z).sub(&y.scale(b)),
            z: x.conj().mul(y).sub(&z.scale(a)),
        }
    }

    /// `2 (X × Y)`, the polarization of the adjoint without the final halving.
    fn cross_doubled(&self, o: &Self) -> Self {
        let (a1, b1, c1, x1, y1, z1) = (&self.a, &self.b, &self.c, &self.x, &self.y, &self.z);
        let (a2, b2, c2, x2, y2, z2) = (&o.a, &o.b, &o.c, &o.x, &o.y, &o.z);
        JordanElement {
            a: b1.times(c2).plus(&b2.times(c1)).minus(&z1.trace_pairing(z2)),
            b: a1.times(c2).plus(&a2.times(c1)).minus(&y1.trace_pairing(y2)),
            c: a1.times(b2).plus(&a2.times(b1)).minus(&x1.trace_pairing(x2)),
            x: y1.mul(&z2.conj()).add(&y2.mul(&z1.conj())).sub(&x2.scale(c1)).sub(&x1.scale(c2)),
            y: x1.mul(z2).add(&x2.mul(z1)).sub(&y2.scale(b1)).sub(&y1.scale(b2)),
            z: x1.conj().mul(y2).add(&x2.conj().mul(y1)).sub(&z2.scale(a1)).sub(&z1.scale(a2)),
        }
    }

    /// Freudenthal cross product `X × Y`. Mixed products need `1/2` in the ring
    /// unless the result happens to be integral.
    pub fn cross(&self, o: &Self) -> Result<Self> {
        if !self.same_ring(o) {
            return Err(Error::RingMismatch);
        }
        if self == o {
            return Ok(self.adjoint());
        }
        halve(&self.cross_doubled(o))
    }

    /// `(X, Y) = Σ diagonal products + Tr(x₁x̄₂) + Tr(y₁ȳ₂) + Tr(z₁z̄₂)`.
    pub fn inner(&self, o: &Self) -> R {
        self.a
            .times(&o.a)
            .plus(&self.b.times(&o.b))
            .plus(&self.c.times(&o.c))
            .plus(&self.x.trace_pairing(&o.x))
            .plus(&self.y.trace_pairing(&o.y))
            .plus(&self.z.trace_pairing(&o.z))
    }

    pub fn to_matrix(&self) -> Matrix<R> {
        let s = |r: &R| Octonion::scalar(r);
        [
            [s(&self.a), self.x.clone(), self.y.clone()],
            [self.x.conj(), s(&self.b), self.z.clone()],
            [self.y.conj(), self.z.conj(), s(&self.c)],
        ]
    }

    /// Read back a Hermitian matrix; diagonal entries must be scalars.
    pub fn from_matrix(m: &Matrix<R>) -> Result<Self> {
        let scalar = |o: &Octonion<R>| -> Result<R> {
            if o.c[1..].iter().all(|x| x.is_zero_elem()) {
                Ok(o.c[0].clone())
            } else {
                Err(Error::Domain("non-scalar diagonal entry".into()))
            }
        };
        Ok(JordanElement {
            a: scalar(&m[0][0])?,
            b: scalar(&m[1][1])?,
            c: scalar(&m[2][2])?,
            x: m[0][1].clone(),
            y: m[0][2].clone(),
            z: m[1][2].clone(),
        })
    }

    /// Octonion entry at `(r, c)` (0-based), with the Hermitian convention.
    pub fn entry(&self, r: usize, c: usize) -> Octonion<R> {
        self.to_matrix()[r][c].clone()
    }

    pub fn diag_entry(&self, i: usize) -> &R {
        match i {
            0 => &self.a,
            1 => &self.b,
            _ => &self.c,
        }
    }

    /// `X ∘ Y = ½(XY + YX)` with ordinary octonion matrix products.
    pub fn circ(&self, o: &Self) -> Result<Self> {
        if !self.same_ring(o) {
            return Err(Error::RingMismatch);
        }
        let (m1, m2) = (self.to_matrix(), o.to_matrix());
        let prod = |p: &Matrix<R>, q: &Matrix<R>, r: usize, c: usize| {
            (0..3).fold(Octonion::zero_like(&self.a), |acc, k| acc.add(&p[r][k].mul(&q[k][c])))
        };
        let sum: Matrix<R> =
            std::array::from_fn(|r| std::array::from_fn(|c| prod(&m1, &m2, r, c).add(&prod(&m2, &m1, r, c))));
        halve(&Self::from_matrix(&sum)?)
    }

    /// Apply the generators left to right; returns the image and the multiplier ν.
    pub fn apply(&self, word: &[Generator<R>]) -> Result<(Self, R)> {
        let mut x = self.clone();
        let mut nu = self.a.one_like();
        for g in word {
            let (y, n) = g.act(&x)?;
            x = y;
            nu = nu.times(&n);
        }
        Ok((x, nu))
    }
}

fn halve<R: Ring>(x: &JordanElement<R>) -> Result<JordanElement<R>> {
    let h = |r: &R| r.half().ok_or(Error::RequiresHalfIntegralRing);
    let ho = |o: &Octonion<R>| -> Result<Octonion<R>> {
        let mut out = o.clone();
        for (d, s) in out.c.iter_mut().zip(o.c.iter()) {
            *d = h(s)?;
        }
        Ok(out)
    };
    Ok(JordanElement { a: h(&x.a)?, b: h(&x.b)?, c: h(&x.c)?, x: ho(&x.x)?, y: ho(&x.y)?, z: ho(&x.z)? })
}

impl<R: ConstRing> JordanElement<R> {
    pub fn identity() -> Self {
        Self::identity_like(&R::zero_elem())
    }

    pub fn diag_i64(a: i64, b: i64, c: i64) -> Self {
        Self::diag(R::from_int(a), R::from_int(b), R::from_int(c))
    }
}

impl<R: OrderedRing> JordanElement<R> {
    /// Leading-minor test: `a > 0`, `ab − N(x) > 0`, `det X > 0`.
    pub fn is_positive(&self) -> bool {
        self.a.is_positive_elem()
            && self.a.times(&self.b).minus(&self.x.norm()).is_positive_elem()
            && self.det().is_positive_elem()
    }
}

/// One generator of the structure group action on `J`.
#[derive(Clone, PartialEq, Debug)]
pub enum Generator<R> {
    /// `γ(ε)`: `(εa, εb, ε⁻¹c; εx, y, z)`, multiplier ε.
    Gamma(R),
    /// `m_{ξ e_ij}`: `X ↦ (1 + ξ̄ e_ji) X (1 + ξ e_ij)`, 0-based `i ≠ j`, multiplier 1.
    M { xi: Octonion<R>, i: usize, j: usize },
    /// `θ(r)`: `X_rc ↦ r_r r_c X_rc`, multiplier `(r₁r₂r₃)²`.
    Theta([R; 3]),
    /// Simultaneous row/column permutation `X'_rc = X_σ(r)σ(c)`, multiplier 1.
    Perm([usize; 3]),
}

pub type GeneratorWord<R> = Vec<Generator<R>>;

impl<R: Ring> Generator<R> {
    pub fn act(&self, x: &JordanElement<R>) -> Result<(JordanElement<R>, R)> {
        let one = x.a.one_like();
        match self {
            Generator::Gamma(e) => {
                let inv = e.try_inverse().ok_or_else(|| Error::NonInvertible(format!("{e:?}")))?;
                let out = JordanElement {
                    a: x.a.times(e),
                    b: x.b.times(e),
                    c: x.c.times(&inv),
                    x: x.x.scale(e),
                    y: x.y.clone(),
                    z: x.z.clone(),
                };
                Ok((out, e.clone()))
            }
            Generator::M { xi, i, j } => {
                let (i, j) = (*i, *j);
                if i == j || i > 2 || j > 2 {
                    return Err(Error::Domain(format!("bad index pair ({i},{j})")));
                }
                let m = x.to_matrix();
                let xib = xi.conj();
                let nxi = xi.norm();
                let out: Matrix<R> = std::array::from_fn(|r| {
                    std::array::from_fn(|c| {
                        let mut e = m[r][c].clone();
                        if r == j {
                            e = e.add(&xib.mul(&m[i][c]));
                        }
                        if c == j {
                            e = e.add(&m[r][i].mul(xi));
                        }
                        if r == j && c == j {
                            e = e.add(&m[i][i].scale(&nxi));
                        }
                        e
                    })
                });
                Ok((JordanElement::from_matrix(&out)?, one))
            }
            Generator::Theta(r) => {
                for ri in r {
                    if ri.try_inverse().is_none() {
                        return Err(Error::NonInvertible(format!("{ri:?}")));
                    }
                }
                let out = JordanElement {
                    a: x.a.times(&r[0]).times(&r[0]),
                    b: x.b.times(&r[1]).times(&r[1]),
                    c: x.c.times(&r[2]).times(&r[2]),
                    x: x.x.scale(&r[0].times(&r[1])),
                    y: x.y.scale(&r[0].times(&r[2])),
                    z: x.z.scale(&r[1].times(&r[2])),
                };
                let prod = r[0].times(&r[1]).times(&r[2]);
                Ok((out, prod.times(&prod)))
            }
            Generator::Perm(s) => {
                let mut seen = [false; 3];
                for &k in s {
                    if k > 2 || seen[k] {
                        return Err(Error::Domain(format!("not a permutation: {s:?}")));
                    }
                    seen[k] = true;
                }
                let m = x.to_matrix();
                let out: Matrix<R> = std::array::from_fn(|r| std::array::from_fn(|c| m[s[r]][s[c]].clone()));
                Ok((JordanElement::from_matrix(&out)?, one))
            }
        }
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> Generator<S> {
        match self {
            Generator::Gamma(e) => Generator::Gamma(f(e)),
            Generator::M { xi, i, j } => Generator::M { xi: xi.map(&f), i: *i, j: *j },
            Generator::Theta(r) => Generator::Theta(std::array::from_fn(|k| f(&r[k]))),
            Generator::Perm(s) => Generator::Perm(*s),
        }
    }
}

/// `apply_generator(w, X)`.
pub fn apply_generator<R: Ring>(w: &[Generator<R>], x: &JordanElement<R>) -> Result<(JordanElement<R>, R)> {
    x.apply(w)
}

/// Random octonion with α-coordinates in `[-bound, bound]`.
pub fn random_octonion<G: rand::Rng>(rng: &mut G, bound: i64) -> Octonion<BigInt> {
    Octonion::from_i64s(std::array::from_fn(|_| rng.gen_range(-bound..=bound)))
}

pub fn random_element<G: rand::Rng>(rng: &mut G, bound: i64) -> JordanElement<BigInt> {
    JordanElement {
        a: BigInt::from(rng.gen_range(-bound..=bound)),
        b: BigInt::from(rng.gen_range(-bound..=bound)),
        c: BigInt::from(rng.gen_range(-bound..=bound)),
        x: random_octonion(rng, bound),
        y: random_octonion(rng, bound),
        z: random_octonion(rng, bound),
    }
}

/// Random word over Z. With `unimodular` set every token has multiplier 1;
/// otherwise `γ(−1)` (multiplier −1) may occur.
pub fn random_word<G: rand::Rng>(rng: &mut G, len: usize, unimodular: bool) -> GeneratorWord<BigInt> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let sign = |rng: &mut G| BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
    (0..len)
        .map(|_| match rng.gen_range(0..4) {
            0 if !unimodular => Generator::Gamma(sign(rng)),
            0 | 1 => {
                let i = rng.gen_range(0..3);
                let j = (i + rng.gen_range(1..3)) % 3;
                Generator::M { xi: random_octonion(rng, 1), i, j }
            }
            2 => Generator::Theta([sign(rng), sign(rng), sign(rng)]),
            _ => Generator::Perm(PERMS[rng.gen_range(0..6)]),
        })
        .collect()
}

/// Wire format: `{"diag":[a,b,c],"x":[8 ints],"y":[8 ints],"z":[8 ints]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JordanJson {
    pub diag: [serde_json_int::Int; 3],
    pub x: [serde_json_int::Int; 8],
    pub y: [serde_json_int::Int; 8],
    pub z: [serde_json_int::Int; 8],
}

/// Integers on the wire: JSON numbers or decimal strings (for large values).
pub mod serde_json_int {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Clone, Debug, PartialEq)]
    pub struct Int(pub BigInt);

    impl Serialize for Int {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            match i64::try_from(&self.0) {
                Ok(v) => s.serialize_i64(v),
                Err(_) => s.serialize_str(&self.0.to_string()),
            }
        }
    }

    impl<'de> Deserialize<'de> for Int {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            #[derive(Deserialize)]
            #[serde(untagged)]
            enum Raw {
                I(i64),
                S(String),
            }
            match Raw::deserialize(d)? {
                Raw::I(v) => Ok(Int(BigInt::from(v))),
                Raw::S(s) => s.trim().parse().map(Int).map_err(serde::de::Error::custom),
            }
        }
    }
}

impl From<&JordanJson> for JordanElement<BigInt> {
    fn from(j: &JordanJson) -> Self {
        let o = |v: &[serde_json_int::Int; 8]| Octonion::from_coords(std::array::from_fn(|i| v[i].0.clone()));
        JordanElement {
            a: j.diag[0].0.clone(),
            b: j.diag[1].0.clone(),
            c: j.diag[2].0.clone(),
            x: o(&j.x),
            y: o(&j.y),
            z: o(&j.z),
        }
    }
}

impl From<&JordanElement<BigInt>> for JordanJson {
    fn from(t: &JordanElement<BigInt>) -> Self {
        use serde_json_int::Int;
        let o = |v: &Octonion<BigInt>| std::array::from_fn(|i| Int(v.c[i].clone()));
        JordanJson { diag: [Int(t.a.clone()), Int(t.b.clone()), Int(t.c.clone())], x: o(&t.x), y: o(&t.y), z: o(&t.z) }
    }
}

/// Small-integer view used for diagnostics.
pub fn to_i64_coords(t: &JordanElement<BigInt>) -> Option<Vec<i64>> {
    t.coords().into_iter().map(|x| x.to_i64()).collect()
}

pub fn is_nonsingular(t: &JordanElement<BigInt>) -> bool {
    !t.det().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type J = JordanElement<BigInt>;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn example() -> J {
        let mut t = J::diag_i64(2, 2, 1);
        t.x = Octonion::e(1, &big(0));
        t
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(J::identity().det(), big(1));
        assert_eq!(example().det(), big(3));
        assert_eq!(J::diag_i64(4, 8, 32).det(), big(1024));
    }

    #[test]
    fn cross_examples() {
        let d = J::diag_i64(2, 3, 5);
        assert_eq!(d.adjoint(), J::diag_i64(15, 10, 6));
        assert_eq!(J::identity().adjoint(), J::identity());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = random_element(&mut rng, 3);
            let xx = x.adjoint();
            assert_eq!(xx.adjoint(), x.scale(&x.det()));
        }
    }

    #[test]
    fn mixed_cross_over_z_errors_when_odd() {
        let a = J::diag_i64(1, 0, 0);
        let b = J::diag_i64(0, 1, 0);
        assert_eq!(a.cross(&b).unwrap_err(), Error::RequiresHalfIntegralRing);
        let c = J::diag_i64(0, 2, 0);
        assert_eq!(a.cross(&c).unwrap(), J::diag_i64(0, 0, 1));
    }

    #[test]
    fn circ_unit() {
        let x = example();
        assert_eq!(x.circ(&J::identity()).unwrap(), x);
        assert_eq!(J::identity().circ(&J::identity()).unwrap(), J::identity());
        assert_eq!(J::identity().circ(&J::identity()).unwrap().trace(), big(3));
    }

    #[test]
    fn generator_examples() {
        let d = J::diag_i64(2, 3, 5);
        let (g, nu) = d.apply(&[Generator::Gamma(big(-1))]).unwrap();
        assert_eq!((g, nu), (J::diag_i64(-2, -3, -5), big(-1)));
        let xi = Octonion::alpha(4, &big(0));
        let (m, nu) = d.apply(&[Generator::M { xi: xi.clone(), i: 1, j: 0 }]).unwrap();
        assert_eq!(nu, big(1));
        assert_eq!(m.a, big(2) + big(3) * xi.norm());
        let (t, nu) = J::identity().apply(&[Generator::Theta([big(1), big(-1), big(1)])]).unwrap();
        assert_eq!((t, nu), (J::identity(), big(1)));
        assert!(d.apply(&[Generator::Gamma(big(2))]).is_err());
    }

    #[test]
    fn transpositions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_element(&mut rng, 4);
        let (s12, _) = x.apply(&[Generator::Perm([1, 0, 2])]).unwrap();
        assert_eq!(s12.a, x.b);
        assert_eq!(s12.x, x.x.conj());
        assert_eq!(s12.y, x.z);
        assert_eq!(s12.z, x.y);
        let (s23, _) = x.apply(&[Generator::Perm([0, 2, 1])]).unwrap();
        assert_eq!(s23.x, x.y);
        assert_eq!(s23.y, x.x);
        assert_eq!(s23.z, x.z.conj());
        assert_eq!(s12.det(), x.det());
        assert_eq!(s23.det(), x.det());
    }

    #[test]
    fn positivity() {
        assert!(J::identity().is_positive());
        assert!(!J::diag_i64(1, 1, -1).is_positive());
        assert!(example().is_positive());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut n = 0;
        while n < 50 {
            let s = random_element(&mut rng, 2);
            if s.det().is_zero() {
                continue;
            }
            let sq = s.circ(&s).unwrap();
            assert!(sq.is_positive(), "{sq:?}");
            n += 1;
        }
    }

    #[test]
    fn json_round_trip() {
        let t = example();
        let j = JordanJson::from(&t);
        assert_eq!(J::from(&j), t);
    }
}
