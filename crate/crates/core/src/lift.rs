//! Hecke data of `f ∈ S_{2k−8}(SL_2(Z))`, Satake power sums, Fourier
//! coefficients `a_{F_f}(T)` of the lift, and local L-factors.
//!
//! The factor `det(T)^{(2k−9)/2}` is never formed as a square root: it is
//! split into `p^{m_p(2k−9)/2}` per prime and paired with the terms
//! `α_p^{±j}` of the same parity, so every exponent of `p` is an integer.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{big_pow, int, rat_pow, Rational};
use crate::jordan::JordanElement;
use crate::padic::{genus_invariants, ElemDivisors};
use crate::siegel::{f_poly, shape_of, symmetric_coefficients, tilde_f};
use crate::util::{factorize, primes_up_to};

/// `τ(1..=n)`, from `Δ = q Π (1 − q^m)^{24}`; index 0 holds 0.
///
/// Uses `m·f_m = −24 Σ_{j=1}^{m} σ(j) f_{m−j}` for the coefficients `f` of
/// `Π (1 − q^m)^{24}`.
pub fn tau_table(n: usize) -> Vec<i128> {
    let mut sigma = vec![0i128; n + 1];
    for d in 1..=n {
        for m in (d..=n).step_by(d) {
            sigma[m] += d as i128;
        }
    }
    let mut f = vec![0i128; n];
    if n > 0 {
        f[0] = 1;
    }
    for m in 1..n {
        let s: i128 = (1..=m).map(|j| sigma[j] * f[m - j]).sum();
        f[m] = -24 * s / m as i128;
    }
    let mut out = vec![0i128; n + 1];
    out[1..].copy_from_slice(&f);
    out
}

fn series_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().min(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..(n - i) {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// Eisenstein series `E_w = 1 − (2w/B_w) Σ σ_{w−1}(n) q^n` through `q^{n−1}`.
fn eisenstein(w: u32, n: usize) -> Vec<BigInt> {
    let factor: i64 = match w {
        4 => 240,
        6 => -504,
        _ => unreachable!("only E4 and E6 are needed"),
    };
    let mut e = vec![BigInt::zero(); n];
    e[0] = BigInt::one();
    for d in 1..n {
        let dp = num_traits::pow(BigInt::from(d), (w - 1) as usize);
        for m in (d..n).step_by(d) {
            e[m] += &dp * factor;
        }
    }
    e
}

/// Weights `2k − 8` with a one-dimensional cusp space, and the corresponding `k`.
pub const DIM_ONE_K: [u32; 6] = [10, 12, 13, 14, 15, 17];

/// q-expansion coefficients `a(1..=n)` of the normalized eigenform of weight
/// `2k − 8`, for `k` in [`DIM_ONE_K`]: `Δ·E_4^a·E_6^b`.
pub fn builtin_coefficients(k: u32, n: usize) -> Result<Vec<BigInt>> {
    let (a, b) = match 2 * k - 8 {
        12 => (0, 0),
        16 => (1, 0),
        18 => (0, 1),
        20 => (2, 0),
        22 => (1, 1),
        26 => (2, 1),
        w => return Err(Error::Domain(format!("no built-in eigenform of weight {w}"))),
    };
    let tau = tau_table(n);
    let mut s: Vec<BigInt> = tau[1..].iter().map(|&t| BigInt::from(t)).collect();
    for _ in 0..a {
        s = series_mul(&s, &eisenstein(4, n));
    }
    for _ in 0..b {
        s = series_mul(&s, &eisenstein(6, n));
    }
    let mut out = vec![BigInt::zero()];
    out.extend(s);
    Ok(out)
}

/// Hecke eigenvalues `a_f(p)` of a rational eigenform of weight `2k − 8`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenData {
    pub k: u32,
    pub table: BTreeMap<u64, BigInt>,
}

impl EigenData {
    /// `w = 2k − 9`, the motivic weight of `f`.
    pub fn w(&self) -> u32 {
        2 * self.k - 9
    }

    pub fn new(k: u32, table: BTreeMap<u64, BigInt>) -> Result<Self> {
        if k < 10 {
            return Err(Error::Domain(format!("k = {k} < 10")));
        }
        let d = EigenData { k, table };
        for (p, a) in &d.table {
            // |a_p| ≤ 2 p^{w/2}  ⇔  a_p² ≤ 4 p^w
            if a * a > big_pow(*p, d.w()) * 4 {
                return Err(Error::Domain(format!("a_f({p}) = {a} violates the Deligne bound")));
            }
        }
        Ok(d)
    }

    /// Built-in eigenvalues for primes up to `pmax`.
    pub fn builtin(k: u32, pmax: u64) -> Result<Self> {
        let n = pmax as usize;
        let table = if k == 10 {
            let tau = tau_table(n);
            primes_up_to(pmax).into_iter().map(|p| (p, BigInt::from(tau[p as usize]))).collect()
        } else {
            let c = builtin_coefficients(k, n)?;
            primes_up_to(pmax).into_iter().map(|p| (p, c[p as usize].clone())).collect()
        };
        Self::new(k, table)
    }

    /// CSV with header `p,a_p`.
    pub fn from_csv_str(k: u32, s: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(s.as_bytes());
        let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?;
        if header.iter().collect::<Vec<_>>() != ["p", "a_p"] {
            return Err(Error::Parse(format!(
                "expected header `p,a_p`, found `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut table = BTreeMap::new();
        for (i, rec) in rdr.records().enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
            let p: u64 = rec[0].parse().map_err(|_| Error::Parse(format!("line {line}: bad prime `{}`", &rec[0])))?;
            if !crate::util::is_prime(p) {
                return Err(Error::Parse(format!("line {line}: {p} is not prime")));
            }
            let a: BigInt = rec[1].parse().map_err(|_| Error::Parse(format!("line {line}: bad a_p `{}`", &rec[1])))?;
            table.insert(p, a);
        }
        Self::new(k, table)
    }

    pub fn from_csv(k: u32, path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_csv_str(k, &s)
    }

    pub fn a_p(&self, p: u64) -> Result<&BigInt> {
        self.table.get(&p).ok_or(Error::MissingPrime(p))
    }

    /// Largest `P` such that every prime `≤ P` is present.
    pub fn covered_up_to(&self) -> u64 {
        let mut last = 1;
        for p in primes_up_to(self.table.keys().next_back().copied().unwrap_or(1)) {
            if !self.table.contains_key(&p) {
                break;
            }
            last = p;
        }
        last
    }
}

/// `t_j = p^{jw/2}(α_p^j + α_p^{−j})` for `j = 0..=jmax`, `w = 2k − 9`.
pub fn satake_power_sums(a_p: &BigInt, p: u64, k: u32, jmax: usize) -> Vec<BigInt> {
    let pw = big_pow(p, 2 * k - 9);
    let mut t = vec![BigInt::from(2)];
    if jmax >= 1 {
        t.push(a_p.clone());
    }
    for j in 2..=jmax {
        let next = a_p * &t[j - 1] - &pw * &t[j - 2];
        t.push(next);
    }
    t
}

/// Local factor `p^{m w/2} tilde f_T^p(α_p)` for one prime.
pub fn local_coefficient(d: &ElemDivisors, eigen: &EigenData) -> Result<BigInt> {
    let p = d.p;
    let m = i64::from(d.sum());
    let tf = tilde_f(&f_poly(p, shape_of(d))?);
    let cs = symmetric_coefficients(&tf, m).map_err(|e| match e {
        Error::ParityBug(_) => Error::ParityBug(p),
        e => e,
    })?;
    let t = satake_power_sums(eigen.a_p(p)?, p, eigen.k, m as usize);
    let w = i64::from(eigen.w());
    let mut acc = BigInt::zero();
    for (j, c) in cs {
        if (m - j) % 2 != 0 {
            return Err(Error::ParityBug(p));
        }
        let e = ((m - j) / 2 * w) as u32;
        let tj = if j == 0 { BigInt::one() } else { t[j as usize].clone() };
        acc += c * big_pow(p, e) * tj;
    }
    Ok(acc)
}

/// Fourier coefficient from the local exponent triples.
pub fn coefficient_from_divisors(divisors: &BTreeMap<u64, ElemDivisors>, eigen: &EigenData) -> Result<BigInt> {
    let mut acc = BigInt::one();
    for d in divisors.values() {
        acc *= local_coefficient(d, eigen)?;
    }
    Ok(acc)
}

/// `a_{F_f}(T) = det(T)^{(2k−9)/2} Π_{p | det T} tilde f_T^p(α_p)`.
pub fn fourier_coeff(t: &JordanElement<BigInt>, eigen: &EigenData) -> Result<BigInt> {
    if !t.is_positive() {
        return Err(Error::NonPositive);
    }
    coefficient_from_divisors(&genus_invariants(t)?, eigen)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftRow {
    pub det: u64,
    /// Exponent triples per prime dividing `det`.
    pub divisors: BTreeMap<u64, [u32; 3]>,
    pub coefficient: String,
}

/// Every local type with `det ≤ max_det` and its coefficient. Each type is
/// realized by a diagonal element, so all listed rows occur.
pub fn lift_table(eigen: &EigenData, max_det: u64) -> Result<Vec<LiftRow>> {
    let rows: Result<Vec<Vec<LiftRow>>> = (1..=max_det)
        .into_par_iter()
        .map(|d| {
            let f = factorize(&BigInt::from(d))?;
            let mut combos: Vec<BTreeMap<u64, ElemDivisors>> = vec![BTreeMap::new()];
            for (&p, &e) in &f {
                let mut next = Vec::new();
                for c in &combos {
                    for a in crate::density::triples_with_sum(e) {
                        let mut c2 = c.clone();
                        c2.insert(p, ElemDivisors::new(p, a));
                        next.push(c2);
                    }
                }
                combos = next;
            }
            combos
                .into_iter()
                .map(|c| {
                    Ok(LiftRow {
                        det: d,
                        divisors: c.iter().map(|(p, e)| (*p, e.a)).collect(),
                        coefficient: coefficient_from_divisors(&c, eigen)?.to_string(),
                    })
                })
                .collect()
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

/// `r + q·√d` with rational `r`, `q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Surd {
    #[serde(serialize_with = "crate::exactnum::serde_rational")]
    pub r: Rational,
    #[serde(serialize_with = "crate::exactnum::serde_rational")]
    pub q: Rational,
    pub d: u64,
}

impl Surd {
    pub fn rational(r: Rational, d: u64) -> Self {
        Surd { r, q: Rational::zero(), d }
    }

    pub fn add(&self, o: &Surd) -> Surd {
        Surd { r: &self.r + &o.r, q: &self.q + &o.q, d: self.d }
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        Surd { r: &self.r * &o.r + &self.q * &o.q * int(self.d as i64), q: &self.r * &o.q + &self.q * &o.r, d: self.d }
    }

    pub fn neg(&self) -> Surd {
        Surd { r: -&self.r, q: -&self.q, d: self.d }
    }

    pub fn scale(&self, c: &Rational) -> Surd {
        Surd { r: &self.r * c, q: &self.q * c, d: self.d }
    }

    pub fn to_f64(&self) -> f64 {
        self.r.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }
}

/// Inverse local factors as polynomials in `u = p^{-s}` (analytic normalization).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalFactors {
    pub p: u64,
    /// `(1 − α²u)(1 − u)(1 − α⁻²u)`, coefficients of `u^0..u^3`.
    pub sym2: Vec<Surd>,
    /// `Π_{j∈{3,1,−1,−3}} (1 − α^j u)`.
    pub sym3: Vec<Surd>,
    /// The degree-56 factor as a list: the Sym³ factor, then `L(s+i, π_f)`
    /// factors for `i = −4..=4` and `i = −8..=8`.
    pub std56: Vec<(String, Vec<Surd>)>,
}

impl LocalFactors {
    pub fn std56_degree(&self) -> usize {
        self.std56.iter().map(|(_, c)| c.len() - 1).sum()
    }
}

fn poly_mul(a: &[Surd], b: &[Surd]) -> Vec<Surd> {
    let d = a[0].d;
    let mut out = vec![Surd::rational(Rational::zero(), d); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Local factors in terms of `s1 = α_p + α_p^{-1}`.
pub fn local_factors_from_trace(p: u64, s1: &Surd) -> LocalFactors {
    let d = s1.d;
    let c = |x: i64| Surd::rational(int(x), d);
    let s2 = s1.mul(s1);
    // α² + 1 + α⁻² = s1² − 1
    let e1 = s2.add(&c(-1));
    let sym2 = vec![c(1), e1.neg(), e1.clone(), c(-1)];
    // α³ + α⁻³ = s1³ − 3 s1
    let s3 = s2.mul(s1).add(&s1.scale(&int(-3)));
    let sym3 = poly_mul(&[c(1), s3.neg(), c(1)], &[c(1), s1.neg(), c(1)]);
    let mut std56 = vec![("sym3".to_string(), sym3.clone())];
    for (lo, hi) in [(-4i64, 4i64), (-8, 8)] {
        for i in lo..=hi {
            let pi = rat_pow(p, -i);
            let f = vec![c(1), s1.neg().scale(&pi), Surd::rational(&pi * &pi, d)];
            std56.push((format!("std(s{i:+})"), f));
        }
    }
    LocalFactors { p, sym2, sym3, std56 }
}

/// Local factors for `a_f(p)`: `s1 = a_p p^{-w/2}` lies in `Q(√p)`.
pub fn local_l_factors(p: u64, a_p: &BigInt, k: u32) -> LocalFactors {
    let w = 2 * k - 9;
    let a = Rational::from_integer(a_p.clone());
    let s1 = if w.is_multiple_of(2) {
        Surd::rational(a * rat_pow(p, -(i64::from(w) / 2)), p)
    } else {
        // p^{-w/2} = p^{-(w+1)/2} √p
        Surd { r: Rational::zero(), q: a * rat_pow(p, -(i64::from(w) + 1) / 2), d: p }
    };
    local_factors_from_trace(p, &s1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn tau_values() {
        let t = tau_table(12);
        assert_eq!(&t[1..=6], &[1, -24, 252, -1472, 4830, -6048]);
        assert_eq!(t[6], t[2] * t[3]);
        assert_eq!(t[12], -370944);
    }

    #[test]
    fn builtin_weight_16() {
        // Δ·E4 has a(2) = 216
        let c = builtin_coefficients(12, 5).unwrap();
        assert_eq!(c[1], BigInt::from(1));
        assert_eq!(c[2], BigInt::from(216));
        assert!(EigenData::builtin(12, 50).is_ok());
    }

    #[test]
    fn satake_sums() {
        let t = satake_power_sums(&BigInt::from(-24), 2, 10, 2);
        assert_eq!(t, vec![BigInt::from(2), BigInt::from(-24), BigInt::from(-3520)]);
    }

    #[test]
    fn coefficient_examples() {
        let e = EigenData::builtin(10, 50).unwrap();
        let one = JordanElement::<BigInt>::identity();
        assert_eq!(fourier_coeff(&one, &e).unwrap(), BigInt::from(1));
        assert_eq!(fourier_coeff(&JordanElement::diag_i64(1, 1, 2), &e).unwrap(), BigInt::from(-24));
        assert_eq!(fourier_coeff(&JordanElement::diag_i64(1, 1, 4), &e).unwrap(), BigInt::from(-1472));
    }

    #[test]
    fn hecke_recurrence() {
        let e = EigenData::builtin(10, 50).unwrap();
        for p in [2i64, 3] {
            let a = |m: u32| fourier_coeff(&JordanElement::diag_i64(1, 1, p.pow(m)), &e).unwrap();
            let tp = BigInt::from(tau_table(3)[p as usize]);
            for m in 1..=4 {
                assert_eq!(a(m + 1), &tp * a(m) - big_pow(p as u64, 11) * a(m - 1));
            }
        }
    }

    #[test]
    fn csv_ingest() {
        let e = EigenData::from_csv_str(10, "p,a_p\n2,-24\n3,252\n").unwrap();
        assert_eq!(e.a_p(3).unwrap(), &BigInt::from(252));
        assert_eq!(e.a_p(5).unwrap_err(), Error::MissingPrime(5));
        assert!(EigenData::from_csv_str(10, "p,a_p\n2,100000\n").is_err());
        assert!(EigenData::from_csv_str(10, "q,a\n2,1\n").is_err());
    }

    #[test]
    fn local_factor_shapes() {
        let f = local_factors_from_trace(3, &Surd::rational(int(2), 3));
        let coeffs = |v: &[Surd]| v.iter().map(|s| s.r.clone()).collect::<Vec<_>>();
        assert_eq!(coeffs(&f.sym2), vec![int(1), int(-3), int(3), int(-1)]);
        assert_eq!(coeffs(&f.sym3), vec![int(1), int(-4), int(6), int(-4), int(1)]);
        assert_eq!(f.std56_degree(), 56);
        let g = local_l_factors(2, &BigInt::from(-24), 10);
        // e1 = 576/2^11 − 1
        assert_eq!(g.sym2[1].r, -(rat(576, 2048) - int(1)));
        assert_eq!(g.sym2[1].q, Rational::zero());
    }

    #[test]
    fn table_rows() {
        let e = EigenData::builtin(10, 50).unwrap();
        let rows = lift_table(&e, 4).unwrap();
        assert_eq!(rows[0].det, 1);
        assert_eq!(rows[0].coefficient, "1");
        let r4: Vec<_> = rows.iter().filter(|r| r.det == 4).collect();
        assert_eq!(r4.len(), 2);
    }
}
