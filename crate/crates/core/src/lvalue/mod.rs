//! Numerical values of `L(s, Sym²π_f)` at `s = 1, 5, 9`, the period
//! `⟨F_f, F_f⟩ = γ_k π^{−6k−3} L(1)L(5)L(9)`, and a rationality probe for the
//! ratios `L(5)/(L(1)π⁸)` and `L(9)/(L(1)π¹⁶)`.
//!
//! `L(s)` is in the analytic normalization: the Euler factor at `p` is
//! `(1 − α_p² p^{−s})(1 − p^{−s})(1 − α_p^{−2} p^{−s})` with `|α_p| = 1`, so the
//! classical argument is `s + 2k − 9`. The completed function
//!
//! ```text
//! Λ(s) = γ(s) L(s),  γ(s) = Γ_R(s+1) Γ_C(s+w),  w = 2k − 9,
//! ```
//!
//! with `Γ_R(s) = π^{−s/2}Γ(s/2)` and `Γ_C(s) = 2(2π)^{−s}Γ(s)`, is taken to be
//! entire with `Λ(s) = Λ(1−s)`. Then
//!
//! ```text
//! Λ(s) = Σ_n b(n) [G_s(n) + G_{1−s}(n)],
//! G_s(x) = (1/2πi) ∫_{(c)} γ(z) x^{−z} dz/(z − s),
//! ```
//!
//! and `G` is evaluated by the trapezoid rule on the vertical line
//! `Re z = c = max(s, 1−s) + 3`. Terms are summed in ascending `n` after a
//! parallel map, so the value does not depend on the thread count.
//!
//! Error bounds combine the quadrature, `y`-truncation and `n`-truncation
//! estimates with rounding; they are conservative but heuristic at the
//! Γ-kernel level.

pub mod ball;
pub mod mpc;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use ball::{Ball, BallJson};
use mpc::{bits_for, ln_gamma, Complex, Ctx};

use crate::error::{Error, Result};
use crate::exactnum::{big_pow, rational_to_string, Rational};
use crate::genfun::gamma_k;
use crate::lift::EigenData;
use crate::util::primes_up_to;

/// Extra decimal digits carried beyond the requested precision.
pub const GUARD_DIGITS: u32 = 10;
/// Largest supported `digits`.
pub const MAX_DIGITS: u32 = 50;
/// Distance used in the trapezoid error estimate; the integrand has a pole
/// at distance 3 from the line of integration.
const STRIP: f64 = 2.5;
/// Largest `n` the smoothed series will use before giving up.
const N_CAP: usize = 4000;

fn smallest_prime_factors(n: usize) -> Vec<usize> {
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i;
                }
            }
        }
    }
    spf
}

/// `d_3(n)` for `n ≤ N`; index 0 holds 0.
pub fn d3_table(n: usize) -> Vec<u64> {
    let spf = smallest_prime_factors(n);
    let mut d = vec![0u64; n + 1];
    if n >= 1 {
        d[1] = 1;
    }
    for m in 2..=n {
        let p = spf[m];
        let (mut r, mut e) = (m, 0u64);
        while r % p == 0 {
            r /= p;
            e += 1;
        }
        d[m] = d[r] * (e + 1) * (e + 2) / 2;
    }
    d
}

/// `b(p) = a_f(p)² p^{−w} − 1`.
pub fn sym2_trace(eigen: &EigenData, p: u64) -> Result<Rational> {
    let a = eigen.a_p(p)?;
    Ok(Rational::new(a * a, big_pow(p, eigen.w())) - Rational::one())
}

/// Dirichlet coefficients `b(1..=n)` of `L(s, Sym²π_f)`; index 0 holds 0.
///
/// On prime powers `b(p^j) = e(b(p^{j−1}) − b(p^{j−2})) + b(p^{j−3})` with
/// `e = b(p)`, from the inverse of `1 − eX + eX² − X³`.
pub fn sym2_dirichlet_coeffs(eigen: &EigenData, n: usize) -> Result<Vec<Rational>> {
    let spf = smallest_prime_factors(n);
    let mut b = vec![Rational::zero(); n + 1];
    if n == 0 {
        return Ok(b);
    }
    b[1] = Rational::one();
    for p in primes_up_to(n as u64) {
        let e = sym2_trace(eigen, p)?;
        let mut prev = [Rational::zero(), Rational::zero(), Rational::one()];
        let mut q = p as usize;
        loop {
            let next = &e * (&prev[2] - &prev[1]) + &prev[0];
            b[q] = next.clone();
            prev = [prev[1].clone(), prev[2].clone(), next];
            match q.checked_mul(p as usize) {
                Some(x) if x <= n => q = x,
                _ => break,
            }
        }
    }
    for m in 2..=n {
        let p = spf[m];
        let mut pe = 1;
        while (m / pe) % p == 0 {
            pe *= p;
        }
        if pe != m {
            b[m] = &b[pe] * &b[m / pe];
        }
    }
    Ok(b)
}

fn zeta_f64(sigma: f64) -> f64 {
    let n = 10_000;
    let s: f64 = (1..=n).map(|k| (k as f64).powf(-sigma)).sum();
    s + (n as f64).powf(1.0 - sigma) / (sigma - 1.0)
}

/// `ln γ(z)` for `γ(z) = π^{−(z+1)/2}Γ((z+1)/2)·2(2π)^{−(z+w)}Γ(z+w)`.
fn ln_gamma_factor(z: &Complex, w: u32, c: &mut Ctx) -> Complex {
    let pi = c.pi();
    let ln_pi = c.ln(&pi);
    let two_pi = c.mul(&c.int(2), &pi);
    let ln_2pi = c.ln(&two_pi);
    let ln2 = c.ln(&c.int(2));
    let one = Complex::real(c, c.int(1));
    let half = c.f64(0.5);
    let zh = z.add(&one, c).scale(&half, c);
    let zw = z.add(&Complex::real(c, c.int(i64::from(w))), c);
    let mut acc = ln_gamma(&zh, c).add(&ln_gamma(&zw, c), c);
    acc = acc.sub(&zh.scale(&ln_pi, c), c);
    acc = acc.sub(&zw.scale(&ln_2pi, c), c);
    acc.re = c.add(&acc.re, &ln2);
    acc
}

fn check_digits(digits: u32) -> Result<()> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(Error::Domain(format!("digits must be in 1..={MAX_DIGITS}, got {digits}")));
    }
    Ok(())
}

fn check_s(s: u32) -> Result<()> {
    if !(1..=9).contains(&s) {
        return Err(Error::Domain(format!("s must be in 1..=9, got {s}")));
    }
    Ok(())
}

/// Tuning knobs for the smoothed series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothOptions {
    pub guard: u32,
    /// Refinement factor: the step `h` is divided by it and the `y` and `n`
    /// cutoffs are multiplied by it.
    pub refine: u32,
}

impl Default for SmoothOptions {
    fn default() -> Self {
        SmoothOptions { guard: GUARD_DIGITS, refine: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct LValue {
    pub s: u32,
    pub digits: u32,
    pub value: Ball,
    /// Dirichlet terms used.
    pub terms: usize,
    /// Quadrature nodes on the half-line.
    pub nodes: usize,
}

#[derive(Serialize)]
pub struct LValueJson {
    pub s: u32,
    pub value: String,
    pub error_bound: String,
    pub terms: usize,
    pub nodes: usize,
}

impl LValue {
    pub fn to_json(&self) -> LValueJson {
        let b = self.value.to_json(self.digits as usize);
        LValueJson { s: self.s, value: b.value, error_bound: b.error_bound, terms: self.terms, nodes: self.nodes }
    }
}

/// Weighted node values `q_j = γ(c+ijh)/(c+ijh−σ)` for `σ = s` and `σ = 1−s`.
struct Nodes {
    qs: Vec<Complex>,
    q1s: Vec<Complex>,
    /// `Σ_j |q_j|` for both families, in `f64`.
    mass: f64,
    /// `|q_J|` at the last node, both families.
    last: f64,
}

fn node_values(s: u32, w: u32, c0: i64, h: f64, j0: usize, j1: usize, p: usize) -> Vec<(Complex, Complex, f64, f64)> {
    (j0..j1)
        .into_par_iter()
        .map(|j| {
            let mut c = Ctx::new(p);
            let y = c.mul(&c.f64(h), &c.int(j as i64));
            let z = Complex::new(c.int(c0), y);
            let lg = ln_gamma_factor(&z, w, &mut c);
            let log2_g = mpc::to_f64(&lg.re) / std::f64::consts::LN_2;
            let g = lg.exp(&mut c);
            let ds = Complex::new(c.int(c0 - i64::from(s)), z.im.clone());
            let d1s = Complex::new(c.int(c0 - 1 + i64::from(s)), z.im.clone());
            let qs = g.div(&ds, &c);
            let q1s = g.div(&d1s, &c);
            let m = |d: &Complex| 0.5 * mpc::to_f64(&d.norm_sqr(&c)).log2();
            let (ls, l1s) = (log2_g - m(&ds), log2_g - m(&d1s));
            (qs, q1s, ls, l1s)
        })
        .collect()
}

fn build_nodes(s: u32, w: u32, c0: i64, h: f64, log2_tol: f64, refine: u32, p: usize) -> Nodes {
    const BATCH: usize = 64;
    let mut all: Vec<(Complex, Complex, f64, f64)> = Vec::new();
    let mut stop = None;
    while stop.is_none() {
        let j0 = all.len();
        all.extend(node_values(s, w, c0, h, j0, j0 + BATCH, p));
        // |γ| decays monotonically for large |y|; stop at the first node
        // below tolerance past the maximum.
        stop = (j0.max(1)..all.len()).find(|&j| all[j].2.max(all[j].3) < log2_tol && all[j].2 < all[j - 1].2);
        assert!(all.len() < 1 << 20, "node cutoff not reached");
    }
    let want = stop.unwrap_or(0) * refine as usize + 1;
    while all.len() < want {
        let j0 = all.len();
        all.extend(node_values(s, w, c0, h, j0, want, p));
    }
    all.truncate(want);
    let mass = all.iter().map(|t| 2f64.powf(t.2) + 2f64.powf(t.3)).sum();
    let last = all.last().map(|t| 2f64.powf(t.2) + 2f64.powf(t.3)).unwrap_or(0.0);
    let (qs, q1s) = all.into_iter().map(|(a, b, _, _)| (a, b)).unzip();
    Nodes { qs, q1s, mass, last }
}

/// `(G_s(n) + G_{1−s}(n))` by the trapezoid rule; `h/π` is applied by the caller.
fn kernel_at(n: usize, nodes: &Nodes, c0: i64, h: f64, p: usize) -> BigFloat {
    let mut c = Ctx::new(p);
    let nf = c.int(n as i64);
    let ln_n = c.ln(&nf);
    let hb = c.f64(h);
    let theta = c.mul(&hb, &ln_n);
    let cos = theta.cos(c.p, mpc::RM, &mut c.cc);
    let sin = theta.sin(c.p, mpc::RM, &mut c.cc);
    let u = Complex::new(cos, sin.neg());
    let mut v = Complex::real(&c, c.int(1));
    let mut acc = c.int(0);
    for (j, (qs, q1s)) in nodes.qs.iter().zip(&nodes.q1s).enumerate() {
        let q = qs.add(q1s, &c);
        let re = c.sub(&c.mul(&q.re, &v.re), &c.mul(&q.im, &v.im));
        acc = if j == 0 { c.add(&acc, &c.mul(&re, &c.f64(0.5))) } else { c.add(&acc, &re) };
        v = v.mul(&u, &c);
    }
    let lnc = c.mul(&ln_n, &c.int(-c0));
    let scale = c.exp(&lnc);
    c.mul(&acc, &scale)
}

/// `L(s, Sym²π_f)` by the smoothed series at `digits` decimal digits.
pub fn sym2_lvalue(eigen: &EigenData, s: u32, digits: u32) -> Result<LValue> {
    sym2_lvalue_with(eigen, s, digits, &SmoothOptions::default())
}

pub fn sym2_lvalue_with(eigen: &EigenData, s: u32, digits: u32, opts: &SmoothOptions) -> Result<LValue> {
    check_digits(digits)?;
    check_s(s)?;
    let refine = opts.refine.max(1);
    let total = digits + opts.guard;
    let p = bits_for(total);
    let w = eigen.w();
    let c0 = i64::from(s.max(1)) + 3;
    let ln_eps = -f64::from(total) * std::f64::consts::LN_10;
    let h = 2.0 * std::f64::consts::PI * STRIP / (-ln_eps + 5.0) / f64::from(refine);

    let mut ctx = Ctx::new(p);
    let gs_ln = ln_gamma_factor(&Complex::real(&ctx, ctx.int(i64::from(s))), w, &mut ctx);
    let gamma_s = ctx.exp(&gs_ln.re);
    let log2_gs = mpc::to_f64(&gs_ln.re) / std::f64::consts::LN_2;
    let log2_tol = ln_eps / std::f64::consts::LN_2 + log2_gs - 4.0;

    let nodes = build_nodes(s, w, c0, h, log2_tol, refine, p);
    let hpi = h / std::f64::consts::PI;

    let n_avail = (eigen.covered_up_to() as usize).min(N_CAP);
    let d3 = d3_table(n_avail.max(1));
    let tol = 2f64.powf(log2_tol);
    const BATCH: usize = 16;
    let mut kern: Vec<BigFloat> = Vec::new();
    let mut stop = None;
    while stop.is_none() {
        let n0 = kern.len() + 1;
        if n0 > n_avail {
            return Err(Error::NeedMoreEigenvalues(format!(
                "L({s}) at {digits} digits needs a_f(p) beyond p = {}",
                eigen.covered_up_to()
            )));
        }
        let n1 = (n0 + BATCH).min(n_avail + 1);
        kern.extend((n0..n1).into_par_iter().map(|n| kernel_at(n, &nodes, c0, h, p)).collect::<Vec<_>>());
        let bound = |n: usize| d3[n] as f64 * hpi * mpc::to_f64(&kern[n - 1]).abs();
        stop = (3..=kern.len()).find(|&n| (n - 2..=n).all(|m| bound(m) < tol));
    }
    let n_stop = stop.unwrap_or(1);
    let n_use = n_stop * refine as usize;
    if n_use > n_avail {
        return Err(Error::NeedMoreEigenvalues(format!("refined cutoff {n_use} exceeds coverage {n_avail}")));
    }
    while kern.len() < n_use {
        let n0 = kern.len() + 1;
        kern.extend((n0..=n_use).into_par_iter().map(|n| kernel_at(n, &nodes, c0, h, p)).collect::<Vec<_>>());
    }
    let n_tail =
        (n_stop - 2..=n_stop).map(|n| d3[n] as f64 * hpi * mpc::to_f64(&kern[n - 1]).abs()).fold(0.0, f64::max);
    kern.truncate(n_use);

    let b = sym2_dirichlet_coeffs(eigen, n_use)?;
    let mut lam = ctx.int(0);
    for (n, k) in kern.iter().enumerate() {
        let bn = ctx.rational(&b[n + 1]);
        lam = ctx.add(&lam, &ctx.mul(&bn, k));
    }
    let pi = ctx.pi();
    let hpi_exact = ctx.div(&ctx.f64(h), &pi);
    lam = ctx.mul(&lam, &hpi_exact);
    let mid = ctx.div(&lam, &gamma_s);

    let z_strip = zeta_f64(c0 as f64 - STRIP).powi(3);
    let z_line = zeta_f64(c0 as f64).powi(3);
    let e_quad = 2.0 * z_strip * hpi * nodes.mass * (-2.0 * std::f64::consts::PI * STRIP / h).exp();
    let e_y = z_line * nodes.last / std::f64::consts::PI;
    let e_n = 10.0 * n_tail;
    let e_round = 2f64.powf(-(p as f64) + 16.0) * (nodes.qs.len() * n_use) as f64 * z_line * hpi * nodes.mass;
    let g = 2f64.powf(log2_gs);
    let rad = (e_quad + e_y + e_n + e_round) / g + mpc::to_f64(&mid).abs() * 2f64.powf(-(p as f64) + 8.0);
    Ok(LValue { s, digits, value: Ball::new(mid, rad), terms: n_use, nodes: nodes.qs.len() })
}

/// `Σ_{n≤N} b(n) n^{−s}` with the tail bounded through
/// `Σ_{n≤x} d_3(n) ≤ x(ln x + 2)²/2`.
pub fn sym2_lvalue_plain(eigen: &EigenData, s: u32, nmax: usize, digits: u32) -> Result<Ball> {
    check_digits(digits)?;
    if s < 2 {
        return Err(Error::Domain("the plain sum needs s ≥ 2".into()));
    }
    let p = bits_for(digits + GUARD_DIGITS);
    let b = sym2_dirichlet_coeffs(eigen, nmax).map_err(|e| match e {
        Error::MissingPrime(q) => Error::NeedMoreEigenvalues(format!("plain sum to {nmax} needs a_f({q})")),
        e => e,
    })?;
    let terms: Vec<BigFloat> = (1..=nmax)
        .into_par_iter()
        .map(|n| {
            let c = Ctx::new(p);
            let den = Rational::from_integer(num_traits::pow(BigInt::from(n), s as usize));
            c.rational(&(&b[n] / den))
        })
        .collect();
    let c = Ctx::new(p);
    let mut acc = c.int(0);
    for t in &terms {
        acc = c.add(&acc, t);
    }
    let (a, big_n) = (f64::from(s), nmax as f64);
    let l = big_n.ln() + 2.0;
    let integral = big_n.powf(1.0 - a) / (a - 1.0) * (l * l + 2.0 * l / (a - 1.0) + 2.0 / ((a - 1.0) * (a - 1.0)));
    let tail = a / 2.0 * integral;
    let rad = tail + nmax as f64 * 2f64.powf(-(p as f64) + 4.0);
    Ok(Ball::new(acc, rad))
}

/// `Π_{p≤P} (1 − b(p)x + b(p)x² − x³)^{−1}` at `x = p^{−s}`, with the tail
/// bounded by `exp(3.1 Σ_{n>P} n^{−s}) − 1`.
pub fn sym2_euler_product(eigen: &EigenData, s: u32, pmax: u64, digits: u32) -> Result<Ball> {
    check_digits(digits)?;
    if s < 2 {
        return Err(Error::Domain("the Euler product needs s ≥ 2".into()));
    }
    let p_bits = bits_for(digits + GUARD_DIGITS);
    let c = Ctx::new(p_bits);
    let mut acc = c.int(1);
    let primes = primes_up_to(pmax);
    for &p in &primes {
        let e = sym2_trace(eigen, p)?;
        let x = Rational::new(BigInt::one(), big_pow(p, s));
        let x2 = &x * &x;
        let f = Rational::one() - &e * &x + &e * &x2 - &x2 * &x;
        acc = c.div(&acc, &c.rational(&f));
    }
    let a = f64::from(s);
    let tail_sum = (pmax as f64).powf(1.0 - a) / (a - 1.0);
    let rel = (3.1 * tail_sum).exp_m1();
    let v = mpc::to_f64(&acc).abs();
    let rad = v * rel + primes.len() as f64 * v * 2f64.powf(-(p_bits as f64) + 4.0);
    Ok(Ball::new(acc, rad))
}

#[derive(Clone, Debug)]
pub struct Period {
    pub k: u32,
    pub digits: u32,
    pub value: Ball,
    pub gamma_k: Rational,
    pub pi_power: i64,
    pub lvalues: Vec<LValue>,
}

#[derive(Serialize)]
pub struct PeriodJson {
    pub k: u32,
    pub value: String,
    pub error_bound: String,
    pub gamma_k: String,
    pub pi_power: i64,
    pub lvalues: Vec<LValueJson>,
}

impl Period {
    pub fn to_json(&self) -> PeriodJson {
        let b = self.value.to_json(self.digits as usize);
        PeriodJson {
            k: self.k,
            value: b.value,
            error_bound: b.error_bound,
            gamma_k: rational_to_string(&self.gamma_k),
            pi_power: self.pi_power,
            lvalues: self.lvalues.iter().map(LValue::to_json).collect(),
        }
    }
}

/// The three values `L(1), L(5), L(9)`.
pub fn sym2_triple(eigen: &EigenData, digits: u32) -> Result<Vec<LValue>> {
    [1, 5, 9].iter().map(|&s| sym2_lvalue(eigen, s, digits)).collect()
}

/// `⟨F_f, F_f⟩ = γ_k π^{−6k−3} L(1)L(5)L(9)`.
pub fn period(k: u32, eigen: &EigenData, digits: u32) -> Result<Period> {
    if eigen.k != k {
        return Err(Error::Domain(format!("eigenvalues are for k = {}, not {k}", eigen.k)));
    }
    let lvalues = sym2_triple(eigen, digits)?;
    let p = bits_for(digits + GUARD_DIGITS);
    let mut c = Ctx::new(p);
    let gk = gamma_k(k);
    let pi_power = -6 * i64::from(k) - 3;
    let pi = Ball::rounded(c.pi(), &c);
    let mut acc = Ball::rounded(c.rational(&gk), &c);
    for _ in 0..pi_power.unsigned_abs() {
        acc = acc.div(&pi, &c);
    }
    for l in &lvalues {
        acc = acc.mul(&l.value, &c);
    }
    Ok(Period { k, digits, value: acc, gamma_k: gk, pi_power, lvalues })
}

/// The simplest rational within the tolerance, accepted only if it is
/// overdetermined: `q² · tol ≤ 10⁻⁶`.
pub fn rational_reconstruct(x: &Ball, digits: u32) -> Option<Rational> {
    let v = x.mid_rational();
    if v.is_zero() {
        return Some(v);
    }
    let rel = 10f64.powi(-(digits as i32));
    let tol = x.rad.max(v.to_f64()?.abs() * rel);
    if !tol.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = v.clone();
    for _ in 0..200 {
        let a = r.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        let cand = Rational::new(h2.clone(), k2.clone());
        let err = (&v - &cand).abs().to_f64()?;
        if err <= tol {
            let q = k2.to_f64()?;
            return (q * q * tol <= 1e-6).then_some(cand);
        }
        let frac = &r - Rational::from_integer(a);
        if frac.is_zero() {
            return None;
        }
        r = frac.recip();
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub digits: u32,
    pub rho5: BallJson,
    pub rho9: BallJson,
    #[serde(serialize_with = "opt_rational")]
    pub r5: Option<Rational>,
    #[serde(serialize_with = "opt_rational")]
    pub r9: Option<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub k: u32,
    #[serde(serialize_with = "opt_rational")]
    pub r5: Option<Rational>,
    #[serde(serialize_with = "opt_rational")]
    pub r9: Option<Rational>,
    pub rows: Vec<ProbeRow>,
}

fn opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&rational_to_string(q)),
        None => s.serialize_none(),
    }
}

/// `ρ_5 = L(5)/(L(1)π⁸)` and `ρ_9 = L(9)/(L(1)π¹⁶)` reconstructed at each
/// precision; a rational is reported only if every precision agrees.
pub fn rationality_probe(eigen: &EigenData, digits: &[u32]) -> Result<ProbeResult> {
    rationality_probe_perturbed(eigen, digits, 0.0)
}

/// As [`rationality_probe`], with `L(1)` multiplied by `e^shift` (a
/// negative control for `shift ≠ 0`; the factor is transcendental, so the
/// ratios cannot stay rational).
pub fn rationality_probe_perturbed(eigen: &EigenData, digits: &[u32], shift: f64) -> Result<ProbeResult> {
    if digits.is_empty() {
        return Err(Error::Domain("no precisions given".into()));
    }
    let mut rows = Vec::new();
    for &d in digits {
        let ls = sym2_triple(eigen, d)?;
        let p = bits_for(d + GUARD_DIGITS);
        let mut c = Ctx::new(p);
        let l1 = if shift == 0.0 {
            ls[0].value.clone()
        } else {
            let s = c.f64(shift);
            let f = c.exp(&s);
            Ball::new(c.mul(&ls[0].value.mid, &f), ls[0].value.rad * 2.0)
        };
        let pi = Ball::rounded(c.pi(), &c);
        let mut pi8 = Ball::rounded(c.int(1), &c);
        for _ in 0..8 {
            pi8 = pi8.mul(&pi, &c);
        }
        let pi16 = pi8.mul(&pi8, &c);
        let rho5 = ls[1].value.div(&l1.mul(&pi8, &c), &c);
        let rho9 = ls[2].value.div(&l1.mul(&pi16, &c), &c);
        rows.push(ProbeRow {
            digits: d,
            r5: rational_reconstruct(&rho5, d),
            r9: rational_reconstruct(&rho9, d),
            rho5: rho5.to_json(d as usize),
            rho9: rho9.to_json(d as usize),
        });
    }
    let agree = |f: fn(&ProbeRow) -> &Option<Rational>| {
        let first = f(&rows[0]).clone()?;
        rows.iter().all(|r| f(r).as_ref() == Some(&first)).then_some(first)
    };
    let r5 = agree(|r| &r.r5);
    let r9 = agree(|r| &r.r9);
    Ok(ProbeResult { k: eigen.k, r5, r9, rows })
}
