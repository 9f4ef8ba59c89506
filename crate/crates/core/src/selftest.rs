//! The twelve acceptance checks, shared by the `acceptance` test target and
//! the `selftest` subcommand. Each check returns pass/fail with a short
//! detail string; none of them panics on a mismatch.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::{build_structure_constants, integer_determinant, trace_pairing_gram, Octonion};
use crate::census::{beta_from_census, census_f2};
use crate::density::{
    beta_p, beta_recursions, c_zeta_product_expected, expected_nonsingular_count, igusa_verify, mass,
};
use crate::exactnum::{big_pow, factorial, PolyX, Rational};
use crate::genfun::{gamma_k, gamma_k_derived, hp_verify};
use crate::jordan::{random_element, random_octonion, random_word, JordanElement};
use crate::lift::{fourier_coeff, tau_table, EigenData};
use crate::lvalue::{period, rationality_probe, sym2_lvalue, sym2_lvalue_plain};
use crate::padic::{elementary_divisors, ElemDivisors};
use crate::siegel::{f_poly, f_poly_oracle, shapes_up_to, tilde_f};
use crate::util::{ord_p, with_threads};

type J = JordanElement<BigInt>;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    /// Time budget from the acceptance list.
    pub budget_seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({:.2}s / {:.0}s): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.budget_seconds,
            self.detail
        )
    }
}

type Check = fn(usize) -> Result<String, String>;

pub const CRITERIA: [(u32, &str, f64, Check); 12] = [
    (1, "octonion algebra laws", 1.0, algebra_laws),
    (2, "Jordan determinant identities", 10.0, jordan_identities),
    (3, "census of J(F_2)", 300.0, census_oracle),
    (4, "Igusa consistency", 1.0, igusa),
    (5, "local density recursions", 1.0, beta_rules),
    (6, "Siegel series", 30.0, siegel_series),
    (7, "H_p identity", 120.0, hp_identity),
    (8, "residue algebra", 1.0, residue_algebra),
    (9, "mass formula", 1.0, mass_values),
    (10, "lift coefficients", 5.0, lift_coefficients),
    (11, "p-adic reduction round trip", 60.0, padic_round_trip),
    (12, "period pipeline", 300.0, period_pipeline),
];

/// Run one criterion by number.
pub fn run_one(id: u32, threads: usize) -> Option<CriterionResult> {
    let &(id, name, budget, f) = CRITERIA.iter().find(|c| c.0 == id)?;
    let t = Instant::now();
    let out = std::panic::catch_unwind(|| with_threads(threads, || f(threads)))
        .unwrap_or_else(|_| Err("panicked".to_string()));
    let seconds = t.elapsed().as_secs_f64();
    let (pass, detail) = match out {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionResult { id, name, pass, detail, seconds, budget_seconds: budget })
}

pub fn run_all(threads: usize) -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run_one(c.0, threads)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn algebra_laws(_: usize) -> Result<String, String> {
    build_structure_constants().map_err(|e| e.to_string())?;
    let det = integer_determinant(&trace_pairing_gram());
    ensure(det == BigInt::one(), || format!("Gram determinant {det}"))?;
    let zero = BigInt::zero();
    let basis: Vec<Octonion<BigInt>> = (0..8).map(|i| Octonion::alpha(i, &zero)).collect();
    let check = |x: &Octonion<BigInt>, y: &Octonion<BigInt>| -> Result<(), String> {
        let xy = x.mul(y);
        ensure(xy.norm() == x.norm() * y.norm(), || format!("N(xy) ≠ N(x)N(y) for {x:?}, {y:?}"))?;
        let xx = x.mul(x);
        ensure(x.mul(&xy) == xx.mul(y), || format!("left alternativity fails for {x:?}, {y:?}"))?;
        ensure(y.mul(x).mul(x) == y.mul(&xx), || format!("right alternativity fails for {x:?}, {y:?}"))
    };
    for x in &basis {
        for y in &basis {
            check(x, y)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let (x, y) = (random_octonion(&mut rng, 3), random_octonion(&mut rng, 3));
        check(&x, &y)?;
    }
    Ok("64 basis pairs and 10^4 random pairs; Gram det 1".into())
}

fn jordan_identities(_: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let x = random_element(&mut rng, 3);
        let len = rng.gen_range(1..6);
        let w = random_word(&mut rng, len, false);
        let (gx, nu) = x.apply(&w).map_err(|e| e.to_string())?;
        ensure(gx.det() == &nu * x.det(), || format!("det(gX) ≠ ν det X for word of length {len}"))?;
    }
    for _ in 0..1000 {
        let x = random_element(&mut rng, 3);
        let y = random_element(&mut rng, 3);
        // det(X + tY) = d0 + d1 t + d2 t² + d3 t³
        let p1 = x.add(&y).det();
        let m1 = x.sub(&y).det();
        let d1 = (p1 - m1) / 2 - y.det();
        ensure(d1 == x.adjoint().inner(&y), || "t-coefficient of det(X+tY) ≠ (X×X, Y)".into())?;
    }
    Ok("10^3 random words, 10^3 random pairs".into())
}

fn census_oracle(threads: usize) -> Result<String, String> {
    let c = census_f2(threads);
    let want = expected_nonsingular_count(2);
    ensure(BigInt::from(c.rank3) == want, || format!("rank3 = {}, expected {want}", c.rank3))?;
    let beta = beta_from_census(&c);
    let b0 = beta_p(&ElemDivisors::new(2, [0, 0, 0]));
    ensure(beta == b0, || format!("β from census {beta} ≠ β_2(0,0,0) {b0}"))?;
    Ok(format!("rank0..3 = {} {} {} {}", c.rank0, c.rank1, c.rank2, c.rank3))
}

fn igusa(_: usize) -> Result<String, String> {
    for p in [2, 3, 5] {
        let r = igusa_verify(p, 12).map_err(|e| e.to_string())?;
        ensure(r.ok, || format!("p = {p}: first mismatch at u^{:?}", r.first_mismatch))?;
    }
    Ok("p ∈ {2,3,5} through u^12".into())
}

fn beta_rules(_: usize) -> Result<String, String> {
    for p in [2, 3, 5] {
        beta_recursions(p, 6).map_err(|(a, rule)| format!("p = {p}, {a:?}: {rule} rule fails"))?;
    }
    Ok("scaling, adjoint and step rules for a3 ≤ 6".into())
}

fn siegel_series(_: usize) -> Result<String, String> {
    let mut n = 0;
    for p in [2, 3, 5] {
        for m in shapes_up_to(9) {
            let f = f_poly(p, m).map_err(|e| format!("p = {p}: {e}"))?;
            let g = f_poly_oracle(p, m).map_err(|e| format!("p = {p}: {e}"))?;
            ensure(f == g, || format!("p = {p}, m = {m:?}: closed form ≠ recursion"))?;
            ensure(f.poly.degree() == Some(f.ord()), || format!("p = {p}, m = {m:?}: degree"))?;
            ensure(f.poly.coeff(0) == Rational::one(), || format!("p = {p}, m = {m:?}: f(0) ≠ 1"))?;
            ensure(f.poly.has_integer_coeffs(), || format!("p = {p}, m = {m:?}: non-integral"))?;
            let t: PolyX = tilde_f(&f);
            ensure(t == t.subs_power(-1), || format!("p = {p}, m = {m:?}: not palindromic"))?;
            n += 1;
        }
    }
    Ok(format!("{n} cases"))
}

fn hp_identity(_: usize) -> Result<String, String> {
    for p in [2, 3, 5] {
        let r = hp_verify(p, 10, true).map_err(|e| e.to_string())?;
        ensure(r.ok, || format!("p = {p}: first mismatch at t^{:?}", r.first_mismatch))?;
        ensure(r.sixty_four == Some(true), || format!("p = {p}: 64-term route disagrees"))?;
    }
    Ok("p ∈ {2,3,5} through t^10, both routes".into())
}

fn residue_algebra(_: usize) -> Result<String, String> {
    for k in 10..=15 {
        let d = gamma_k_derived(k).map_err(|e| format!("k = {k}: {e}"))?;
        ensure(d == gamma_k(k), || format!("k = {k}: derived {d} ≠ γ_k"))?;
    }
    let f = |n| Rational::from_integer(factorial(n));
    let den = Rational::from_integer(big_pow(2, 113) * BigInt::from(27 * 5 * 49 * 13));
    let want = Rational::from_integer(BigInt::from(691)) * f(19) * f(15) * f(11) / den;
    ensure(gamma_k(10) == want, || format!("γ_10 = {}", gamma_k(10)))?;
    Ok("k = 10..15; γ_10 = 691·19!·15!·11!/(2^113·3^3·5·7^2·13)".into())
}

fn mass_values(_: usize) -> Result<String, String> {
    let m1 = mass(&J::identity()).map_err(|e| e.to_string())?;
    ensure(m1 == c_zeta_product_expected(), || format!("mass(1_3) = {m1}"))?;
    let m2 = mass(&J::diag_i64(2, 2, 2)).map_err(|e| e.to_string())?;
    ensure(m2 == m1, || format!("mass(2·1_3) = {m2}"))?;
    Ok(format!("mass(1_3) = {m1}"))
}

fn lift_coefficients(_: usize) -> Result<String, String> {
    let tau = tau_table(10);
    ensure(tau[1] == 1 && tau[6] == tau[2] * tau[3], || "τ table self-check".into())?;
    let e = EigenData::builtin(10, 50).map_err(|e| e.to_string())?;
    let a = |t: &J| fourier_coeff(t, &e).map_err(|e| e.to_string());
    ensure(a(&J::identity())? == BigInt::one(), || "a(1_3) ≠ 1".into())?;
    ensure(a(&J::diag_i64(1, 1, 2))? == BigInt::from(tau[2]), || "a(diag(1,1,2)) ≠ τ(2)".into())?;
    ensure(a(&J::diag_i64(1, 1, 4))? == BigInt::from(tau[4]), || "a(diag(1,1,4)) ≠ τ(4)".into())?;
    for p in [2i64, 3] {
        let tp = BigInt::from(tau[p as usize]);
        let c = (0..=5).map(|m| a(&J::diag_i64(1, 1, p.pow(m)))).collect::<Result<Vec<_>, _>>()?;
        for m in 1..=4 {
            ensure(c[m + 1] == &tp * &c[m] - big_pow(p as u64, 11) * &c[m - 1], || {
                format!("Hecke recurrence fails at p = {p}, m = {m}")
            })?;
        }
    }
    Ok("a(1_3) = 1, τ(2), τ(4); recurrence for p ∈ {2,3}, m ≤ 4".into())
}

fn padic_round_trip(_: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [2u64, 3, 5] {
        for _ in 0..200 {
            let mut a = [rng.gen_range(0..4u32), rng.gen_range(0..4), rng.gen_range(0..4)];
            let pw = |e: u32| (p as i64).pow(e);
            let t = J::diag_i64(pw(a[0]), pw(a[1]), pw(a[2]));
            let len = rng.gen_range(1..10);
            let w = random_word(&mut rng, len, true);
            let (s, nu) = t.apply(&w).map_err(|e| e.to_string())?;
            ensure(nu == BigInt::one(), || "ν ≠ 1 for a unimodular word".into())?;
            let d = elementary_divisors(&s, p, None).map_err(|e| e.to_string())?;
            a.sort_unstable();
            ensure(d.a == a, || format!("p = {p}: recovered {:?}, expected {a:?}", d.a))?;
            ensure(d.sum() == ord_p(&s.det(), p), || format!("p = {p}: sum rule fails"))?;
        }
    }
    Ok("600 scrambled diagonals".into())
}

fn period_pipeline(threads: usize) -> Result<String, String> {
    let e = EigenData::builtin(10, 10_000).map_err(|e| e.to_string())?;
    let smooth = sym2_lvalue(&e, 9, 20).map_err(|e| e.to_string())?;
    let plain = sym2_lvalue_plain(&e, 9, 10_000, 20).map_err(|e| e.to_string())?;
    let diff = num_traits::ToPrimitive::to_f64(&(smooth.value.mid_rational() - plain.mid_rational()))
        .unwrap_or(f64::INFINITY)
        .abs();
    ensure(diff < 1e-10, || format!("L(9): smoothed and plain differ by {diff:e}"))?;
    let one = with_threads(1, || period(10, &e, 20)).map_err(|e| e.to_string())?;
    let many = with_threads(threads.max(2), || period(10, &e, 20)).map_err(|e| e.to_string())?;
    ensure(one.value.mid_rational() == many.value.mid_rational() && one.value.rad == many.value.rad, || {
        "period differs across thread counts".into()
    })?;
    ensure(one.value.mid.is_positive(), || "period is not positive".into())?;
    let probe = rationality_probe(&e, &[20, 30]).map_err(|e| e.to_string())?;
    let r5 = probe.r5.ok_or("ρ_5 did not stabilize")?;
    let r9 = probe.r9.ok_or("ρ_9 did not stabilize")?;
    Ok(format!(
        "L(9) methods agree to {diff:.1e}; period = {} ± {}; ρ_5 = {r5}, ρ_9 = {r9}",
        one.to_json().value,
        one.to_json().error_bound
    ))
}
