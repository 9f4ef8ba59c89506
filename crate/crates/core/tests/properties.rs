use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use heptalift::density::{beta_p, triples_up_to};
use heptalift::exactnum::{int, rat, rat_pow, ratfun_expand, Ring, Symbol, VarT};
use heptalift::genfun::{gamma_k, gamma_k_derived};
use heptalift::jordan::random_word;
use heptalift::lift::{fourier_coeff, EigenData};
use heptalift::padic::elementary_divisors;
use heptalift::siegel::{f_poly, f_poly_oracle, symmetric_coefficients, tilde_f};
use heptalift::{ElemDivisors, JordanElement, LaurentPoly, Octonion, Rational, SpecialValue, TruncSeries};

type P = LaurentPoly<Rational, VarT>;

fn octonion() -> impl Strategy<Value = Octonion<BigInt>> {
    prop::array::uniform8(-20i64..=20).prop_map(|c| Octonion::from_coords(c.map(BigInt::from)))
}

fn element() -> impl Strategy<Value = JordanElement<BigInt>> {
    (prop::array::uniform3(-9i64..=9), octonion(), octonion(), octonion()).prop_map(|(d, x, y, z)| {
        JordanElement::new(BigInt::from(d[0]), BigInt::from(d[1]), BigInt::from(d[2]), x, y, z)
    })
}

fn small_element() -> impl Strategy<Value = JordanElement<BigInt>> {
    let o = || prop::array::uniform8(-1i64..=1).prop_map(|c| Octonion::from_coords(c.map(BigInt::from)));
    (prop::array::uniform3(-3i64..=3), o(), o(), o()).prop_map(|(d, x, y, z)| {
        JordanElement::new(BigInt::from(d[0]), BigInt::from(d[1]), BigInt::from(d[2]), x, y, z)
    })
}

fn poly() -> impl Strategy<Value = P> {
    prop::collection::vec((-3i64..=4, -5i64..=5, 1i64..=3), 0..5)
        .prop_map(|ts| P::from_terms(ts.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
}

fn unit_factor() -> impl Strategy<Value = P> {
    prop::collection::vec(-4i64..=4, 1..4).prop_map(|cs| {
        let mut t = vec![(0, int(1))];
        t.extend(cs.into_iter().enumerate().map(|(i, c)| (i as i64 + 1, int(c))));
        P::from_terms(t)
    })
}

fn nonneg_poly() -> impl Strategy<Value = P> {
    prop::collection::vec(-5i64..=5, 0..5)
        .prop_map(|cs| P::from_terms(cs.into_iter().enumerate().map(|(i, c)| (i as i64, int(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.times(&b), b.times(&a));
    }

    #[test]
    fn series_ring_axioms(a in nonneg_poly(), b in nonneg_poly(), c in nonneg_poly()) {
        let s = |p: &P| TruncSeries::from_poly(p, 6).unwrap();
        let (a, b, c) = (s(&a), s(&b), s(&c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn ratfun_expand_inverts(f in nonneg_poly(), gs in prop::collection::vec(unit_factor(), 1..4)) {
        let m = 8;
        let mut acc = ratfun_expand(&f, &gs, m).unwrap();
        for g in &gs {
            acc = acc.mul(&TruncSeries::from_poly(g, m).unwrap());
        }
        prop_assert_eq!(acc, TruncSeries::from_poly(&f, m).unwrap());
    }

    #[test]
    fn special_values_commute(q1 in (-9i64..=9, 1i64..=9), q2 in (-9i64..=9, 1i64..=9),
                              h1 in -8i64..=8, h2 in -8i64..=8, r in 0u32..3) {
        let a = SpecialValue::rational(rat(q1.0, q1.1)).mul(&SpecialValue::pi_half(h1));
        let b = SpecialValue::rational(rat(q2.0, q2.1))
            .mul(&SpecialValue::pi_half(h2))
            .mul(&SpecialValue::symbol(Symbol::SymSq(4 * r + 1), 1))
            .add(&SpecialValue::symbol(Symbol::Zeta(3), 1));
        let ab = serde_json::to_string(&a.mul(&b)).unwrap();
        let ba = serde_json::to_string(&b.mul(&a)).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn octonion_alternative_and_composition(x in octonion(), y in octonion()) {
        prop_assert_eq!(x.mul(&x).mul(&y), x.mul(&x.mul(&y)));
        prop_assert_eq!(y.mul(&x).mul(&x), y.mul(&x.mul(&x)));
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.mul(&y).trace(), y.mul(&x).trace());
        prop_assert_eq!(x.mul(&y).conj(), y.conj().mul(&x.conj()));
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn determinant_derivative(x in element(), y in element()) {
        // det(X + tY) = det X + t (X×X, Y) + t² (X, Y×Y) + t³ det Y
        let d = |t: i64| x.add(&y.scale(&BigInt::from(t))).det();
        let linear = (d(1) - d(-1)) / BigInt::from(2) - y.det();
        prop_assert_eq!(linear, x.adjoint().inner(&y));
    }

    #[test]
    fn adjoint_of_adjoint(x in element()) {
        prop_assert_eq!(x.adjoint().adjoint(), x.scale(&x.det()));
        prop_assert_eq!(x.inner(&x.adjoint()), x.det() * BigInt::from(3));
    }

    #[test]
    fn generators_scale_det(x in element(), seed in any::<u64>(), len in 0usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, len, false);
        let (gx, nu) = x.apply(&w).unwrap();
        prop_assert_eq!(gx.det(), nu * x.det());
    }

    #[test]
    fn divisors_sum_rule_and_invariance(x in small_element(), seed in any::<u64>()) {
        let det = x.det();
        prop_assume!(!det.is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, 6, true);
        let (gx, nu) = x.apply(&w).unwrap();
        prop_assert!(nu.is_one());
        for p in [2u64, 3, 5] {
            let d = elementary_divisors(&x, p, None).unwrap();
            prop_assert_eq!(d.sum(), heptalift::util::ord_p(&det, p));
            prop_assert_eq!(elementary_divisors(&gx, p, None).unwrap(), d);
            let [a1, a2, a3] = d.a;
            let adj = elementary_divisors(&x.adjoint(), p, None).unwrap();
            prop_assert_eq!(adj, ElemDivisors::new(p, [a2 + a3, a1 + a3, a1 + a2]));
        }
    }

    #[test]
    fn lift_coefficient_is_genus_invariant(d in prop::array::uniform3(1i64..=6), seed in any::<u64>()) {
        let e = EigenData::builtin(10, 50).unwrap();
        let t = JordanElement::<BigInt>::diag_i64(d[0], d[1], d[2]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, 8, true);
        let (gt, _) = t.apply(&w).unwrap();
        prop_assert_eq!(fourier_coeff(&gt, &e).unwrap(), fourier_coeff(&t, &e).unwrap());
    }
}

#[test]
fn beta_recursion_rules() {
    for p in [2u64, 3, 5] {
        for a in triples_up_to(5) {
            let b = |a: [u32; 3]| beta_p(&ElemDivisors::new(p, a));
            let [a1, a2, a3] = a;
            assert_eq!(b([a1 + 1, a2 + 1, a3 + 1]), b(a) * rat_pow(p, 27));
            assert_eq!(b([a2 + a3, a1 + a3, a1 + a2]), b(a) * rat_pow(p, 9 * i64::from(a1 + a2 + a3)));
            if a1 == 0 && a2 < a3 {
                assert_eq!(b([0, a2, a3 + 1]), b(a) * rat_pow(p, 1));
            }
        }
    }
}

#[test]
fn siegel_functional_equation_and_shape() {
    for p in [2u64, 3, 5] {
        for m1 in 0..=3u32 {
            for m2 in 0..=9u32 {
                for m3 in m2..=9u32 {
                    if 3 * m1 + m2 + m3 > 9 {
                        continue;
                    }
                    let s = f_poly(p, [m1, m2, m3]).unwrap();
                    assert_eq!(s, f_poly_oracle(p, [m1, m2, m3]).unwrap());
                    let cs = s.coeffs();
                    assert!(cs[0].is_one());
                    assert_eq!(cs.len() as i64 - 1, s.ord());
                    let t = tilde_f(&s);
                    assert_eq!(t, t.subs_power(-1), "p={p} m=({m1},{m2},{m3})");
                    assert!(symmetric_coefficients(&t, s.ord()).is_ok());
                }
            }
        }
    }
}

#[test]
fn gamma_k_from_residues() {
    for k in 10..=15 {
        assert_eq!(gamma_k_derived(k).unwrap(), gamma_k(k), "k = {k}");
    }
}

#[test]
fn hecke_recurrence_on_diagonal() {
    let e = EigenData::builtin(10, 50).unwrap();
    for p in [2i64, 3] {
        let tau_p = e.a_p(p as u64).unwrap().clone();
        let a = |m: u32| fourier_coeff(&JordanElement::diag_i64(1, 1, p.pow(m)), &e).unwrap();
        let p11 = BigInt::from(p).pow(11);
        for m in 1..=4 {
            assert_eq!(a(m + 1), &tau_p * a(m) - &p11 * a(m - 1), "p={p} m={m}");
        }
    }
}
