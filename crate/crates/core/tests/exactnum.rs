use num_complex::Complex64;
use proptest::prelude::*;
use qtheta::exactnum::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zeta24_element() -> impl Strategy<Value = CycNum> {
    prop::collection::vec((0i64..24, -20i64..=20, 1i64..=6), 0..6).prop_map(|parts| {
        parts.into_iter().fold(CycNum::zero(), |acc, (k, n, d)| &acc + &CycNum::zeta(24, k).scale(&rat(n, d)))
    })
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}

#[test]
fn spec_arithmetic_examples() {
    let s = &CycNum::zeta(8, 1) + &CycNum::zeta(8, 7);
    assert_eq!(s, CycNum::sqrt2());
    assert!((s.to_complex().re - 1.41421356).abs() < 1e-8);
    let d = &CycNum::zeta(3, 1) - &CycNum::zeta(3, 2);
    assert_eq!(d, &CycNum::i() * &CycNum::sqrt3());
    assert!((d.to_complex().im - 1.7320508).abs() < 1e-7);
    let one = CycNum::one();
    let q = cyc_arith(&(&one + &CycNum::i()), &(&one - &CycNum::i()), CycOp::Div).unwrap();
    assert_eq!(q, CycNum::i());
}

#[test]
fn precision_bridge() {
    let v = CycNum::sqrt2().to_complex_prec(12);
    assert!((v.re - 2f64.sqrt()).abs() < 1e-12);
    let z = CycNum::zeta(3, 1).scale(&int(-2)).to_complex_prec(10);
    assert!((z - Complex64::new(1.0, -(3f64.sqrt()))).norm() < 1e-10);
}

#[test]
fn orders_stay_small() {
    // e(m·δ/2) with m ∈ ½ + ⅛ℤ and δ ∈ ¼ℤ lands in ℚ(ζ64)
    let x = CycNum::e(&rat(3, 64));
    assert!(x.order() <= 64);
    assert_eq!(x.pow(64).unwrap(), CycNum::one());
    assert_eq!(totient(64), 32);
    assert_eq!(totient(36), 12);
}

#[test]
fn rational_parsing() {
    assert_eq!(parse_rational("17/2"), Some(rat(17, 2)));
    assert_eq!(parse_rational("-3"), Some(int(-3)));
    assert_eq!(parse_rational("x"), None);
    assert_eq!(parse_rational("1/0"), None);
}

#[test]
fn canonical_zero_after_subtraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let k = rng.gen_range(0..24);
        let n = rng.gen_range(-20..=20);
        let a = &CycNum::zeta(24, k).scale(&rat(n, 3)) + &CycNum::sqrt3();
        assert!((&a - &a).is_zero());
        assert!((&a - &a).coeffs().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms_in_q_zeta24(a in zeta24_element(), b in zeta24_element(), c in zeta24_element()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), CycNum::one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn complex_embedding_is_a_ring_homomorphism(a in zeta24_element(), b in zeta24_element()) {
        prop_assert!(close((&a + &b).to_complex(), a.to_complex() + b.to_complex(), 1e-10));
        prop_assert!(close((&a * &b).to_complex(), a.to_complex() * b.to_complex(), 1e-10));
    }

    #[test]
    fn conjugation_is_an_involution(a in zeta24_element()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!(close(a.conj().to_complex(), a.to_complex().conj(), 1e-10));
    }

    #[test]
    fn embedding_round_trips(a in zeta24_element(), m in 1u32..4) {
        let e = a.embed(24 * m).unwrap();
        prop_assert_eq!(e, a);
    }

    #[test]
    fn roots_of_unity_have_their_order(n in 1u32..80, k in -200i64..200) {
        let z = CycNum::zeta(n, k);
        prop_assert_eq!(z.pow(n as i64).unwrap(), CycNum::one());
    }
}
