use proptest::prelude::*;
use qtheta::eta::eta_series;
use qtheta::exactnum::{int, rat, CycNum, Rational};
use qtheta::qseries::{Bound, PuiseuxSeries, QSeries, SeriesError};
use qtheta::theta::{theta_const, Characteristic};

fn series(terms: &[(Rational, i64)], cutoff: Bound) -> QSeries {
    PuiseuxSeries::from_terms(terms.iter().map(|(e, c)| (e.clone(), CycNum::from_int(*c))), cutoff)
}

fn c(n: i64) -> CycNum {
    CycNum::from_int(n)
}

fn agree(a: &QSeries, b: &QSeries) -> bool {
    a.compare(b).agrees()
}

#[test]
fn addition_examples() {
    let a = series(&[(int(0), 1), (rat(1, 2), 2)], Bound::Infinite);
    let b = series(&[(int(0), -1), (int(1), 1)], Bound::Infinite);
    let s = &a + &b;
    assert_eq!(s.terms().map(|(e, c)| (e, c.clone())).collect::<Vec<_>>(), vec![(rat(1, 2), c(2)), (int(1), c(1))]);
    let t = series(&[(int(1), 3)], Bound::Finite(int(5)));
    let z = &t + &QSeries::zero();
    assert_eq!(z.cutoff(), &Bound::Finite(int(5)));
    assert!(agree(&z, &t));
}

#[test]
fn pardecom_through_cutoff_five() {
    let five = int(5);
    let th = |e, d, s: i64| theta_const(&Characteristic::from_ratios(e, 1, d, 1), &int(s), &five).unwrap();
    assert!(agree(&(&th(0, 0, 4) + &th(1, 0, 4)), &th(0, 0, 1)));
}

#[test]
fn multiplication_examples() {
    let t = Bound::Finite(int(10));
    let one_minus_q = series(&[(int(0), 1), (int(1), -1)], Bound::Infinite);
    let geo = series(&(0..10).map(|n| (int(n), 1)).collect::<Vec<_>>(), t.clone());
    let p = &one_minus_q * &geo;
    assert!(agree(&p, &QSeries::one()));
    assert_eq!(p.cutoff(), &t);

    let q8 = QSeries::monomial(c(1), &rat(1, 8));
    let sq = &q8 * &q8;
    assert_eq!(sq.valuation(), Some(rat(1, 4)));

    let eta = eta_series(&int(1), &int(4)).unwrap();
    let cube = &(&eta * &eta) * &eta;
    assert_eq!(cube.coeff(&rat(9, 8)).unwrap(), c(-3));
}

#[test]
fn product_cutoff_rule() {
    let a = series(&[(rat(1, 2), 1), (int(2), 1)], Bound::Finite(int(3)));
    let b = series(&[(int(1), 1)], Bound::Finite(int(4)));
    // min(3 + 1, 4 + 1/2)
    assert_eq!((&a * &b).cutoff(), &Bound::Finite(int(4)));
    let z = QSeries::zero_to(Bound::Finite(int(2)));
    assert_eq!((&a * &z).cutoff(), &Bound::Finite(rat(5, 2)));
    assert!((&a * &QSeries::zero()).is_zero());
    assert_eq!((&a * &QSeries::zero()).cutoff(), &Bound::Infinite);
}

#[test]
fn inversion_examples() {
    let one_minus_q = series(&[(int(0), 1), (int(1), -1)], Bound::Finite(int(8)));
    let inv = one_minus_q.invert().unwrap();
    for n in 0..8 {
        assert_eq!(inv.coeff(&int(n)).unwrap(), c(1));
    }

    let eta = eta_series(&int(1), &int(6)).unwrap();
    let ie = eta.invert().unwrap();
    assert_eq!(ie.valuation(), Some(rat(-1, 24)));
    assert!(agree(&(&eta * &ie), &QSeries::one()));

    let f = series(&[(rat(1, 8), 2), (rat(9, 8), 2)], Bound::Finite(int(6)));
    let fi = f.invert().unwrap();
    assert_eq!(fi.leading().map(|(e, c)| (e, c.clone())), Some((rat(-1, 8), CycNum::from_rational(&rat(1, 2)))));
    assert_eq!(fi.coeff(&rat(7, 8)).unwrap(), CycNum::from_rational(&rat(-1, 2)));
    assert!(agree(&(&f * &fi), &QSeries::one()));

    assert_eq!(QSeries::zero_to(Bound::Finite(int(3))).invert().unwrap_err(), SeriesError::InvertZero);
}

#[test]
fn rescale_examples() {
    let h = QSeries::monomial(c(1), &rat(1, 2));
    assert_eq!(h.rescale(&int(4)).unwrap().valuation(), Some(int(2)));
    let eta6 = eta_series(&int(1), &int(2)).unwrap().rescale(&rat(1, 6)).unwrap();
    assert_eq!(eta6.valuation(), Some(rat(1, 144)));
    assert_eq!(eta6.cutoff(), &Bound::Finite(rat(1, 3)));
    let t3 = qtheta::weight1::theta3(&int(1), &int(5)).unwrap().rescale(&int(2)).unwrap();
    assert!(agree(&t3, &qtheta::weight1::theta3(&int(2), &int(10)).unwrap()));
}

#[test]
fn coefficient_queries() {
    let th = theta_const(&Characteristic::from_ratios(0, 1, 0, 1), &int(1), &int(4)).unwrap();
    assert_eq!(th.coeff(&rat(1, 2)).unwrap(), c(2));
    assert_eq!((&th * &th).coeff(&rat(5, 2)).unwrap(), c(8));
    let t3 = qtheta::weight1::theta3(&int(1), &int(4)).unwrap();
    assert_eq!(t3.coeff(&int(1)).unwrap(), c(0));
    assert!(matches!(th.coeff(&int(4)), Err(SeriesError::BeyondCutoff { .. })));
}

#[test]
fn twist_and_restrict_examples() {
    let five = int(5);
    let half = rat(1, 2);
    let th = |s: i64| theta_const(&Characteristic::from_ratios(0, 1, 0, 1), &int(s), &five).unwrap();
    let sq = &th(1) * &th(1);
    let sq2 = &th(2) * &th(2);

    let alt = sq.twist(&half, |n| c(if n % 2 == 0 { 1 } else { -1 })).unwrap();
    assert!(agree(&alt, &(&(&sq2 + &sq2) - &sq)));
    assert!(agree(&sq.twist(&half, |_| c(1)).unwrap(), &sq));

    let odd = sq.restrict(&half, |n| n % 2 != 0).unwrap();
    assert!(agree(&odd, &(&sq - &sq2)));
    let chi4 = odd.twist(&half, |n| c(qtheta::weight1::kronecker(-4, n) as i64)).unwrap();
    assert!(agree(&chi4, &odd));
    assert!(agree(&sq.restrict(&half, |_| true).unwrap(), &sq));

    let t3 = qtheta::weight1::theta3(&int(1), &five).unwrap();
    let t3_3 = qtheta::weight1::theta3(&int(3), &five).unwrap();
    assert!(agree(&t3.restrict(&half, |n| n % 3 != 0).unwrap(), &(&t3 - &t3_3)));

    assert!(matches!(sq.twist(&int(1), |_| c(1)), Err(SeriesError::OffGrid { .. })));
}

#[test]
fn generators_are_cutoff_sound() {
    let lo = int(6);
    let hi = int(11);
    for (e, d) in [(1, 4), (2, 3), (1, 2), (0, 1)] {
        let ch = Characteristic::from_ratios(e, 4, d, 3);
        let a = theta_const(&ch, &rat(1, 2), &lo).unwrap();
        let b = theta_const(&ch, &rat(1, 2), &hi).unwrap().truncate(&Bound::Finite(lo.clone()));
        assert!(agree(&a, &b) && a.cutoff() == b.cutoff());
    }
    for s in [rat(1, 6), int(1), rat(3, 2)] {
        let a = eta_series(&s, &lo).unwrap();
        let b = eta_series(&s, &hi).unwrap().truncate(&Bound::Finite(lo.clone()));
        assert!(agree(&a, &b));
    }
}

fn poly() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0i64..48, -4i64..=4), 0..12)
}

fn from_poly(p: &[(i64, i64)], cutoff: Bound) -> QSeries {
    PuiseuxSeries::from_terms(p.iter().map(|(k, v)| (rat(*k, 4), c(*v))), cutoff)
}

fn bound(t: i64) -> Bound {
    Bound::Finite(rat(t, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), d in poly(), ta in 2i64..24, tb in 2i64..24, td in 2i64..24) {
        let (a, b, d) = (from_poly(&a, bound(ta)), from_poly(&b, bound(tb)), from_poly(&d, bound(td)));
        prop_assert!(agree(&(&(&a * &b) * &d), &(&a * &(&b * &d))));
        prop_assert!(agree(&(&a * &(&b + &d)), &(&(&a * &b) + &(&a * &d))));
        prop_assert!(agree(&(&a * &b), &(&b * &a)));
        prop_assert!(agree(&(&(&a + &b) + &d), &(&a + &(&b + &d))));
    }

    #[test]
    fn rescale_inverts(a in poly(), ta in 2i64..24, p in 1i64..7, q in 1i64..7) {
        let a = from_poly(&a, bound(ta));
        let s = rat(p, q);
        let back = a.rescale(&s).unwrap().rescale(&(int(1) / &s)).unwrap();
        prop_assert!(agree(&back, &a));
        prop_assert_eq!(back.cutoff(), a.cutoff());
    }

    /// Truncating exact polynomials and multiplying agrees with the exact product below
    /// the cutoff the product claims.
    #[test]
    fn product_cutoff_is_sound(a in poly(), b in poly(), ta in 1i64..24, tb in 1i64..24) {
        let exact = &from_poly(&a, Bound::Infinite) * &from_poly(&b, Bound::Infinite);
        let prod = &from_poly(&a, bound(ta)) * &from_poly(&b, bound(tb));
        let cmp = prod.compare(&exact);
        prop_assert!(cmp.agrees());
        prop_assert_eq!(&cmp.window, prod.cutoff());
    }

    #[test]
    fn inverse_multiplies_back(a in poly(), lead in 1i64..4, ta in 4i64..24) {
        let mut p = a.clone();
        p.retain(|(k, _)| *k > 0);
        p.push((0, lead));
        let s = from_poly(&p, bound(ta));
        let inv = s.invert().unwrap();
        prop_assert!(agree(&(&s * &inv), &QSeries::one()));
    }

    #[test]
    fn eta_valuation(num in 1i64..12, den in 1i64..8) {
        let s = rat(num, den);
        let e = eta_series(&s, &int(4)).unwrap();
        let v = &s / int(24);
        if v < int(4) {
            prop_assert_eq!(e.valuation(), Some(v));
        }
    }
}
