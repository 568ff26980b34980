use qtheta::exactnum::{int, rat, CycNum};
use qtheta::identities::registry;
use qtheta::logderiv::{logderiv_oracle, logderiv_reduced, LogDerivError};
use qtheta::theta::{theta_const, Characteristic};
use std::collections::BTreeSet;

fn ch(a: i64, b: i64, c: i64, d: i64) -> Characteristic {
    Characteristic::from_ratios(a, b, c, d)
}

#[test]
fn epsilon_one_examples() {
    let s = logderiv_reduced(&ch(1, 1, 1, 2), &int(4)).unwrap();
    assert_eq!(s.coeff(&int(0)).unwrap(), CycNum::from_int(-1));
    assert_eq!(s.coeff(&int(1)).unwrap(), CycNum::from_int(-4));
    assert!(logderiv_reduced(&ch(1, 1, 0, 1), &int(8)).unwrap().is_zero());
    assert!(matches!(logderiv_reduced(&ch(1, 1, 1, 1), &int(8)), Err(LogDerivError::Pole(_))));
}

#[test]
fn integral_epsilon_zero_vanishes() {
    assert!(logderiv_reduced(&ch(0, 1, 0, 1), &int(8)).unwrap().is_zero());
    assert!(logderiv_reduced(&ch(0, 1, 1, 1), &int(8)).unwrap().is_zero());
}

#[test]
fn half_delta_matches_the_derivative_formula() {
    let six = int(6);
    let s = logderiv_reduced(&ch(0, 1, 1, 2), &six).unwrap();
    let t1 = theta_const(&ch(0, 1, 0, 1), &int(1), &six).unwrap();
    let t2 = theta_const(&ch(0, 1, 0, 1), &int(2), &six).unwrap();
    let want = &(&t2 * &t2) - &(&t1 * &t1);
    assert!(s.compare(&want).agrees());
}

#[test]
fn oracle_examples() {
    let eight = int(8);
    for c in [ch(1, 1, 1, 2), ch(1, 3, 1, 1)] {
        let a = logderiv_reduced(&c, &eight).unwrap();
        let b = logderiv_oracle(&c, &eight).unwrap();
        assert!(a.compare(&b).agrees(), "{c}");
        assert_eq!(a.cutoff(), &qtheta::qseries::Bound::Finite(eight.clone()));
    }
    assert!(logderiv_oracle(&ch(1, 1, 1, 1), &eight).is_err());
}

#[test]
fn closed_forms_match_the_quotient_for_every_registry_characteristic() {
    let eight = int(8);
    let mut chars = BTreeSet::new();
    for r in registry() {
        for c in r.lhs.characteristics().into_iter().chain(r.rhs.characteristics()) {
            chars.insert(c.normalize().ch);
        }
    }
    let mut checked = 0;
    for c in &chars {
        if theta_const(c, &int(1), &eight).unwrap().is_zero() {
            continue;
        }
        let a = logderiv_reduced(c, &eight).unwrap();
        let b = logderiv_oracle(c, &eight).unwrap();
        assert!(a.compare(&b).agrees(), "{c}");
        checked += 1;
    }
    assert_eq!(checked, chars.len() - 1);
}

#[test]
fn characteristics_outside_the_window() {
    let eight = int(8);
    for c in [Characteristic::new(rat(3, 2), rat(1, 2)), Characteristic::new(rat(-1, 3), rat(7, 3))] {
        let a = logderiv_reduced(&c, &eight).unwrap();
        let b = logderiv_oracle(&c, &eight).unwrap();
        assert!(a.compare(&b).agrees(), "{c}");
    }
}
