use num_complex::Complex64;
use qtheta::eta::eta_series;
use qtheta::exactnum::{int, rat, CycNum};
use qtheta::identities::{eval_expr, registry, Expr};
use qtheta::numeric::*;
use qtheta::qseries::QSeries;
use qtheta::theta::{theta_const, theta_deriv_numeric, theta_numeric, Characteristic};
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pt(re: f64, im: f64) -> EvalPoint {
    EvalPoint::new(c(re, im), 1e-15).unwrap()
}

#[test]
fn constant_series_is_one_everywhere() {
    for p in [pt(0.0, 1.0), pt(0.3, 0.2), pt(-2.0, 4.0)] {
        let (v, tail) = ps_eval(&QSeries::one(), &p).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(tail, 0.0);
    }
}

#[test]
fn lower_half_plane_is_rejected() {
    assert!(EvalPoint::new(c(0.0, -1.0), 1e-9).is_err());
    assert!(EvalPoint::new(c(0.5, 0.0), 1e-9).is_err());
}

#[test]
fn theta00_at_2i_matches_direct_sum() {
    let s = theta_const(&Characteristic::from_ratios(0, 1, 0, 1), &int(1), &int(4)).unwrap();
    let p = pt(0.0, 2.0);
    let (v, tail) = ps_eval(&s, &p).unwrap();
    // 1 + 2Σ e^{−2πn²}, summed by hand
    let direct: f64 = 1.0 + 2.0 * (1..10).map(|n| (-2.0 * PI * (n * n) as f64).exp()).sum::<f64>();
    assert!((v - c(direct, 0.0)).norm() < 1e-10, "{v} vs {direct}");
    assert!(tail < 1e-10);
    let numeric = theta_numeric(&Characteristic::from_ratios(0, 1, 0, 1), c(0.0, 2.0), c(0.0, 0.0), 1e-15).unwrap();
    assert!((v - numeric).norm() < 1e-10);
}

#[test]
fn eta_at_i_matches_product_and_closed_form() {
    let s = eta_series(&int(1), &int(8)).unwrap();
    let (v, _) = ps_eval(&s, &pt(0.0, 1.0)).unwrap();
    let q: f64 = (-2.0 * PI).exp();
    let prod: f64 = q.powf(1.0 / 24.0) * (1..60).map(|n| 1.0 - q.powi(n)).product::<f64>();
    assert!((v.re - prod).abs() < 1e-10 && v.im.abs() < 1e-12);
    // η(i) = Γ(1/4)/(2π^{3/4})
    let gamma_quarter = 3.625_609_908_221_908_f64;
    assert!((v.re - gamma_quarter / (2.0 * PI.powf(0.75))).abs() < 1e-10);
}

#[test]
fn tail_estimate_bounds_the_truncation_error() {
    let p = pt(0.1, 0.5);
    let e = Expr::Eta(int(1)).pow(3);
    let exact = eval_direct(&e, &p).unwrap();
    for t in [1, 2, 3, 5] {
        let (v, tail) = ps_eval(&eval_expr(&e, &int(t)).unwrap(), &p).unwrap();
        assert!((v - exact).norm() <= tail * 1.0001 + 1e-14, "cutoff {t}: error {} tail {tail}", (v - exact).norm());
    }
}

#[test]
fn spec_cross_checks() {
    let r = cross_check_identity("clasder", &EvalPoint::new(c(0.0, 1.0), 1e-12).unwrap(), None).unwrap();
    assert!(r.max() < 1e-9, "{r:?}");
    let r = cross_check_identity("eq-11/3", &EvalPoint::new(c(0.1, 0.9), 1e-12).unwrap(), None).unwrap();
    assert!(r.max() < 1e-9, "{r:?}");
    assert!(matches!(
        cross_check_identity("nope", &EvalPoint::new(c(0.0, 1.0), 1e-12).unwrap(), None),
        Err(NumericError::UnknownId(_))
    ));
}

#[test]
fn every_record_at_5i_agrees_to_roundoff() {
    let p = EvalPoint::new(c(0.0, 5.0), 1e-16).unwrap();
    for r in registry() {
        let x = cross_check_identity(&r.id, &p, None).unwrap();
        assert!(x.max() < 1e-14, "{}: {x:?}", r.id);
    }
}

#[test]
fn every_record_at_three_points() {
    for tau in [c(0.0, 1.0), c(0.1, 0.8), c(-0.4, 1.3)] {
        let p = EvalPoint::new(tau, 1e-13).unwrap();
        // |q|^T < 1e-12
        let t = p.cutoff_for(1e-12);
        for r in registry() {
            let x = cross_check_identity(&r.id, &p, Some(&t)).unwrap();
            assert!(x.max() < 1e-9 && x.tail < 1e-9, "{} at {tau}: {x:?}", r.id);
        }
    }
}

fn derivative_nodes(e: &Expr) -> Vec<(Characteristic, qtheta::exactnum::Rational)> {
    let mut out = Vec::new();
    e.walk(&mut |n| {
        if let Expr::ThetaDerivReduced(ch, s) = n {
            out.push((ch.clone(), s.clone()));
        }
    });
    out
}

#[test]
fn pi_reduction_is_consistent_at_i() {
    let p = EvalPoint::new(c(0.0, 1.0), 1e-14).unwrap();
    let t = p.cutoff_for(1e-13);
    let derivs: Vec<_> = registry().iter().filter(|r| r.is_derivative()).collect();
    assert!(derivs.len() >= 39);
    for r in derivs {
        let x = cross_check_identity(&r.id, &p, Some(&t)).unwrap();
        let (l, rr) = (x.lhs * PI, x.rhs * PI);
        assert!((l - rr).norm() < 1e-8 * l.norm().max(1.0), "{}", r.id);
        for (ch, s) in derivative_nodes(&r.lhs) {
            let exact = eval_expr(&Expr::ThetaDerivReduced(ch.clone(), s.clone()), &t).unwrap();
            let (v, _) = ps_eval(&exact, &p).unwrap();
            let s_f = qtheta::exactnum::to_f64(&s);
            let unreduced = theta_deriv_numeric(&ch, p.tau * s_f, c(0.0, 0.0), 1e-15).unwrap();
            assert!((v * PI - unreduced).norm() < 1e-8 * unreduced.norm().max(1.0), "{} {ch:?}", r.id);
        }
    }
}

#[test]
fn scalars_embed_as_expected() {
    let p = pt(0.0, 1.0);
    let sqrt3 = &CycNum::zeta(12, 1) + &CycNum::zeta(12, 11);
    let v = eval_direct(&Expr::Scalar(sqrt3), &p).unwrap();
    assert!((v - c(3f64.sqrt(), 0.0)).norm() < 1e-14);
    let x = eval_direct(&Expr::Scalar(CycNum::from_rational(&rat(-1, 3))), &p).unwrap();
    assert!((x - c(-1.0 / 3.0, 0.0)).norm() < 1e-15);
}

#[test]
fn complex_parsing() {
    assert_eq!(parse_complex("0+1i"), Some(c(0.0, 1.0)));
    assert_eq!(parse_complex("0.1+0.8i"), Some(c(0.1, 0.8)));
    assert_eq!(parse_complex("-0.4+1.3i"), Some(c(-0.4, 1.3)));
    assert_eq!(parse_complex("0-1i"), Some(c(0.0, -1.0)));
    assert_eq!(parse_complex("i"), Some(c(0.0, 1.0)));
    assert_eq!(parse_complex("2"), Some(c(2.0, 0.0)));
    assert_eq!(parse_complex("x"), None);
}
