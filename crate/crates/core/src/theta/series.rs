use super::characteristic::Characteristic;
use crate::exactnum::{floor_i64, int, rat, to_f64, CycNum, Rational};
use crate::qseries::{Bound, Coeff, PuiseuxSeries, QSeries, YLaurent};
use crate::report::VerifyReport;
use num_traits::{Signed, Zero};
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThetaError {
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(Rational),
    #[error("characteristic {0} is outside 0 <= eps <= 1 required by the product form")]
    OutsideWindow(Characteristic),
}

/// Integers n with scale·(n+ε/2)²/2 < cutoff, i.e. |n + ε/2| < sqrt(2·cutoff/scale).
fn n_range(eps: &Rational, scale: &Rational, cutoff: &Rational) -> std::ops::RangeInclusive<i64> {
    if !cutoff.is_positive() {
        return 1..=0;
    }
    let r = (2.0 * to_f64(cutoff) / to_f64(scale)).sqrt() + 1.0;
    let shift = to_f64(eps) / 2.0;
    let lo = (-r - shift).floor() as i64 - 1;
    let hi = (r - shift).ceil() as i64 + 1;
    lo..=hi
}

fn theta_terms(ch: &Characteristic, scale: &Rational, cutoff: &Rational, deriv: bool) -> Result<QSeries, ThetaError> {
    if !scale.is_positive() {
        return Err(ThetaError::NonPositiveScale(scale.clone()));
    }
    let half = rat(1, 2);
    let two_i = CycNum::i().scale(&int(2));
    let mut terms = Vec::new();
    for n in n_range(&ch.eps, scale, cutoff) {
        let m = int(n) + &ch.eps * &half;
        let e = scale * &m * &m * &half;
        if &e >= cutoff {
            continue;
        }
        let mut c = CycNum::e(&(&m * &ch.delta * &half));
        if deriv {
            if m.is_zero() {
                continue;
            }
            c = (&c * &two_i).scale(&m);
        }
        terms.push((e, c));
    }
    Ok(PuiseuxSeries::from_terms(terms, Bound::Finite(cutoff.clone())))
}

/// θ[ε;δ](sτ, 0) from the defining series, exact below `cutoff`.
pub fn theta_const(ch: &Characteristic, scale: &Rational, cutoff: &Rational) -> Result<QSeries, ThetaError> {
    theta_terms(ch, scale, cutoff, false)
}

/// θ'[ε;δ](sτ, 0)/π: 2i·Σ (n+ε/2)·e((n+ε/2)δ/2)·q^{s(n+ε/2)²/2}.
pub fn theta_deriv_reduced(ch: &Characteristic, scale: &Rational, cutoff: &Rational) -> Result<QSeries, ThetaError> {
    theta_terms(ch, scale, cutoff, true)
}

/// 1 + c·q^a as an exact polynomial known below `cutoff`.
fn binomial(c: CycNum, a: Rational, cutoff: &Rational) -> QSeries {
    PuiseuxSeries::from_terms(vec![(Rational::zero(), CycNum::one()), (a, c)], Bound::Finite(cutoff.clone()))
}

/// θ[ε;δ](τ, 0) from the triple-product form
/// e(εδ/4)·q^{ε²/8}·Π (1−qⁿ)(1+e(δ/2)q^{n−(1−ε)/2})(1+e(−δ/2)q^{n−(1+ε)/2}).
pub fn theta_const_product(ch: &Characteristic, cutoff: &Rational) -> Result<QSeries, ThetaError> {
    let zero = Rational::zero();
    if ch.eps < zero || ch.eps > int(1) {
        return Err(ThetaError::OutsideWindow(ch.clone()));
    }
    let half = rat(1, 2);
    let lead_exp = &ch.eps * &ch.eps / int(8);
    let t = cutoff - &lead_exp;
    if !t.is_positive() {
        return Ok(QSeries::zero_to(Bound::Finite(cutoff.clone())));
    }
    let up = CycNum::e(&(&ch.delta * &half));
    let down = up.conj();
    let a_shift = (int(1) - &ch.eps) * &half;
    let b_shift = (int(1) + &ch.eps) * &half;
    // every factor with n > t + 1 contributes only exponents ≥ n − 1 ≥ t
    let n_max = floor_i64(&t) + 2;
    let mut prod = QSeries::one().truncate(&Bound::Finite(t.clone()));
    for n in 1..=n_max {
        let nr = int(n);
        if nr < t {
            prod = &prod * &binomial(CycNum::from_int(-1), nr.clone(), &t);
        }
        let ea = &nr - &a_shift;
        if ea < t {
            prod = &prod * &binomial(up.clone(), ea, &t);
        }
        let eb = &nr - &b_shift;
        if eb < t {
            prod = &prod * &binomial(down.clone(), eb, &t);
        }
        if prod.is_zero() {
            break;
        }
    }
    let lead = CycNum::e(&(&ch.eps * &ch.delta / int(4)));
    let out = &QSeries::monomial(lead, &lead_exp) * &prod;
    Ok(out.truncate(&Bound::Finite(cutoff.clone())))
}

/// Σ x^{n²/2} yⁿ against Π(1−xⁿ)(1+x^{n−1/2}y)(1+x^{n−1/2}y⁻¹) as series in x over
/// Laurent polynomials in y, compared below `x_cutoff`.
pub fn jacobi_triple_product_check(x_cutoff: &Rational) -> VerifyReport {
    let start = Instant::now();
    let half = rat(1, 2);
    let bound = Bound::Finite(x_cutoff.clone());
    let lhs_terms =
        n_range(&Rational::zero(), &int(1), x_cutoff).map(|n| (int(n) * int(n) * &half, YLaurent::y_pow(n)));
    let lhs = PuiseuxSeries::from_terms(lhs_terms, bound.clone());

    let poly = |c: YLaurent, e: Rational| {
        PuiseuxSeries::from_terms(vec![(Rational::zero(), YLaurent::one()), (e, c)], bound.clone())
    };
    let mut rhs = PuiseuxSeries::<YLaurent>::one().truncate(&bound);
    let n_max = floor_i64(x_cutoff) + 2;
    for n in 1..=n_max {
        let nr = int(n);
        if &nr < x_cutoff {
            rhs = &rhs * &poly(YLaurent::from_rational(&int(-1)), nr.clone());
        }
        let e = &nr - &half;
        if &e < x_cutoff {
            rhs = &rhs * &poly(YLaurent::y_pow(1), e.clone());
            rhs = &rhs * &poly(YLaurent::y_pow(-1), e);
        }
    }
    VerifyReport::from_comparison("jacobi-triple-product", &lhs.compare(&rhs), start.elapsed())
}
