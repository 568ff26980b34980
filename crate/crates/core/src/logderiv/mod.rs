//! (θ'/θ)(τ, 0)/π from the geometric-series expansion of the triple product, and the
//! quotient of generated series it must equal.

use crate::exactnum::{int, rat, CycNum, Rational};
use crate::qseries::{Bound, PuiseuxSeries, QSeries, SeriesError};
use crate::theta::{theta_const, theta_deriv_reduced, Characteristic, ThetaError};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogDerivError {
    #[error("θ{0}(τ, 0) vanishes identically, so its log-derivative has a pole")]
    Pole(Characteristic),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn accumulate(acc: &mut BTreeMap<Rational, CycNum>, e: Rational, c: &CycNum) {
    let slot = acc.entry(e).or_insert_with(CycNum::zero);
    *slot = &*slot + c;
}

/// Successive powers β, β², … as exact cyclotomic numbers.
fn powers(beta: &CycNum, count: i64) -> Vec<CycNum> {
    let mut out = Vec::with_capacity(count.max(0) as usize);
    let mut p = CycNum::one();
    for _ in 0..count {
        p = &p * beta;
        out.push(p.clone());
    }
    out
}

/// Closed form for a characteristic in the window 0 ≤ ε ≤ 1.
fn closed_form(ch: &Characteristic, cutoff: &Rational) -> Result<QSeries, LogDerivError> {
    let one = Rational::one();
    let half = rat(1, 2);
    let beta = ch.beta();
    let mut acc: BTreeMap<Rational, CycNum> = BTreeMap::new();
    let constant;
    if ch.eps == one {
        if beta.is_one() {
            return Err(LogDerivError::Pole(ch.clone()));
        }
        // (1+β)/(2(1−β)) + Σ_N Σ_{l|N} (β^l − β̄^l) q^N
        let num = &CycNum::one() + &beta;
        let den = (&CycNum::one() - &beta).scale(&int(2));
        constant = num.checked_div(&den).expect("β ≠ 1");
        let lmax = crate::exactnum::ceil_i64(cutoff) - 1;
        let pw = powers(&beta, lmax.max(0));
        for l in 1..=lmax {
            let c = &pw[(l - 1) as usize] - &pw[(l - 1) as usize].conj();
            if c.is_zero() {
                continue;
            }
            let mut n = 1;
            while int(l * n) < *cutoff {
                accumulate(&mut acc, int(l * n), &c);
                n += 1;
            }
        }
    } else {
        // ε/2 + Σ_{n,l} (β^l q^{l(n−(1+ε)/2)} − β̄^l q^{l(n−(1−ε)/2)})
        constant = CycNum::from_rational(&(&ch.eps * &half));
        let a0 = (&one - &ch.eps) * &half;
        let b0 = (&one + &ch.eps) * &half;
        // the smallest exponent for a given l is l·(1−ε)/2, which bounds l
        let lmax = crate::exactnum::ceil_i64(&(cutoff / &a0)) - 1;
        let pw = powers(&beta, lmax.max(0));
        for l in 1..=lmax {
            let bl = &pw[(l - 1) as usize];
            let bl_bar = bl.conj();
            let lr = int(l);
            let mut n = 0i64;
            loop {
                let e1 = &lr * (int(n) + &a0);
                if &e1 >= cutoff {
                    break;
                }
                accumulate(&mut acc, e1, bl);
                let e2 = &lr * (int(n) + &b0);
                if &e2 < cutoff {
                    accumulate(&mut acc, e2, &-&bl_bar);
                }
                n += 1;
            }
        }
    }
    let two_i = CycNum::i().scale(&int(2));
    let mut terms: Vec<(Rational, CycNum)> = vec![(Rational::zero(), constant)];
    terms.extend(acc);
    let s = PuiseuxSeries::from_terms(
        terms.into_iter().map(|(e, c)| (e, crate::weight1::collapse(&two_i * &c))),
        Bound::Finite(cutoff.clone()),
    );
    Ok(s)
}

/// (θ'/θ)[ε;δ](τ, 0)/π as an exact series below `cutoff`. Characteristics outside the
/// window are first normalized; a flip z ↦ −z negates the result.
pub fn logderiv_reduced(ch: &Characteristic, cutoff: &Rational) -> Result<QSeries, LogDerivError> {
    let norm = ch.normalize();
    let s = closed_form(&norm.ch, cutoff)?;
    Ok(if norm.z_flipped { -&s } else { s })
}

/// θ'/π · θ⁻¹ from the generated series, used as an independent check of `logderiv_reduced`.
/// The theta constant is generated with enough headroom past `cutoff` for the inverse to
/// reach it; the headroom is raised if the true valuation exceeds the first guess.
pub fn logderiv_oracle(ch: &Characteristic, cutoff: &Rational) -> Result<QSeries, LogDerivError> {
    let one = int(1);
    let half_eps = &ch.eps * rat(1, 2);
    let frac = &half_eps - half_eps.floor();
    let dist = if frac > rat(1, 2) { &one - &frac } else { frac };
    let mut v = &dist * &dist * rat(1, 2);
    let bound = Bound::Finite(cutoff.clone());
    for _ in 0..8 {
        let work = cutoff + &v * int(2) + &one;
        let th = theta_const(ch, &one, &work)?;
        match th.valuation() {
            None => return Err(LogDerivError::Pole(ch.clone())),
            Some(actual) if actual > v => {
                v = actual;
                continue;
            }
            Some(_) => {}
        }
        let d = theta_deriv_reduced(ch, &one, &work)?;
        let out = &d * &th.invert()?;
        if out.cutoff() >= &bound {
            return Ok(out.truncate(&bound));
        }
        v = &v + &one;
    }
    Err(LogDerivError::Pole(ch.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(a: i64, b: i64, c: i64, d: i64) -> Characteristic {
        Characteristic::from_ratios(a, b, c, d)
    }

    #[test]
    fn eps_one_delta_half() {
        let s = logderiv_reduced(&ch(1, 1, 1, 2), &int(4)).unwrap();
        assert_eq!(s.coeff(&int(0)).unwrap(), CycNum::from_int(-1));
        assert_eq!(s.coeff(&int(1)).unwrap(), CycNum::from_int(-4));
    }

    #[test]
    fn vanishing_cases() {
        for c in [ch(1, 1, 0, 1), ch(0, 1, 0, 1), ch(0, 1, 1, 1)] {
            assert!(logderiv_reduced(&c, &int(6)).unwrap().is_zero(), "{c}");
        }
        assert_eq!(logderiv_reduced(&ch(1, 1, 1, 1), &int(4)).unwrap_err(), LogDerivError::Pole(ch(1, 1, 1, 1)));
        assert!(logderiv_oracle(&ch(1, 1, 1, 1), &int(4)).is_err());
    }

    #[test]
    fn closed_form_matches_quotient() {
        for c in [ch(1, 1, 1, 2), ch(1, 3, 1, 1), ch(1, 4, 1, 2), ch(0, 1, 1, 3), ch(3, 4, 3, 2), ch(2, 3, 5, 3)] {
            let a = logderiv_reduced(&c, &int(8)).unwrap();
            let b = logderiv_oracle(&c, &int(8)).unwrap();
            let cmp = a.compare(&b);
            assert!(cmp.agrees(), "{c}: {:?}", cmp.first_mismatch);
            assert_eq!(cmp.window, Bound::Finite(int(8)));
        }
    }

    #[test]
    fn normalization_flips_sign() {
        let c = ch(3, 2, 1, 2);
        let a = logderiv_reduced(&c, &int(6)).unwrap();
        let b = logderiv_oracle(&c, &int(6)).unwrap();
        assert!(a.compare(&b).agrees());
    }
}
