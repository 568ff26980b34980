//! Dedekind eta, eta quotients Π η(sτ)^m and the explicit weight-3/2 sums Σ n·χ(n)·q^{s·n²}.

use crate::exactnum::{ceil_i64, int, CycNum, Rational};
use crate::qseries::{Bound, PuiseuxSeries, QSeries, SeriesError};
use crate::report::VerifyReport;
use crate::weight1::kronecker;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EtaError {
    #[error("eta scale must be positive, got {0}")]
    NonPositiveScale(Rational),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Coefficients of Π_{n=1}^{deg}(1 − xⁿ) up to x^{deg}, expanded factor by factor.
fn euler_product(deg: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); deg + 1];
    a[0] = BigInt::one();
    for n in 1..=deg {
        for k in (n..=deg).rev() {
            let t = a[k - n].clone();
            a[k] -= t;
        }
    }
    a
}

/// η(sτ) = q^{s/24}·Π(1 − q^{sn}), exact below `cutoff`.
pub fn eta_series(scale: &Rational, cutoff: &Rational) -> Result<QSeries, EtaError> {
    if !scale.is_positive() {
        return Err(EtaError::NonPositiveScale(scale.clone()));
    }
    let lead = scale / int(24);
    let bound = Bound::Finite(cutoff.clone());
    let room = cutoff - &lead;
    if !room.is_positive() {
        return Ok(QSeries::zero_to(bound));
    }
    // s·k < room  ⇔  k < room/s
    let deg = (ceil_i64(&(&room / scale)) - 1).max(0) as usize;
    let coeffs = euler_product(deg);
    let terms = coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (&lead + scale * int(k as i64), CycNum::from_bigint(c)));
    Ok(PuiseuxSeries::from_terms(terms, bound))
}

/// Π η(s_j τ)^{m_j}; the empty product is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EtaQuotientSpec {
    pub factors: Vec<(Rational, i64)>,
}

impl EtaQuotientSpec {
    pub fn new<I: IntoIterator<Item = (Rational, i64)>>(factors: I) -> Self {
        EtaQuotientSpec { factors: factors.into_iter().collect() }
    }

    /// Merges repeated scales and drops zero powers, sorted by scale.
    pub fn normalized(&self) -> Self {
        let mut m: std::collections::BTreeMap<Rational, i64> = Default::default();
        for (s, p) in &self.factors {
            *m.entry(s.clone()).or_insert(0) += p;
        }
        EtaQuotientSpec { factors: m.into_iter().filter(|(_, p)| *p != 0).collect() }
    }

    /// Σ m·s/24
    pub fn valuation(&self) -> Rational {
        self.factors.iter().fold(Rational::zero(), |acc, (s, p)| acc + s * int(*p) / int(24))
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, p)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "eta({s}*tau)^{p}")?;
        }
        Ok(())
    }
}

fn power_product(factors: &[(Rational, i64)], rel: &Rational) -> Result<QSeries, EtaError> {
    let mut acc = QSeries::one();
    for (s, p) in factors {
        let e = eta_series(s, &(s / int(24) + rel))?;
        acc = &acc * &e.pow(p.unsigned_abs() as u32);
    }
    Ok(acc)
}

/// The eta quotient exact below `cutoff`. Numerator and denominator are each built to the
/// same precision relative to their valuations, then the denominator is inverted once.
pub fn eta_quotient(spec: &EtaQuotientSpec, cutoff: &Rational) -> Result<QSeries, EtaError> {
    let spec = spec.normalized();
    for (s, _) in &spec.factors {
        if !s.is_positive() {
            return Err(EtaError::NonPositiveScale(s.clone()));
        }
    }
    let v = spec.valuation();
    let rel = cutoff - &v;
    let bound = Bound::Finite(cutoff.clone());
    if !rel.is_positive() {
        return Ok(QSeries::zero_to(bound));
    }
    let (num, den): (Vec<_>, Vec<_>) = spec.factors.iter().cloned().partition(|(_, p)| *p > 0);
    let n = power_product(&num, &rel)?;
    let out = if den.is_empty() {
        n
    } else {
        let d = power_product(&den, &rel)?;
        &n * &d.invert()?
    };
    Ok(out.truncate(&bound))
}

/// The character in Σ n·χ(n)·q^{s·n²}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KroneckerKind {
    /// (−4/n)
    Minus4,
    /// (−2/n)
    Minus2,
}

impl KroneckerKind {
    pub fn symbol(self, n: i64) -> i64 {
        match self {
            KroneckerKind::Minus4 => kronecker(-4, n) as i64,
            KroneckerKind::Minus2 => kronecker(-2, n) as i64,
        }
    }
}

impl fmt::Display for KroneckerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KroneckerKind::Minus4 => "-4",
            KroneckerKind::Minus2 => "-2",
        })
    }
}

/// Σ_{n≥0} n·χ(n)·q^{s·n²}, exact below `cutoff`.
pub fn explicit_weight32_sum(kind: KroneckerKind, exp_scale: &Rational, cutoff: &Rational) -> QSeries {
    let mut terms = Vec::new();
    let mut n = 1i64;
    loop {
        let e = exp_scale * int(n * n);
        if &e >= cutoff {
            break;
        }
        let c = n * kind.symbol(n);
        if c != 0 {
            terms.push((e, CycNum::from_int(c)));
        }
        n += 1;
    }
    PuiseuxSeries::from_terms(terms, Bound::Finite(cutoff.clone()))
}

fn q(s: Rational, p: i64) -> (Rational, i64) {
    (s, p)
}

fn quotient(f: Vec<(Rational, i64)>, cutoff: &Rational) -> Result<QSeries, EtaError> {
    eta_quotient(&EtaQuotientSpec::new(f), cutoff)
}

/// The three expressions of the eta identity chain obtained from splitting θ[0;0] by parity:
/// η⁵(τ)/(η²(τ/2)η²(2τ)),
/// (η⁶(4τ) + 2η²(2τ)η⁴(8τ))/(η²(2τ)η(4τ)η²(8τ)),
/// (2η(τ)η⁵(4τ) − η²(τ/2)η²(2τ)η²(8τ))/(η(τ)η²(2τ)η²(8τ)).
pub fn etaid_sides(cutoff: &Rational) -> Result<[QSeries; 3], EtaError> {
    use crate::exactnum::rat;
    let h = rat(1, 2);
    let (one, two, four, eight) = (int(1), int(2), int(4), int(8));
    let a = quotient(vec![q(one.clone(), 5), q(h.clone(), -2), q(two.clone(), -2)], cutoff)?;
    let den_b = [q(two.clone(), -2), q(four.clone(), -1), q(eight.clone(), -2)];
    let b1 = quotient([vec![q(four.clone(), 6)], den_b.to_vec()].concat(), cutoff)?;
    let b2 = quotient([vec![q(two.clone(), 2), q(eight.clone(), 4)], den_b.to_vec()].concat(), cutoff)?;
    let b = &b1 + &b2.scale(&CycNum::from_int(2));
    let den_c = [q(one.clone(), -1), q(two.clone(), -2), q(eight.clone(), -2)];
    let c1 = quotient([vec![q(one.clone(), 1), q(four, 5)], den_c.to_vec()].concat(), cutoff)?;
    let c2 = quotient([vec![q(h, 2), q(two, 2), q(eight, 2)], den_c.to_vec()].concat(), cutoff)?;
    let c = &c1.scale(&CycNum::from_int(2)) - &c2;
    Ok([a, b, c])
}

/// Checks both equalities of the eta identity chain below `cutoff`.
pub fn verify_etaid(cutoff: &Rational) -> Result<VerifyReport, EtaError> {
    let start = Instant::now();
    let [a, b, c] = etaid_sides(cutoff)?;
    let r1 = VerifyReport::from_comparison("etaid-first", &a.compare(&b), start.elapsed());
    let r2 = VerifyReport::from_comparison("etaid-second", &a.compare(&c), start.elapsed());
    Ok(VerifyReport::merge("etaid", vec![r1, r2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn pentagonal_pattern() {
        let p = euler_product(40);
        let mut want = vec![0i64; 41];
        for k in -6i64..=6 {
            let g = k * (3 * k - 1) / 2;
            if (0..=40).contains(&g) {
                want[g as usize] = if k % 2 == 0 { 1 } else { -1 };
            }
        }
        let got: Vec<i64> = p.iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn eta_valuations() {
        for (s, v) in [(int(1), rat(1, 24)), (int(4), rat(1, 6)), (rat(1, 6), rat(1, 144))] {
            assert_eq!(eta_series(&s, &int(3)).unwrap().valuation(), Some(v));
        }
        assert!(eta_series(&int(0), &int(3)).is_err());
    }

    #[test]
    fn quotient_valuation_matches_formula() {
        let spec = EtaQuotientSpec::new([(int(2), 9), (int(1), -3), (int(4), -3)]);
        let s = eta_quotient(&spec, &int(4)).unwrap();
        assert_eq!(s.valuation(), Some(spec.valuation()));
        assert_eq!(spec.valuation(), rat(1, 8));
    }

    #[test]
    fn weight32_sums() {
        let s = explicit_weight32_sum(KroneckerKind::Minus2, &rat(1, 32), &int(2));
        let got: Vec<_> = s.terms().map(|(e, c)| (e, c.clone())).collect();
        let want: Vec<_> =
            [(1, 1), (9, 3), (25, -5), (49, -7)].into_iter().map(|(e, c)| (rat(e, 32), CycNum::from_int(c))).collect();
        assert_eq!(got, want);
        let s = explicit_weight32_sum(KroneckerKind::Minus4, &rat(1, 2), &int(10));
        assert_eq!(s.coeff(&rat(1, 2)).unwrap(), CycNum::from_int(1));
        assert_eq!(s.coeff(&rat(9, 2)).unwrap(), CycNum::from_int(-3));
    }

    #[test]
    fn etaid_holds_and_detects_injection() {
        assert!(verify_etaid(&int(8)).unwrap().pass);
        let [a, b, _] = etaid_sides(&int(8)).unwrap();
        let bump = &QSeries::one() + &QSeries::monomial(CycNum::one(), &int(1));
        let bad = &b * &bump;
        let cmp = a.compare(&bad);
        let (e, _, _) = cmp.first_mismatch.unwrap();
        assert_eq!(e, a.valuation().unwrap() + int(1));
    }
}
