//! Weight-one divisor-sum series: the quad4, quad8 and Θ₃ families, their alternative
//! coefficient formulas and their twisted or restricted variants.

mod kronecker;
mod twists;

pub use kronecker::{jacobi, kronecker};
pub use twists::{
    cosine_without_character, cosine_without_character_disagreement, pow2twist_checks, pow3twist_checks,
    recogser_forms, verify_pow2twist, verify_pow3twist, verify_recogser_equivalences, RecogserOutcome,
};

use crate::exactnum::{int, rat, CycNum, Rational};
use crate::qseries::{Bound, PuiseuxSeries, QSeries, SeriesError};
use num_traits::Zero;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// 4·(−1/d) over odd d: counts a² + b².
    Quad4,
    /// 2·(−2/d) over odd d: counts a² + 2b².
    Quad8,
    /// −2√3·i·(ζ3^d − ζ3^{−d}): counts a² − ab + b².
    Chi3Zeta3,
    /// −2√3·i·(ζ6^d − ζ6^{−d}).
    Chi3Zeta6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorFilter {
    All,
    DOdd,
    CodivisorOdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorWeight {
    One,
    /// (−1)^d
    SignD,
    /// (−1)^{N/d}
    SignNOverD,
}

/// Multiplier applied to the whole coefficient of index N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OuterTwist {
    None,
    /// (−1)^N
    Alternating,
    /// 1 for odd N, 0 for even N
    OddOnly,
    /// (−4/N): odd N only, with the sign (−1)^{(N−1)/2}
    Chi4,
    /// 1 unless 3 | N
    CoprimeTo3,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorSeriesSpec {
    pub variant: Variant,
    pub filter: DivisorFilter,
    pub weight: DivisorWeight,
    pub twist: OuterTwist,
    /// Coefficient of index N sits at q^{exp_scale·N}.
    pub exp_scale: Rational,
    /// Constant term of the series.
    pub constant: Rational,
}

impl DivisorSeriesSpec {
    /// The plain series of the given variant: constant 1, exponents N/2.
    pub fn plain(variant: Variant) -> Self {
        DivisorSeriesSpec {
            variant,
            filter: DivisorFilter::All,
            weight: DivisorWeight::One,
            twist: OuterTwist::None,
            exp_scale: rat(1, 2),
            constant: int(1),
        }
    }

    pub fn with_filter(mut self, f: DivisorFilter) -> Self {
        self.filter = f;
        self
    }

    pub fn with_weight(mut self, w: DivisorWeight) -> Self {
        self.weight = w;
        self
    }

    pub fn with_twist(mut self, t: OuterTwist) -> Self {
        self.twist = t;
        self
    }

    pub fn with_constant(mut self, c: Rational) -> Self {
        self.constant = c;
        self
    }

    pub fn with_exp_scale(mut self, s: Rational) -> Self {
        self.exp_scale = s;
        self
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Quad4 => "quad4",
            Variant::Quad8 => "quad8",
            Variant::Chi3Zeta3 => "chi3",
            Variant::Chi3Zeta6 => "chi3z6",
        })
    }
}

impl fmt::Display for DivisorFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivisorFilter::All => "all",
            DivisorFilter::DOdd => "dodd",
            DivisorFilter::CodivisorOdd => "codd",
        })
    }
}

impl fmt::Display for DivisorWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivisorWeight::One => "one",
            DivisorWeight::SignD => "signd",
            DivisorWeight::SignNOverD => "signcod",
        })
    }
}

impl fmt::Display for OuterTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OuterTwist::None => "none",
            OuterTwist::Alternating => "alt",
            OuterTwist::OddOnly => "odd",
            OuterTwist::Chi4 => "chi4",
            OuterTwist::CoprimeTo3 => "no3",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "quad4" => Variant::Quad4,
            "quad8" => Variant::Quad8,
            "chi3" => Variant::Chi3Zeta3,
            "chi3z6" => Variant::Chi3Zeta6,
            _ => return Err(format!("unknown divisor-sum variant '{s}'")),
        })
    }
}

impl std::str::FromStr for DivisorFilter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => DivisorFilter::All,
            "dodd" => DivisorFilter::DOdd,
            "codd" => DivisorFilter::CodivisorOdd,
            _ => return Err(format!("unknown divisor filter '{s}'")),
        })
    }
}

impl std::str::FromStr for DivisorWeight {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "one" => DivisorWeight::One,
            "signd" => DivisorWeight::SignD,
            "signcod" => DivisorWeight::SignNOverD,
            _ => return Err(format!("unknown divisor weight '{s}'")),
        })
    }
}

impl std::str::FromStr for OuterTwist {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "none" => OuterTwist::None,
            "alt" => OuterTwist::Alternating,
            "odd" => OuterTwist::OddOnly,
            "chi4" => OuterTwist::Chi4,
            "no3" => OuterTwist::CoprimeTo3,
            _ => return Err(format!("unknown outer twist '{s}'")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Weight1Error {
    #[error("divisor sums are defined for N >= 1, got {0}")]
    NonPositiveIndex(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Positive divisors of n in increasing order, by trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// −2√3·i·(ζ_m^d − ζ_m^{−d}) for m ∈ {3, 6}.
fn chi3_term(m: u32, d: i64) -> CycNum {
    let diff = &CycNum::zeta(m, d) - &CycNum::zeta(m, -d);
    let c = (&CycNum::sqrt3() * &CycNum::i()).scale(&int(-2));
    collapse(&c * &diff)
}

/// Drops a rational value back to order 1.
pub fn collapse(c: CycNum) -> CycNum {
    match c.as_rational() {
        Some(r) => CycNum::from_rational(&r),
        None => c,
    }
}

fn base_term(variant: Variant, d: i64) -> CycNum {
    match variant {
        Variant::Quad4 => CycNum::from_int(4 * kronecker(-4, d) as i64),
        Variant::Quad8 => CycNum::from_int(2 * kronecker(-2, d) as i64),
        Variant::Chi3Zeta3 => chi3_term(3, d),
        Variant::Chi3Zeta6 => chi3_term(6, d),
    }
}

fn outer_factor(t: OuterTwist, n: i64) -> i64 {
    match t {
        OuterTwist::None => 1,
        OuterTwist::Alternating => {
            if n % 2 == 0 {
                1
            } else {
                -1
            }
        }
        OuterTwist::OddOnly => n.rem_euclid(2),
        OuterTwist::Chi4 => kronecker(-4, n) as i64,
        OuterTwist::CoprimeTo3 => i64::from(n % 3 != 0),
    }
}

/// Coefficient of index N: Σ over admissible divisors d of base(d)·weight, times the outer twist.
pub fn divisor_coeff(spec: &DivisorSeriesSpec, n: i64) -> Result<CycNum, Weight1Error> {
    if n < 1 {
        return Err(Weight1Error::NonPositiveIndex(n));
    }
    let outer = outer_factor(spec.twist, n);
    if outer == 0 {
        return Ok(CycNum::zero());
    }
    let mut acc = CycNum::zero();
    for d in divisors(n as u64) {
        let d = d as i64;
        let co = n / d;
        let keep = match spec.filter {
            DivisorFilter::All => true,
            DivisorFilter::DOdd => d % 2 == 1,
            DivisorFilter::CodivisorOdd => co % 2 == 1,
        };
        if !keep {
            continue;
        }
        let sign = match spec.weight {
            DivisorWeight::One => 1,
            DivisorWeight::SignD => 1 - 2 * (d % 2),
            DivisorWeight::SignNOverD => 1 - 2 * (co % 2),
        };
        let t = base_term(spec.variant, d);
        acc = if sign == 1 { &acc + &t } else { &acc - &t };
    }
    Ok(collapse(acc.scale(&int(outer))))
}

/// constant + Σ_{N≥1} divisor_coeff(N)·q^{exp_scale·N}, exact below `cutoff`.
pub fn weight1_series(spec: &DivisorSeriesSpec, cutoff: &Rational) -> Result<QSeries, Weight1Error> {
    let mut terms = vec![(Rational::zero(), CycNum::from_rational(&spec.constant))];
    let mut n = 1i64;
    loop {
        let e = &spec.exp_scale * int(n);
        if &e >= cutoff {
            break;
        }
        terms.push((e, divisor_coeff(spec, n)?));
        n += 1;
    }
    Ok(PuiseuxSeries::from_terms(terms, Bound::Finite(cutoff.clone())))
}

/// Θ₃(sτ) = 1 + 6Σ_N Σ_{d|N} (d/3)·q^{sN/2}, built from the divisor sums and rescaled.
pub fn theta3(scale: &Rational, cutoff: &Rational) -> Result<QSeries, Weight1Error> {
    let base = weight1_series(&DivisorSeriesSpec::plain(Variant::Chi3Zeta3), &(cutoff / scale))?;
    Ok(base.rescale(scale)?)
}

/// Brute-force count of integer pairs (a, b) represented by the norm form of the variant:
/// a² + b², a² + 2b² or a² − ab + b². The ζ6 variant has no norm form and returns None.
pub fn norm_form_count(variant: Variant, n: i64) -> Option<u64> {
    let r = (n as f64).sqrt() as i64 + 2;
    let form: fn(i64, i64) -> i64 = match variant {
        Variant::Quad4 => |a, b| a * a + b * b,
        Variant::Quad8 => |a, b| a * a + 2 * b * b,
        Variant::Chi3Zeta3 => |a, b| a * a - a * b + b * b,
        Variant::Chi3Zeta6 => return None,
    };
    // a² − ab + b² ≥ (a² + b²)/2, so |a|, |b| ≤ √(2n) bounds every solution
    let r = if variant == Variant::Chi3Zeta3 { (2.0 * n as f64).sqrt() as i64 + 2 } else { r };
    let mut count = 0;
    for a in -r..=r {
        for b in -r..=r {
            if form(a, b) == n {
                count += 1;
            }
        }
    }
    Some(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: Variant, n: i64) -> CycNum {
        divisor_coeff(&DivisorSeriesSpec::plain(v), n).unwrap()
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(c(Variant::Quad4, 5), CycNum::from_int(8));
        assert_eq!(c(Variant::Quad8, 3), CycNum::from_int(4));
        assert_eq!(c(Variant::Chi3Zeta3, 7), CycNum::from_int(12));
        assert_eq!(c(Variant::Quad4, 9), CycNum::from_int(4));
        assert_eq!(c(Variant::Chi3Zeta3, 2), CycNum::zero());
        assert_eq!(divisor_coeff(&DivisorSeriesSpec::plain(Variant::Quad4), 0), Err(Weight1Error::NonPositiveIndex(0)));
    }

    #[test]
    fn theta3_low_terms() {
        let t = theta3(&int(1), &int(5)).unwrap();
        assert_eq!(t.coeff(&rat(1, 2)).unwrap(), CycNum::from_int(6));
        assert_eq!(t.coeff(&int(1)).unwrap(), CycNum::zero());
        assert_eq!(t.coeff(&rat(3, 2)).unwrap(), CycNum::from_int(6));
        assert_eq!(t.coeff(&rat(7, 2)).unwrap(), CycNum::from_int(12));
        let t2 = theta3(&int(2), &int(5)).unwrap();
        assert_eq!(t2.coeff(&int(1)).unwrap(), CycNum::from_int(6));
        assert!(t2.coeff(&int(5)).is_err());
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn lattice_counts_small() {
        for n in 1..=60 {
            for v in [Variant::Quad4, Variant::Quad8, Variant::Chi3Zeta3] {
                let want = CycNum::from_int(norm_form_count(v, n).unwrap() as i64);
                assert_eq!(c(v, n), want, "{v} at N={n}");
            }
        }
    }

    #[test]
    fn twist_corollaries_low_order() {
        for r in pow2twist_checks(&int(10)).unwrap() {
            assert!(r.pass, "{r:?}");
        }
        for r in pow3twist_checks(&int(10)).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn recogser_low_order() {
        let r = verify_recogser_equivalences(100, 30, 3);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn cosine_without_character_is_off_at_three() {
        let d = cosine_without_character_disagreement(50, 1).unwrap();
        assert_eq!(d.n, 3);
        assert_eq!(d.without_character, CycNum::zero());
        assert_eq!(d.series, CycNum::from_int(4));
    }
}
