use super::{
    collapse, divisor_coeff, divisors, kronecker, theta3, weight1_series, DivisorFilter, DivisorSeriesSpec,
    DivisorWeight, Variant, Weight1Error,
};
use crate::exactnum::{int, rat, CycNum, Rational};
use crate::qseries::QSeries;
use crate::report::{Mismatch, VerifyReport};
use crate::theta::{theta_const, Characteristic};
use std::time::Instant;

fn odd_divisors(n: i64) -> impl Iterator<Item = i64> {
    divisors(n as u64).into_iter().map(|d| d as i64).filter(|d| d % 2 == 1)
}

fn sum<I: IntoIterator<Item = CycNum>>(it: I) -> CycNum {
    it.into_iter().fold(CycNum::zero(), |a, b| &a + &b)
}

fn by_residue(n: i64, modulus: i64, table: &[(i64, i64)], odd_only: bool) -> CycNum {
    let total: i64 = divisors(n as u64)
        .into_iter()
        .map(|d| d as i64)
        .filter(|d| !odd_only || d % 2 == 1)
        .map(|d| table.iter().find(|(r, _)| d % modulus == *r).map_or(0, |(_, v)| *v))
        .sum();
    CycNum::from_int(total)
}

/// −4i·Σ_{odd d|N} i^d
fn quad4_powers_of_i(n: i64) -> CycNum {
    let s = sum(odd_divisors(n).map(|d| CycNum::zeta(4, d)));
    collapse(&CycNum::i().scale(&int(-4)) * &s)
}

/// −2i·Σ_{d|N} (i^d − (−i)^d)
fn quad4_differences(n: i64) -> CycNum {
    let s = sum(divisors(n as u64).into_iter().map(|d| {
        let d = d as i64;
        &CycNum::zeta(4, d) - &CycNum::zeta(4, -d)
    }));
    collapse(&CycNum::i().scale(&int(-2)) * &s)
}

/// −(−2/t)·√2·i·Σ_{odd d|N} (ζ8^{td} − ζ8^{−td})
fn quad8_sine(n: i64, t: i64) -> CycNum {
    let s = sum(odd_divisors(n).map(|d| &CycNum::zeta(8, t * d) - &CycNum::zeta(8, -t * d)));
    let c = (&CycNum::sqrt2() * &CycNum::i()).scale(&int(-(kronecker(-2, t) as i64)));
    collapse(&c * &s)
}

/// (2/t)·√2·Σ_{odd d|N} (−1/d)(ζ8^{td} + ζ8^{−td})
fn quad8_cosine(n: i64, t: i64) -> CycNum {
    let s = sum(odd_divisors(n).map(|d| {
        let c = &CycNum::zeta(8, t * d) + &CycNum::zeta(8, -t * d);
        c.scale(&int(kronecker(-4, d) as i64))
    }));
    collapse(&CycNum::sqrt2().scale(&int(kronecker(2, t) as i64)) * &s)
}

/// The cosine form without the (−1/d) factor: (2/t)·√2·Σ_{odd d|N} (ζ8^{td} + ζ8^{−td}).
/// This sums (2/d) rather than (−2/d) and so differs from the quad8 coefficient.
pub fn cosine_without_character(n: i64, t: i64) -> CycNum {
    let s = sum(odd_divisors(n).map(|d| &CycNum::zeta(8, t * d) + &CycNum::zeta(8, -t * d)));
    collapse(&CycNum::sqrt2().scale(&int(kronecker(2, t) as i64)) * &s)
}

fn spec(v: Variant) -> DivisorSeriesSpec {
    DivisorSeriesSpec::plain(v)
}

fn coeff(v: Variant, n: i64) -> CycNum {
    divisor_coeff(&spec(v), n).expect("positive index")
}

/// Every alternative formula of each part evaluated at N, as (label, value) pairs;
/// within a part all values must agree.
pub fn recogser_forms(n: i64) -> Vec<(&'static str, Vec<(&'static str, CycNum)>)> {
    let q4 = coeff(Variant::Quad4, n);
    let q8 = coeff(Variant::Quad8, n);
    let half_q4 = q4.scale(&rat(1, 2));
    vec![
        (
            "i",
            vec![
                ("series", q4.clone()),
                ("residues mod 4", by_residue(n, 4, &[(1, 4), (3, -4)], true)),
                ("powers of i", quad4_powers_of_i(n)),
                ("differences", quad4_differences(n)),
            ],
        ),
        (
            "ii",
            vec![
                ("series", q8.clone()),
                ("residues mod 8", by_residue(n, 8, &[(1, 2), (3, 2), (5, -2), (7, -2)], true)),
                ("sine t=1", quad8_sine(n, 1)),
                ("sine t=3", quad8_sine(n, 3)),
                ("cosine t=1", quad8_cosine(n, 1)),
                ("cosine t=3", quad8_cosine(n, 3)),
            ],
        ),
        (
            "iii-sum",
            vec![("series", collapse(&q8 + &half_q4)), ("residues mod 8", by_residue(n, 8, &[(1, 4), (7, -4)], true))],
        ),
        (
            "iii-difference",
            vec![("series", collapse(&q8 - &half_q4)), ("residues mod 8", by_residue(n, 8, &[(3, 4), (5, -4)], true))],
        ),
        (
            "iv",
            vec![
                ("series", coeff(Variant::Chi3Zeta3, n)),
                ("residues mod 3", by_residue(n, 3, &[(1, 6), (2, -6)], false)),
            ],
        ),
    ]
}

fn mismatch(n: i64, part: &str, a: (&str, &CycNum), b: (&str, &CycNum)) -> Mismatch {
    Mismatch {
        exponent: format!("N={n} part ({part})"),
        lhs: format!("{}: {}", a.0, a.1),
        rhs: format!("{}: {}", b.0, b.1),
    }
}

fn first_disagreement(n: i64) -> Option<Mismatch> {
    for (part, forms) in recogser_forms(n) {
        let (l0, v0) = &forms[0];
        for (l, v) in &forms[1..] {
            if v != v0 {
                return Some(mismatch(n, part, (l0, v0), (l, v)));
            }
        }
    }
    None
}

fn first_invariance_failure(n: i64, k_max: u32) -> Option<Mismatch> {
    let cases = [(Variant::Quad4, 2i64, "i"), (Variant::Quad8, 2, "ii"), (Variant::Chi3Zeta3, 3, "iv")];
    for (v, p, part) in cases {
        let base = coeff(v, n);
        for k in 1..=k_max {
            let m = n * p.pow(k);
            let c = coeff(v, m);
            if c != base {
                return Some(mismatch(n, part, ("N", &base), (&format!("{p}^{k}·N"), &c)));
            }
        }
    }
    None
}

/// Pairwise agreement of the alternative coefficient formulas for N ≤ `n_max`, and
/// invariance under N ↦ 2^k·N (parts i, ii) and N ↦ 3^k·N (part iv) for N ≤ `inv_n_max`, k ≤ `k_max`.
pub fn verify_recogser_equivalences(n_max: i64, inv_n_max: i64, k_max: u32) -> VerifyReport {
    let start = Instant::now();
    let mut first = None;
    let mut compared = 0;
    for n in 1..=n_max {
        compared += 1;
        if let Some(m) = first_disagreement(n) {
            first = Some(m);
            break;
        }
    }
    if first.is_none() {
        for n in 1..=inv_n_max {
            compared += 1;
            if let Some(m) = first_invariance_failure(n, k_max) {
                first = Some(m);
                break;
            }
        }
    }
    VerifyReport {
        id: "recogser".to_string(),
        pass: first.is_none(),
        cutoff: format!("N<={n_max}"),
        first_mismatch: first,
        ms: Some(start.elapsed().as_millis() as u64),
        compared,
        warning: None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecogserOutcome {
    pub n: i64,
    pub without_character: CycNum,
    pub series: CycNum,
}

/// First N ≤ n_max where the cosine form without the (−1/d) factor differs from the
/// quad8 coefficient, for the given t.
pub fn cosine_without_character_disagreement(n_max: i64, t: i64) -> Option<RecogserOutcome> {
    (1..=n_max).find_map(|n| {
        let without_character = cosine_without_character(n, t);
        let series = coeff(Variant::Quad8, n);
        (without_character != series).then_some(RecogserOutcome { n, without_character, series })
    })
}

fn th(e: i64, d: i64, s: Rational, cutoff: &Rational) -> QSeries {
    theta_const(&Characteristic::new(int(e), int(d)), &s, cutoff).expect("positive scale")
}

fn report(id: &str, lhs: &QSeries, rhs: &QSeries, start: Instant) -> VerifyReport {
    VerifyReport::from_comparison(id, &lhs.compare(rhs), start.elapsed())
}

/// The six assertions on the quad4 and quad8 series, one report each.
pub fn pow2twist_checks(cutoff: &Rational) -> Result<Vec<VerifyReport>, Weight1Error> {
    let half = rat(1, 2);
    let c = cutoff;
    let q4 = weight1_series(&spec(Variant::Quad4), c)?;
    let q8 = weight1_series(&spec(Variant::Quad8), c)?;
    let t1 = th(0, 0, int(1), c);
    let t2 = th(0, 0, int(2), c);
    let sq1 = &t1 * &t1;
    let sq2 = &t2 * &t2;
    let tilde4 = th(1, 0, int(4), c);
    let hat1 = th(0, 1, int(1), c);
    let hat2 = th(0, 1, int(2), c);
    let odd = |n: i64| n % 2 != 0;
    let alt = |n: i64| CycNum::from_int(if n % 2 == 0 { 1 } else { -1 });
    let chi4 = |n: i64| CycNum::from_int(kronecker(-4, n) as i64);

    let mut out = Vec::new();
    let s = Instant::now();
    let q4_odd = q4.restrict(&half, odd)?;
    out.push(report("pow2twist-i-odd", &q4_odd, &(&sq1 - &sq2), s));
    let s = Instant::now();
    let target = &sq2.scale(&CycNum::from_int(2)) - &sq1;
    out.push(report("pow2twist-i-alternating", &q4.twist(&half, alt)?, &target, s));
    let s = Instant::now();
    let q8_odd = q8.restrict(&half, odd)?;
    out.push(report("pow2twist-ii-odd", &q8_odd, &(&t2 * &tilde4), s));
    let s = Instant::now();
    out.push(report("pow2twist-ii-alternating", &q8.twist(&half, alt)?, &(&t2 * &hat1), s));
    let s = Instant::now();
    out.push(report("pow2twist-iii-quad8", &q8_odd.twist(&half, chi4)?, &(&tilde4 * &hat2), s));
    let s = Instant::now();
    out.push(report("pow2twist-iii-quad4", &q4_odd.twist(&half, chi4)?, &q4_odd, s));
    Ok(out)
}

pub fn verify_pow2twist(cutoff: &Rational) -> Result<VerifyReport, Weight1Error> {
    Ok(VerifyReport::merge("pow2twist", pow2twist_checks(cutoff)?))
}

/// a·Θ₃(τ) + b·Θ₃(2τ) + c·Θ₃(3τ) + d·Θ₃(4τ)
fn theta3_combo(w: [i64; 4], cutoff: &Rational) -> Result<QSeries, Weight1Error> {
    let mut acc = QSeries::zero_to(crate::qseries::Bound::Finite(cutoff.clone()));
    for (k, c) in w.iter().enumerate() {
        if *c != 0 {
            let t = theta3(&int(k as i64 + 1), cutoff)?;
            acc = &acc + &t.scale(&CycNum::from_int(*c));
        }
    }
    Ok(acc)
}

/// The ten assertions on Θ₃ and its divisor-sum variants, one report each.
pub fn pow3twist_checks(cutoff: &Rational) -> Result<Vec<VerifyReport>, Weight1Error> {
    let half = rat(1, 2);
    let c = cutoff;
    let base = weight1_series(&spec(Variant::Chi3Zeta3), c)?;
    let combo = |w| theta3_combo(w, c);
    let divsum = |s: DivisorSeriesSpec| weight1_series(&s, c);
    let z3 = || spec(Variant::Chi3Zeta3);
    let z6 = || spec(Variant::Chi3Zeta6);
    let mut out = Vec::new();

    let s = Instant::now();
    out.push(report("pow3twist-i-odd", &base.restrict(&half, |n| n % 2 != 0)?, &combo([1, 0, 0, -1])?, s));
    let s = Instant::now();
    let alt = base.twist(&half, |n| CycNum::from_int(if n % 2 == 0 { 1 } else { -1 }))?;
    out.push(report("pow3twist-i-alternating", &alt, &combo([-1, 0, 0, 2])?, s));
    let s = Instant::now();
    out.push(report("pow3twist-i-coprime-to-3", &base.restrict(&half, |n| n % 3 != 0)?, &combo([1, 0, -1, 0])?, s));

    let cases: Vec<(&str, DivisorSeriesSpec, i64, [i64; 4])> = vec![
        ("pow3twist-ii-odd-divisors", z3().with_filter(DivisorFilter::DOdd), 2, [1, 1, 0, 0]),
        ("pow3twist-ii-odd-codivisors", z3().with_filter(DivisorFilter::CodivisorOdd), 0, [1, -1, 0, 0]),
        ("pow3twist-iii-sign-d", z3().with_weight(DivisorWeight::SignD), -3, [-1, -2, 0, 0]),
        ("pow3twist-iii-sign-codivisor", z3().with_weight(DivisorWeight::SignNOverD), 1, [-1, 2, 0, 0]),
        ("pow3twist-iii-zeta6", z6(), 3, [1, 2, 0, 0]),
        ("pow3twist-iv-zeta6-odd-divisors", z6().with_filter(DivisorFilter::DOdd), 2, [1, 1, 0, 0]),
        ("pow3twist-iv-zeta6-odd-codivisors", z6().with_filter(DivisorFilter::CodivisorOdd), 0, [1, 1, 0, -2]),
    ];
    for (id, sp, constant, w) in cases {
        let s = Instant::now();
        let lhs = divsum(sp.with_constant(int(constant)))?;
        let rhs = combo(w)?;
        out.push(report(id, &lhs, &rhs, s));
    }
    Ok(out)
}

pub fn verify_pow3twist(cutoff: &Rational) -> Result<VerifyReport, Weight1Error> {
    Ok(VerifyReport::merge("pow3twist", pow3twist_checks(cutoff)?))
}
