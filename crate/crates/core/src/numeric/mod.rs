//! Floating-point evaluation of exact series at a point τ and direct evaluation of
//! expression trees from the defining sums and products.

use crate::exactnum::{parse_rational, to_f64, Rational};
use crate::identities::{eval_expr, find, EvalError, Expr};
use crate::qseries::{Bound, QSeries};
use crate::theta::{theta_deriv_numeric, theta_numeric, Characteristic, DomainError};
use crate::weight1::{divisor_coeff, Weight1Error};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A point τ of the upper half-plane with a target tolerance for direct sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPoint {
    pub tau: Complex64,
    pub tol: f64,
}

impl EvalPoint {
    pub fn new(tau: Complex64, tol: f64) -> Result<Self, NumericError> {
        if tau.im > 0.0 && tau.is_finite() {
            Ok(EvalPoint { tau, tol })
        } else {
            Err(NumericError::Domain(DomainError::NotUpperHalfPlane(tau)))
        }
    }

    /// |q| = e^{−2π Im τ}.
    pub fn q_abs(&self) -> f64 {
        (-2.0 * PI * self.tau.im).exp()
    }

    /// Smallest integer cutoff T with |q|^T below `eps`, plus one for slack.
    pub fn cutoff_for(&self, eps: f64) -> Rational {
        let t = (eps.ln() / self.q_abs().ln()).ceil().max(1.0) as i64 + 1;
        Rational::from_integer(t.into())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Weight1(#[from] Weight1Error),
    #[error("division by a value that is numerically zero")]
    ZeroDivisor,
    #[error("unknown identity id `{0}`")]
    UnknownId(String),
}

/// q^r = e^{2πiτr}, taken directly so there is no branch choice.
fn q_pow(tau: Complex64, r: f64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * tau * r).exp()
}

/// Value of a truncated series at τ together with an estimate of the omitted tail,
/// max|c|·|q|^T/(1 − |q|^{1/M}).
pub fn ps_eval(a: &QSeries, p: &EvalPoint) -> Result<(Complex64, f64), NumericError> {
    let p = EvalPoint::new(p.tau, p.tol)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut biggest: f64 = 0.0;
    for (e, c) in a.terms() {
        let c = c.to_complex();
        biggest = biggest.max(c.norm());
        sum += c * q_pow(p.tau, to_f64(&e));
    }
    let tail = match a.cutoff() {
        Bound::Infinite => 0.0,
        Bound::Finite(t) => {
            let step = p.q_abs().powf(1.0 / a.denom() as f64);
            biggest * p.q_abs().powf(to_f64(t)) / (1.0 - step)
        }
    };
    Ok((sum, tail))
}

fn eta_direct(s: f64, tau: Complex64, tol: f64) -> Complex64 {
    let x = q_pow(tau, s);
    let mut prod = q_pow(tau, s / 24.0);
    let mut xn = x;
    while xn.norm() > tol * 1e-3 {
        prod *= Complex64::new(1.0, 0.0) - xn;
        xn *= x;
    }
    prod
}

/// Evaluates the tree at τ from the defining sums and products, without series arithmetic.
pub fn eval_direct(e: &Expr, p: &EvalPoint) -> Result<Complex64, NumericError> {
    let tau = p.tau;
    let tol = p.tol;
    let zero = Complex64::new(0.0, 0.0);
    let th = |ch: &Characteristic, s: &Rational| theta_numeric(ch, tau * to_f64(s), zero, tol);
    Ok(match e {
        Expr::ThetaConst(ch, s) => th(ch, s)?,
        Expr::ThetaDerivReduced(ch, s) => theta_deriv_numeric(ch, tau * to_f64(s), zero, tol)? / PI,
        Expr::Eta(s) => eta_direct(to_f64(s), tau, tol),
        Expr::Theta3(s) => {
            let three = s * Rational::from_integer(3.into());
            let c00 = Characteristic::from_ratios(0, 1, 0, 1);
            let c10 = Characteristic::from_ratios(1, 1, 0, 1);
            th(&c00, s)? * th(&c00, &three)? + th(&c10, s)? * th(&c10, &three)?
        }
        Expr::DivisorSeries(spec) => {
            let r = p.q_abs().powf(to_f64(&spec.exp_scale));
            let mut sum = Complex64::new(to_f64(&spec.constant), 0.0);
            let mut n = 1i64;
            // |coefficient| ≤ 6·(number of divisors) ≤ 12√N
            while 12.0 * (n as f64).sqrt() * r.powi(n as i32) > tol * 1e-3 {
                let c = divisor_coeff(spec, n)?.to_complex();
                sum += c * q_pow(tau, to_f64(&spec.exp_scale) * n as f64);
                n += 1;
            }
            sum
        }
        Expr::ExplicitSum(kind, s) => {
            let s = to_f64(s);
            let mut sum = zero;
            let mut n = 1i64;
            while (n as f64) * p.q_abs().powf(s * (n * n) as f64) > tol * 1e-3 || n < 2 {
                sum += q_pow(tau, s * (n * n) as f64) * (n * kind.symbol(n)) as f64;
                n += 1;
            }
            sum
        }
        Expr::Scalar(c) => c.to_complex(),
        Expr::Add(a, b) => eval_direct(a, p)? + eval_direct(b, p)?,
        Expr::Sub(a, b) => eval_direct(a, p)? - eval_direct(b, p)?,
        Expr::Mul(a, b) => eval_direct(a, p)? * eval_direct(b, p)?,
        Expr::Div(a, b) => {
            let d = eval_direct(b, p)?;
            if d.norm() == 0.0 {
                return Err(NumericError::ZeroDivisor);
            }
            eval_direct(a, p)? / d
        }
        Expr::IntPow(a, k) => {
            let x = eval_direct(a, p)?;
            if *k < 0 && x.norm() == 0.0 {
                return Err(NumericError::ZeroDivisor);
            }
            x.powi(*k as i32)
        }
    })
}

/// Residuals of one identity at one point, each relative to max(1, |value|).
#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    /// Series-evaluated left side against series-evaluated right side.
    pub series: f64,
    /// Series-evaluated left side against its direct evaluation.
    pub lhs_direct: f64,
    /// Same for the right side.
    pub rhs_direct: f64,
    /// Directly evaluated left side against directly evaluated right side.
    pub direct: f64,
    /// Largest tail estimate of the two truncated series.
    pub tail: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl CrossCheck {
    pub fn max(&self) -> f64 {
        [self.series, self.lhs_direct, self.rhs_direct, self.direct].into_iter().fold(0.0, f64::max)
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

/// Compares the two sides of an expression pair at τ, both through the exact series
/// truncated at `cutoff` and through direct summation.
pub fn cross_check(lhs: &Expr, rhs: &Expr, p: &EvalPoint, cutoff: &Rational) -> Result<CrossCheck, NumericError> {
    let p = EvalPoint::new(p.tau, p.tol)?;
    let (ls, lt) = ps_eval(&eval_expr(lhs, cutoff)?, &p)?;
    let (rs, rt) = ps_eval(&eval_expr(rhs, cutoff)?, &p)?;
    let ld = eval_direct(lhs, &p)?;
    let rd = eval_direct(rhs, &p)?;
    Ok(CrossCheck {
        series: rel(ls, rs),
        lhs_direct: rel(ls, ld),
        rhs_direct: rel(rs, rd),
        direct: rel(ld, rd),
        tail: lt.max(rt),
        lhs: ls,
        rhs: rs,
    })
}

/// `cross_check` on a registry record. Without a cutoff one is chosen so that |q|^T < 10⁻¹³.
pub fn cross_check_identity(id: &str, p: &EvalPoint, cutoff: Option<&Rational>) -> Result<CrossCheck, NumericError> {
    let rec = find(id).ok_or_else(|| NumericError::UnknownId(id.to_string()))?;
    let p = EvalPoint::new(p.tau, p.tol)?;
    let t = cutoff.cloned().unwrap_or_else(|| p.cutoff_for(1e-13));
    cross_check(&rec.lhs, &rec.rhs, &p, &t)
}

/// Parses `a+bi`, `a-bi`, `bi`, `i` or `a`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let num = |t: &str| -> Option<f64> {
        match t {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => t.parse::<f64>().ok().or_else(|| parse_rational(t).map(|r| to_f64(&r))),
        }
    };
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not the leading one and not an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => Some(Complex64::new(num(&body[..k]).filter(|_| k > 0)?, num(&body[k..])?)),
            None => Some(Complex64::new(0.0, num(body)?)),
        }
    } else {
        Some(Complex64::new(num(&s)?, 0.0))
    }
}
