use crate::eta::{eta_series, explicit_weight32_sum, EtaError, KroneckerKind};
use crate::exactnum::{int, CycNum, Rational};
use crate::qseries::{Bound, QSeries, SeriesError};
use crate::theta::{theta_const, theta_deriv_reduced, Characteristic, ThetaError};
use crate::weight1::{theta3, weight1_series, DivisorSeriesSpec, Weight1Error};
use num_traits::{Signed, Zero};

/// Expression tree over the series generators. Scales are the s in f(sτ).
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    ThetaConst(Characteristic, Rational),
    ThetaDerivReduced(Characteristic, Rational),
    Eta(Rational),
    Theta3(Rational),
    DivisorSeries(DivisorSeriesSpec),
    /// Σ n·χ(n)·q^{s·n²}
    ExplicitSum(KroneckerKind, Rational),
    Scalar(CycNum),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    IntPow(Box<Expr>, i64),
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(o))
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(o))
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(o))
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, o: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(o))
    }
}

impl Expr {
    pub fn pow(self, k: i64) -> Expr {
        Expr::IntPow(Box::new(self), k)
    }

    pub fn scalar(c: CycNum) -> Expr {
        Expr::Scalar(c)
    }

    /// Calls `f` on every node, parents before children.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Expr::IntPow(a, _) => a.walk(f),
            _ => {}
        }
    }

    /// Characteristics of every theta constant or derivative in the tree.
    pub fn characteristics(&self) -> Vec<Characteristic> {
        let mut out = Vec::new();
        self.walk(&mut |e| match e {
            Expr::ThetaConst(c, _) | Expr::ThetaDerivReduced(c, _) => out.push(c.clone()),
            _ => {}
        });
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalErrorKind {
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Eta(#[from] EtaError),
    #[error(transparent)]
    Weight1(#[from] Weight1Error),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("cutoff must be positive, got {0}")]
    NonPositiveCutoff(Rational),
}

/// Evaluation failure together with the subtree that raised it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("in `{subtree}`: {kind}")]
pub struct EvalError {
    pub subtree: String,
    pub kind: EvalErrorKind,
}

fn fail<E: Into<EvalErrorKind>>(e: &Expr, err: E) -> EvalError {
    EvalError { subtree: super::text::to_text(e), kind: err.into() }
}

/// Why a pass at a given working cutoff produced nothing.
enum Stop {
    Failed(EvalError),
    /// A divisor had no known terms yet; more precision may reveal its leading term.
    Short,
}

impl From<EvalError> for Stop {
    fn from(e: EvalError) -> Self {
        Stop::Failed(e)
    }
}

fn inverse_of(x: QSeries, at: &Expr) -> Result<QSeries, Stop> {
    if x.is_zero() && matches!(x.cutoff(), Bound::Finite(_)) {
        return Err(Stop::Short);
    }
    x.invert().map_err(|err| Stop::Failed(fail(at, err)))
}

fn eval_at(e: &Expr, work: &Rational) -> Result<QSeries, Stop> {
    let bin = |a: &Expr, b: &Expr| -> Result<(QSeries, QSeries), Stop> { Ok((eval_at(a, work)?, eval_at(b, work)?)) };
    Ok(match e {
        Expr::ThetaConst(ch, s) => theta_const(ch, s, work).map_err(|x| fail(e, x))?,
        Expr::ThetaDerivReduced(ch, s) => theta_deriv_reduced(ch, s, work).map_err(|x| fail(e, x))?,
        Expr::Eta(s) => eta_series(s, work).map_err(|x| fail(e, x))?,
        Expr::Theta3(s) => theta3(s, work).map_err(|x| fail(e, x))?,
        Expr::DivisorSeries(spec) => weight1_series(spec, work).map_err(|x| fail(e, x))?,
        Expr::ExplicitSum(kind, s) => {
            if !s.is_positive() {
                return Err(fail(e, SeriesError::NonPositiveScale).into());
            }
            explicit_weight32_sum(*kind, s, work)
        }
        Expr::Scalar(c) => QSeries::constant(c.clone()),
        Expr::Add(a, b) => {
            let (x, y) = bin(a, b)?;
            &x + &y
        }
        Expr::Sub(a, b) => {
            let (x, y) = bin(a, b)?;
            &x - &y
        }
        Expr::Mul(a, b) => {
            let (x, y) = bin(a, b)?;
            &x * &y
        }
        Expr::Div(a, b) => {
            let (x, y) = bin(a, b)?;
            let inv = inverse_of(y, b)?;
            &x * &inv
        }
        Expr::IntPow(a, k) => {
            let x = eval_at(a, work)?;
            let base = if *k < 0 { inverse_of(x, a)? } else { x };
            base.pow(k.unsigned_abs() as u32)
        }
    })
}

const MAX_RETRIES: usize = 12;
const MAX_DOUBLINGS: usize = 6;

/// Evaluates the tree exactly below `cutoff`. Generators are first built to `cutoff`; when
/// divisions or negative valuations leave the result short, the working cutoff is raised by
/// the shortfall and the tree is evaluated again. A divisor with no terms inside the working
/// window doubles it instead, a few times at most, before it is reported as zero.
pub fn eval_expr(e: &Expr, cutoff: &Rational) -> Result<QSeries, EvalError> {
    if !cutoff.is_positive() {
        return Err(fail(e, EvalErrorKind::NonPositiveCutoff(cutoff.clone())));
    }
    let target = Bound::Finite(cutoff.clone());
    let mut work = cutoff.clone();
    let mut last = None;
    let mut doublings = 0;
    for _ in 0..MAX_RETRIES {
        let s = match eval_at(e, &work) {
            Ok(s) => s,
            Err(Stop::Failed(err)) => return Err(err),
            Err(Stop::Short) if doublings < MAX_DOUBLINGS => {
                doublings += 1;
                work = &work * int(2);
                continue;
            }
            Err(Stop::Short) => return Err(zero_divisor(e, &work)),
        };
        match s.cutoff() {
            Bound::Infinite => return Ok(s.truncate(&target)),
            Bound::Finite(t) if t >= cutoff => return Ok(s.truncate(&target)),
            Bound::Finite(t) => {
                let short = cutoff - t;
                work = &work + if short.is_zero() { int(1) } else { short };
            }
        }
        last = Some(s);
    }
    Ok(last.expect("at least one attempt"))
}

/// Re-runs the tree at `work` with zero divisors treated as hard errors, to name the culprit.
fn zero_divisor(e: &Expr, work: &Rational) -> EvalError {
    fn find(e: &Expr, work: &Rational) -> Option<EvalError> {
        match e {
            Expr::Div(a, b) => find(a, work).or_else(|| find(b, work)).or_else(|| divisor_error(b, work)),
            Expr::IntPow(a, k) if *k < 0 => find(a, work).or_else(|| divisor_error(a, work)),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => find(a, work).or_else(|| find(b, work)),
            Expr::IntPow(a, _) => find(a, work),
            _ => None,
        }
    }
    fn divisor_error(d: &Expr, work: &Rational) -> Option<EvalError> {
        match eval_at(d, work) {
            Ok(x) if x.is_zero() => Some(fail(d, SeriesError::InvertZero)),
            _ => None,
        }
    }
    find(e, work).unwrap_or_else(|| fail(e, SeriesError::InvertZero))
}
