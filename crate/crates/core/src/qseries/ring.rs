use crate::exactnum::{CycNum, Rational};
use std::fmt;

/// Coefficient ring of a series.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }
}

impl Coeff for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        CycNum::inverse(self).ok()
    }
    fn from_rational(r: &Rational) -> Self {
        CycNum::from_rational(r)
    }
}
