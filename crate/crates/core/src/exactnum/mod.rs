//! Exact rationals and cyclotomic-field elements.

mod cyclotomic;
mod rational;

pub use cyclotomic::{cyc_arith, cyclotomic_polynomial, totient, CycError, CycNum, CycOp};
pub use rational::{ceil_i64, floor_i64, frac, int, is_integer, parse_rational, rat, rem_euclid, to_f64, Rational};

/// The constant i√3 = ζ3 − ζ3², handy for the ℚ(√−3) family.
pub fn i_sqrt3() -> CycNum {
    &CycNum::zeta(3, 1) - &CycNum::zeta(3, 2)
}
