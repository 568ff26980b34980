//! Exact q-expansions of theta constants with rational characteristics, their
//! z-derivatives, Dedekind eta quotients and weight-one divisor sums, plus a
//! verifier that checks identities between them coefficient by coefficient.

#![allow(clippy::result_large_err)] // errors carry exact rationals and are rare

pub mod eta;
pub mod exactnum;
pub mod identities;
pub mod logderiv;
pub mod numeric;
pub mod qseries;
pub mod report;
pub mod theta;
pub mod weight1;
