//! Truncated Puiseux series in q over an abstract coefficient ring.

mod laurent;
mod ring;
mod series;

pub use laurent::YLaurent;
pub use ring::Coeff;
pub use series::{Bound, Comparison, PuiseuxSeries, SeriesError};

use crate::exactnum::CycNum;

/// Series with cyclotomic coefficients, the workhorse of the engine.
pub type QSeries = PuiseuxSeries<CycNum>;
