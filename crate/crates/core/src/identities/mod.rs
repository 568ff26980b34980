//! Identity registry, expression trees over the series generators, and the verifier.

mod expr;
mod registry;
mod text;
mod verify;

pub use expr::{eval_expr, EvalError, EvalErrorKind, Expr};
pub use registry::{find, registry, Family, IdentityRecord};
pub use text::{parse_expr, to_text, ParseError};
pub use verify::{
    ratio_probe, verify, verify_all, verify_record, verify_selection, RatioError, Summary, SummaryCounts, VerifyError,
};
