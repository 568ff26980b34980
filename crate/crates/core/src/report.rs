use crate::qseries::{Bound, Comparison};
use serde::Serialize;
use std::fmt::Display;
use std::time::Duration;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of comparing two series below a window.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub id: String,
    pub pass: bool,
    /// Effective comparison window (exclusive exponent bound).
    pub cutoff: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
    #[serde(skip)]
    pub compared: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl VerifyReport {
    pub fn from_comparison<C: Display>(id: &str, cmp: &Comparison<C>, elapsed: Duration) -> Self {
        let first_mismatch = cmp.first_mismatch.as_ref().map(|(e, a, b)| Mismatch {
            exponent: e.to_string(),
            lhs: a.to_string(),
            rhs: b.to_string(),
        });
        let warning = if cmp.compared == 0 {
            Some("empty comparison window: no nonzero coefficient on either side".to_string())
        } else {
            None
        };
        VerifyReport {
            id: id.to_string(),
            pass: first_mismatch.is_none(),
            cutoff: bound_text(&cmp.window),
            first_mismatch,
            ms: Some(elapsed.as_millis() as u64),
            compared: cmp.compared,
            warning,
        }
    }

    /// Combines several checks under one id; fails at the first failing part.
    pub fn merge(id: &str, parts: Vec<VerifyReport>) -> Self {
        let ms = parts.iter().filter_map(|p| p.ms).sum();
        let compared = parts.iter().map(|p| p.compared).sum();
        let failing = parts.iter().find(|p| !p.pass);
        let cutoff = parts.iter().map(|p| p.cutoff.clone()).next().unwrap_or_default();
        match failing {
            Some(f) => VerifyReport {
                id: id.to_string(),
                pass: false,
                cutoff: f.cutoff.clone(),
                first_mismatch: f
                    .first_mismatch
                    .clone()
                    .or_else(|| Some(Mismatch { exponent: String::new(), lhs: f.id.clone(), rhs: String::new() })),
                ms: Some(ms),
                compared,
                warning: f.warning.clone(),
            },
            None => VerifyReport {
                id: id.to_string(),
                pass: true,
                cutoff,
                first_mismatch: None,
                ms: Some(ms),
                compared,
                warning: if compared == 0 { Some("empty comparison window".into()) } else { None },
            },
        }
    }
}

pub fn bound_text(b: &Bound) -> String {
    b.to_string()
}
