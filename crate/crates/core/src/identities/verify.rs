use super::expr::{eval_expr, EvalError, Expr};
use super::registry::{find, registry, IdentityRecord};
use crate::exactnum::{CycNum, Rational};
use crate::report::VerifyReport;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown identity id `{0}`")]
    UnknownId(String),
    #[error("could not start a worker pool: {0}")]
    Pool(String),
}

/// Evaluates both sides below `cutoff` and compares them. Evaluation errors become a
/// failing report whose warning names the subtree.
pub fn verify_record(rec: &IdentityRecord, cutoff: &Rational) -> VerifyReport {
    let start = Instant::now();
    let sides = eval_expr(&rec.lhs, cutoff).and_then(|l| Ok((l, eval_expr(&rec.rhs, cutoff)?)));
    match sides {
        Ok((l, r)) => VerifyReport::from_comparison(&rec.id, &l.compare(&r), start.elapsed()),
        Err(e) => VerifyReport {
            id: rec.id.clone(),
            pass: false,
            cutoff: cutoff.to_string(),
            first_mismatch: None,
            ms: Some(start.elapsed().as_millis() as u64),
            compared: 0,
            warning: Some(e.to_string()),
        },
    }
}

pub fn verify(id: &str, cutoff: &Rational) -> Result<VerifyReport, VerifyError> {
    let rec = find(id).ok_or_else(|| VerifyError::UnknownId(id.to_string()))?;
    Ok(verify_record(rec, cutoff))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryCounts {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub records: Vec<VerifyReport>,
    pub summary: SummaryCounts,
}

impl Summary {
    fn from_reports(mut records: Vec<VerifyReport>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = records.iter().filter(|r| r.pass).count();
        let fail = records.len() - pass;
        Summary { records, summary: SummaryCounts { pass, fail } }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    /// Pretty JSON. Without timings the output depends only on the inputs.
    pub fn to_json(&self, timings: bool) -> String {
        let mut s = self.clone();
        if !timings {
            for r in &mut s.records {
                r.ms = None;
            }
        }
        serde_json::to_string_pretty(&s).expect("summary serializes")
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = if r.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {} (window < {})", r.id, r.cutoff));
            if timings {
                if let Some(ms) = r.ms {
                    out.push_str(&format!(" {ms} ms"));
                }
            }
            if let Some(m) = &r.first_mismatch {
                out.push_str(&format!(" first mismatch at q^{}: {} vs {}", m.exponent, m.lhs, m.rhs));
            }
            if let Some(w) = &r.warning {
                out.push_str(&format!(" [{w}]"));
            }
            out.push('\n');
        }
        out.push_str(&format!("{} passed, {} failed\n", self.summary.pass, self.summary.fail));
        out
    }
}

/// Verifies the given records on a pool of `jobs` workers; output is sorted by id.
pub fn verify_selection(records: &[&IdentityRecord], cutoff: &Rational, jobs: usize) -> Result<Summary, VerifyError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    let reports = pool.install(|| records.par_iter().map(|r| verify_record(r, cutoff)).collect());
    Ok(Summary::from_reports(reports))
}

pub fn verify_all(cutoff: &Rational, jobs: usize) -> Result<Summary, VerifyError> {
    let all: Vec<&IdentityRecord> = registry().iter().collect();
    verify_selection(&all, cutoff, jobs)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RatioError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("quotient is not constant: nonzero coefficient {coeff} at q^{exponent}")]
    NotConstant { exponent: Rational, coeff: CycNum },
    #[error("quotient vanishes below the cutoff")]
    Zero,
}

/// The constant a/b, if a·b⁻¹ is constant below `cutoff`.
pub fn ratio_probe(a: &Expr, b: &Expr, cutoff: &Rational) -> Result<CycNum, RatioError> {
    let q = eval_expr(&(a.clone() / b.clone()), cutoff)?;
    let mut constant = None;
    for (e, c) in q.terms() {
        if num_traits::Zero::is_zero(&e) {
            constant = Some(c.clone());
        } else {
            return Err(RatioError::NotConstant { exponent: e, coeff: c.clone() });
        }
    }
    constant.ok_or(RatioError::Zero)
}
