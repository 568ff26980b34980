use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qtheta::exactnum::{parse_rational, Rational};
use qtheta::identities::{
    eval_expr, find, parse_expr, registry, to_text, verify_selection, Expr, Family, IdentityRecord,
};
use qtheta::numeric::{cross_check, cross_check_identity, parse_complex, EvalPoint, NumericError};
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qtheta", version, about = "Exact q-expansions of theta constants and identity verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify registry identities coefficient by coefficient.
    Verify(VerifyArgs),
    /// Print the q-expansion of an expression.
    Expand(ExpandArgs),
    /// Print one exact coefficient of an expression.
    Coeff(CoeffArgs),
    /// Evaluate an identity or expression at a point of the upper half-plane.
    Numeric(NumericArgs),
    /// List the registry.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("select").required(true).args(["all", "id", "family"])))]
struct VerifyArgs {
    #[arg(long)]
    all: bool,
    #[arg(long)]
    id: Vec<String>,
    /// quarter, third, classical, constant-level or series-level
    #[arg(long)]
    family: Option<String>,
    /// Exclusive exponent bound; rationals such as 17/2 are accepted.
    #[arg(long, default_value = "8")]
    cutoff: String,
    #[arg(long, env = "QTHETA_JOBS")]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write the report to this path.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Leave per-record timings out of the report.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct ExpandArgs {
    expr: String,
    #[arg(long, default_value = "8")]
    cutoff: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CoeffArgs {
    expr: String,
    #[arg(long)]
    at: String,
    #[arg(long, default_value = "8")]
    cutoff: String,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["id", "expr"])))]
struct NumericArgs {
    #[arg(long)]
    id: Option<String>,
    #[arg(long)]
    expr: Option<String>,
    /// For example 0+1i or 0.1+0.8i.
    #[arg(long, allow_hyphen_values = true)]
    tau: String,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Series cutoff; chosen from |q| when absent.
    #[arg(long)]
    cutoff: Option<String>,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Exit code 2 with a message.
struct Usage(String);

/// Rendered stdout and whether everything checked passed.
type Outcome = Result<(String, bool), Usage>;

fn rational(s: &str, what: &str) -> Result<Rational, Usage> {
    parse_rational(s).ok_or_else(|| Usage(format!("cannot read {what} `{s}` as a rational")))
}

fn positive_cutoff(s: &str) -> Result<Rational, Usage> {
    let c = rational(s, "cutoff")?;
    if c > Rational::from_integer(0.into()) {
        Ok(c)
    } else {
        Err(Usage(format!("cutoff must be positive, got {c}")))
    }
}

fn expr(src: &str) -> Result<Expr, Usage> {
    parse_expr(src)
        .map_err(|e| Usage(format!("parse error at {e}\n  {src}\n  {}^", " ".repeat(e.column.saturating_sub(1)))))
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let cutoff = positive_cutoff(&a.cutoff)?;
    let records: Vec<&IdentityRecord> = if a.all {
        registry().iter().collect()
    } else if let Some(f) = &a.family {
        let fam = Family::from_tag(f).ok_or_else(|| Usage(format!("unknown family `{f}`")))?;
        registry().iter().filter(|r| r.family == fam).collect()
    } else {
        a.id.iter()
            .map(|id| find(id).ok_or_else(|| Usage(format!("unknown identity id `{id}`"))))
            .collect::<Result<_, _>>()?
    };
    let jobs = a.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let summary = verify_selection(&records, &cutoff, jobs).map_err(|e| Usage(e.to_string()))?;
    let text = match a.format {
        Format::Json => summary.to_json(!a.no_timings) + "\n",
        Format::Text => summary.to_text(!a.no_timings),
    };
    if let Some(path) = a.out {
        std::fs::write(&path, &text).map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok((text, summary.all_pass()))
}

fn cmd_expand(a: ExpandArgs) -> Outcome {
    let mut out = String::new();
    let cutoff = positive_cutoff(&a.cutoff)?;
    let e = expr(&a.expr)?;
    let s = eval_expr(&e, &cutoff).map_err(|e| Usage(e.to_string()))?;
    let rows: Vec<(String, String, Complex64)> =
        s.terms().map(|(x, c)| (x.to_string(), c.to_string(), c.to_complex())).collect();
    match a.format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(x, c, z)| serde_json::json!({"exponent": x, "exact": c, "re": z.re, "im": z.im}))
                .collect();
            let doc = serde_json::json!({"expr": to_text(&e), "window": s.cutoff().to_string(), "terms": rows});
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Text => {
            let _ = writeln!(out, "# {} below q^{}", to_text(&e), s.cutoff());
            for (x, c, z) in rows {
                let _ = writeln!(out, "{x}\t{c}\t{}", decimal(z));
            }
        }
    }
    Ok((out, true))
}

fn decimal(z: Complex64) -> String {
    let clean = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.12}")
    } else {
        format!("{re:.12}{im:+.12}i")
    }
}

fn cmd_coeff(a: CoeffArgs) -> Outcome {
    let mut out = String::new();
    let cutoff = positive_cutoff(&a.cutoff)?;
    let at = rational(&a.at, "exponent")?;
    if at >= cutoff {
        return Err(Usage(format!("q^{at} is beyond guaranteed window (cutoff {cutoff})")));
    }
    let e = expr(&a.expr)?;
    let s = eval_expr(&e, &cutoff).map_err(|e| Usage(e.to_string()))?;
    let c = s.coeff(&at).map_err(|e| Usage(format!("beyond guaranteed window: {e}")))?;
    let _ = writeln!(out, "{c}\t{}", decimal(c.to_complex()));
    Ok((out, true))
}

fn cmd_numeric(a: NumericArgs) -> Outcome {
    let mut out = String::new();
    let tau = parse_complex(&a.tau).ok_or_else(|| Usage(format!("cannot read tau `{}`", a.tau)))?;
    let p = EvalPoint::new(tau, 1e-15).map_err(|e| Usage(e.to_string()))?;
    let cutoff = a.cutoff.as_deref().map(positive_cutoff).transpose()?;
    let usage = |e: NumericError| Usage(e.to_string());
    let check = match (&a.id, &a.expr) {
        (Some(id), _) => cross_check_identity(id, &p, cutoff.as_ref()).map_err(usage)?,
        (None, Some(src)) => {
            let e = expr(src)?;
            let t = cutoff.unwrap_or_else(|| p.cutoff_for(1e-13));
            cross_check(&e, &e, &p, &t).map_err(usage)?
        }
        (None, None) => unreachable!("clap requires one of --id, --expr"),
    };
    let _ = writeln!(out, "tau = {tau}");
    let _ = writeln!(out, "lhs (series) = {}", decimal(check.lhs));
    if a.id.is_some() {
        let _ = writeln!(out, "rhs (series) = {}", decimal(check.rhs));
        let _ = writeln!(out, "lhs - rhs, series: {:.3e}", check.series);
        let _ = writeln!(out, "lhs - rhs, direct: {:.3e}", check.direct);
        let _ = writeln!(out, "series vs direct, rhs: {:.3e}", check.rhs_direct);
    }
    let _ = writeln!(out, "series vs direct, lhs: {:.3e}", check.lhs_direct);
    let _ = writeln!(out, "tail estimate: {:.3e}", check.tail);
    let worst = check.max();
    let _ =
        writeln!(out, "{} (max residual {worst:.3e}, tol {:.3e})", if worst < a.tol { "OK" } else { "FAIL" }, a.tol);
    Ok((out, worst < a.tol))
}

fn cmd_catalog(a: CatalogArgs) -> Outcome {
    let mut out = String::new();
    match a.format {
        Format::Json => {
            let rows: Vec<_> = registry()
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "id": r.id,
                        "family": r.family.tag(),
                        "lhs": to_text(&r.lhs),
                        "rhs": to_text(&r.rhs),
                        "anchor": r.anchor,
                        "note": r.note,
                    })
                })
                .collect();
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("json"));
        }
        Format::Text => {
            for r in registry() {
                let _ = writeln!(out, "{}\t{}\t{} = {}", r.id, r.family, to_text(&r.lhs), to_text(&r.rhs));
            }
        }
    }
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Expand(a) => cmd_expand(a),
        Cmd::Coeff(a) => cmd_coeff(a),
        Cmd::Numeric(a) => cmd_numeric(a),
        Cmd::Catalog(a) => cmd_catalog(a),
    };
    match res {
        Ok((out, pass)) => {
            // a reader that stopped early is not an error
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                _ if pass => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            }
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
