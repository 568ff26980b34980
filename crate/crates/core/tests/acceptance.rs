//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//! `cargo test -p qtheta --release --test acceptance` for realistic timings.

use num_complex::Complex64;
use qtheta::eta::{eta_quotient, EtaQuotientSpec};
use qtheta::exactnum::{int, rat, CycNum};
use qtheta::identities::{registry, verify, verify_all};
use qtheta::logderiv::{logderiv_oracle, logderiv_reduced};
use qtheta::numeric::{cross_check_identity, EvalPoint};
use qtheta::qseries::QSeries;
use qtheta::theta::{
    check_transformations, jacobi_triple_product_check, theta_const, theta_const_product, zero_location_residual,
    Characteristic,
};
use qtheta::weight1::{
    kronecker, norm_form_count, pow2twist_checks, pow3twist_checks, verify_recogser_equivalences, weight1_series,
    DivisorSeriesSpec, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn registry_characteristics() -> BTreeSet<Characteristic> {
    let mut out = BTreeSet::new();
    for r in registry() {
        for c in r.lhs.characteristics().into_iter().chain(r.rhs.characteristics()) {
            out.insert(c.normalize().ch);
        }
    }
    out
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn full_registry() -> Check {
    // [1;1] is stated twice, through theta constants and through η³
    let derivs: BTreeSet<_> =
        registry().iter().filter(|r| r.is_derivative()).flat_map(|r| r.lhs.characteristics()).collect();
    ensure(derivs.len() == 39, || format!("{} derivative characteristics, expected 39", derivs.len()))?;
    let mut notes = vec![format!("{} records, {} derivative formulas", registry().len(), derivs.len())];
    for (c, limit) in [(8, 60), (12, 600)] {
        let t = Instant::now();
        let s = verify_all(&int(c), jobs()).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        let failed: Vec<_> = s.records.iter().filter(|r| !r.pass).map(|r| r.id.clone()).collect();
        ensure(failed.is_empty(), || format!("cutoff {c}: failing {failed:?}"))?;
        ensure(took < Duration::from_secs(limit), || format!("cutoff {c} took {}", secs(took)))?;
        notes.push(format!("cutoff {c} in {}", secs(took)));
    }
    Ok(notes.join(", "))
}

fn theta_const_at(e: i64, s: i64, cutoff: &qtheta::exactnum::Rational) -> QSeries {
    theta_const(&Characteristic::from_ratios(e, 1, 0, 1), &int(s), cutoff).expect("theta constant")
}

fn three_way() -> Check {
    let cutoff = rat(201, 2);
    let (t1, t2, t3) = (theta_const_at(0, 1, &cutoff), theta_const_at(0, 2, &cutoff), theta_const_at(0, 3, &cutoff));
    let (u1, u3) = (theta_const_at(1, 1, &cutoff), theta_const_at(1, 3, &cutoff));
    let products =
        [(Variant::Quad4, &t1 * &t1), (Variant::Quad8, &t1 * &t2), (Variant::Chi3Zeta3, &(&t1 * &t3) + &(&u1 * &u3))];
    for (v, prod) in products {
        let s = weight1_series(&DivisorSeriesSpec::plain(v), &cutoff).map_err(|e| e.to_string())?;
        let cmp = s.compare(&prod);
        ensure(cmp.agrees(), || format!("{v}: divisor sum and theta product differ: {:?}", cmp.first_mismatch))?;
        for n in 1..=200i64 {
            let want = CycNum::from_int(norm_form_count(v, n).expect("count") as i64);
            let got = s.coeff(&rat(n, 2)).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("{v} at N = {n}: {got} against lattice count {want}"))?;
        }
    }
    Ok("3 parts, N ≤ 200, series = products = lattice counts".into())
}

fn recogser() -> Check {
    let r = verify_recogser_equivalences(1000, 200, 3);
    ensure(r.pass, || format!("{r:?}"))?;
    Ok(format!("{} comparisons", r.compared))
}

fn twists() -> Check {
    let p2 = pow2twist_checks(&int(50)).map_err(|e| e.to_string())?;
    let p3 = pow3twist_checks(&int(50)).map_err(|e| e.to_string())?;
    ensure(p2.len() == 6 && p3.len() == 10, || format!("{} and {} assertions", p2.len(), p3.len()))?;
    let bad: Vec<_> = p2.iter().chain(&p3).filter(|r| !r.pass).map(|r| r.id.clone()).collect();
    ensure(bad.is_empty(), || format!("failing {bad:?}"))?;
    Ok("6 + 10 assertions at cutoff 50".into())
}

fn triple_product() -> Check {
    let t = Instant::now();
    let r = jacobi_triple_product_check(&int(12));
    let took = t.elapsed();
    ensure(r.pass, || format!("{r:?}"))?;
    ensure(took < Duration::from_secs(10), || format!("took {}", secs(took)))?;
    Ok(format!("x-exponents < 12 in {}", secs(took)))
}

fn series_vs_product() -> Check {
    let chars = registry_characteristics();
    let ten = int(10);
    for c in &chars {
        let a = theta_const(c, &int(1), &ten).map_err(|e| e.to_string())?;
        let b = theta_const_product(c, &ten).map_err(|e| e.to_string())?;
        ensure(a.compare(&b).agrees(), || format!("{c}"))?;
    }
    Ok(format!("{} characteristics below 10", chars.len()))
}

fn log_derivatives() -> Check {
    let eight = int(8);
    let mut n = 0;
    for c in &registry_characteristics() {
        if theta_const(c, &int(1), &eight).map_err(|e| e.to_string())?.is_zero() {
            continue;
        }
        let a = logderiv_reduced(c, &eight).map_err(|e| e.to_string())?;
        let b = logderiv_oracle(c, &eight).map_err(|e| e.to_string())?;
        ensure(a.compare(&b).agrees(), || format!("{c}"))?;
        n += 1;
    }
    Ok(format!("{n} characteristics below 8"))
}

fn eta_layer() -> Check {
    let ids: Vec<_> = registry()
        .iter()
        .map(|r| r.id.as_str())
        .filter(|id| {
            ["intchar-", "etaid-", "foureta-", "etaover3-"].iter().any(|p| id.starts_with(p)) || *id == "clasder-eta"
        })
        .collect();
    for id in &ids {
        let r = verify(id, &int(8)).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("{id}: {:?}", r.first_mismatch))?;
    }
    let eta3 = eta_quotient(&EtaQuotientSpec::new([(int(1), 3)]), &rat(442, 8)).map_err(|e| e.to_string())?;
    for n in 0..=21i64 {
        let want = CycNum::from_int(n * kronecker(-4, n) as i64);
        let got = eta3.coeff(&rat(n * n, 8)).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("η³ at n = {n}: {got} against {want}"))?;
    }
    // odd n only
    let terms = eta3.terms().count();
    ensure(terms == 11, || format!("η³ has {terms} terms below 442/8, expected 11"))?;
    Ok(format!("{} records at cutoff 8, η³ through n = 21", ids.len()))
}

fn random_char(rng: &mut ChaCha8Rng) -> Characteristic {
    let den = [2, 3, 4, 6][rng.gen_range(0..4)];
    Characteristic::new(rat(rng.gen_range(-den + 1..=den), den), rat(rng.gen_range(-den + 1..=den), den))
}

fn numeric() -> Check {
    let mut worst: f64 = 0.0;
    for tau in [Complex64::new(0.0, 1.0), Complex64::new(0.1, 0.8), Complex64::new(-0.4, 1.3)] {
        let p = EvalPoint::new(tau, 1e-13).map_err(|e| e.to_string())?;
        let t = p.cutoff_for(1e-12);
        for r in registry() {
            let x = cross_check_identity(&r.id, &p, Some(&t)).map_err(|e| format!("{}: {e}", r.id))?;
            ensure(x.max() < 1e-9, || format!("{} at {tau}: {x:?}", r.id))?;
            worst = worst.max(x.max());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_t: f64 = 0.0;
    for k in 0..100 {
        let c = random_char(&mut rng);
        let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.7..1.5));
        let z = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.2..0.2));
        let (a, b) = if k % 2 == 0 {
            (rng.gen_range(-2..=2) as f64, rng.gen_range(-2..=2) as f64)
        } else {
            (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
        };
        let r = check_transformations(&c, tau, z, a, b, 1e-15).map_err(|e| e.to_string())?;
        worst_t = worst_t.max(r.max());
    }
    ensure(worst_t < 1e-9, || format!("transformation residual {worst_t:e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_z: f64 = 0.0;
    for _ in 0..20 {
        let c = random_char(&mut rng);
        let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.6..1.6));
        worst_z = worst_z.max(zero_location_residual(&c, tau, 1e-15).map_err(|e| e.to_string())?);
    }
    ensure(worst_z < 1e-8, || format!("zero residual {worst_z:e}"))?;
    Ok(format!("identities {worst:.1e}, transformations {worst_t:.1e}, zeros {worst_z:.1e}"))
}

fn determinism() -> Check {
    let a = verify_all(&int(8), 1).map_err(|e| e.to_string())?.to_json(false);
    let b = verify_all(&int(8), 8).map_err(|e| e.to_string())?.to_json(false);
    ensure(a == b, || "reports differ".into())?;
    Ok(format!("{} bytes identical", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("full registry at cutoffs 8 and 12", full_registry),
        ("weight-one series three-way agreement", three_way),
        ("alternative coefficient formulas", recogser),
        ("power-of-two and power-of-three twists", twists),
        ("Jacobi triple product", triple_product),
        ("theta series against product", series_vs_product),
        ("log-derivative closed forms", log_derivatives),
        ("eta layer", eta_layer),
        ("numeric cross-validation", numeric),
        ("determinism across worker counts", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let took = secs(t.elapsed());
        match out {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{took}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{took}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
