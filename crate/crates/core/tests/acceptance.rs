//! Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit if
//! any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gmrk_core::coupling::{cg_f64, HalfInt, IrrepLabel};
use gmrk_core::operators::{alpha_of, alpha_squared, build_k, build_m, build_t_gellmann, build_u, GellMannConfig};
use gmrk_core::repspace::{enumerate_basis, multiplicity_audit, SpaceSpec};
use gmrk_core::validator::{
    check_casimirs, check_mk_commute, check_tt, check_uu, default_grid, fit_t_equivalence, validity_scan, TT_TOLERANCE,
};
use nalgebra::DMatrix;
use num::complex::Complex64;
use num::rational::Ratio;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SIGMAS: [f64; 3] = [0.0, 1.0, 2.5];
const J_MAX: HalfInt = HalfInt::integer(8);
const MARGIN: HalfInt = HalfInt::integer(4);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn casimir_identities() -> Outcome {
    let n = 3i64;
    let cases = [(2, 2 * n, "{2}"), (1, 2 * n - 4, "{1,1}"), (3, 4 * n, "{2,2}")];
    for (j, expected, name) in cases {
        let label = IrrepLabel::spin3(HalfInt::integer(j)).map_err(|e| e.to_string())?;
        let got = label.casimir2();
        ensure(got == Ratio::from_integer(expected), || format!("C2({name}) = {got}, expected {expected}"))?;
    }
    Ok("C2 = 6, 2, 12 exactly".into())
}

fn alpha_reproduction() -> Outcome {
    // α² exact: (½)² · m(n−m)/n
    let a31 = alpha_squared(3, 1).map_err(|e| e.to_string())?;
    let a42 = alpha_squared(4, 2).map_err(|e| e.to_string())?;
    ensure(a31 == Ratio::new(1, 6), || format!("alpha(3,1)^2 = {a31}"))?;
    ensure(a42 == Ratio::new(1, 4), || format!("alpha(4,2)^2 = {a42}"))?;
    let f31 = alpha_of(3, 1).map_err(|e| e.to_string())?;
    let f42 = alpha_of(4, 2).map_err(|e| e.to_string())?;
    ensure((f31 - 0.5 * (2.0f64 / 3.0).sqrt()).abs() < 1e-15, || format!("alpha(3,1) = {f31}"))?;
    ensure(f42 == 0.5, || format!("alpha(4,2) = {f42}"))?;
    Ok(format!("alpha^2 = 1/6, 1/4; alpha = {f31:.15}, {f42}"))
}

fn tt_residual(spec: SpaceSpec, sigma: f64) -> Result<f64, String> {
    let basis = Arc::new(enumerate_basis(spec).map_err(|e| e.to_string())?);
    let cfg = GellMannConfig::new(spec.n, spec.m_split, c(sigma)).map_err(|e| e.to_string())?;
    let m = build_m(&basis).map_err(|e| e.to_string())?;
    let t = build_t_gellmann(&basis, &cfg).map_err(|e| e.to_string())?;
    Ok(check_tt(&m, &t, &cfg, MARGIN).map_err(|e| e.to_string())?.max_abs_residual)
}

fn validity() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for m in [1, 2] {
        for sigma in SIGMAS {
            let r = tt_residual(SpaceSpec::coset(3, J_MAX, m), sigma)?;
            ensure(r <= TT_TOLERANCE, || format!("m={m} sigma={sigma}: residual {r:e}"))?;
            worst = worst.max(r);
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("max [T,T] residual {worst:.3e} in {elapsed:.2?}"))
}

fn invalidity() -> Outcome {
    let mut least = f64::INFINITY;
    for sigma in SIGMAS {
        let r = tt_residual(SpaceSpec::full(3, J_MAX), sigma)?;
        ensure(r >= 1e-2, || format!("sigma={sigma}: residual only {r:e}"))?;
        least = least.min(r);
    }
    Ok(format!("full-space [T,T] residual >= {least:.3}"))
}

fn equivalence() -> Outcome {
    let mut notes = Vec::new();
    for m in [1, 2] {
        let basis = Arc::new(enumerate_basis(SpaceSpec::coset(3, J_MAX, m)).map_err(|e| e.to_string())?);
        let cfg = GellMannConfig::new(3, m, c(0.0)).map_err(|e| e.to_string())?;
        let fit = fit_t_equivalence(&basis, &cfg, MARGIN).map_err(|e| e.to_string())?;
        ensure(!fit.inconclusive, || format!("m={m}: fit inconclusive"))?;
        ensure(fit.report.max_abs_residual <= 1e-10, || format!("m={m}: {:e}", fit.report.max_abs_residual))?;
        ensure(fit.off_diagonal_residual <= 1e-10, || format!("m={m}: off-diagonal {:e}", fit.off_diagonal_residual))?;
        notes.push(format!("m={m}: a={:.6}{:+.6}i b={:.1e}", fit.a.re, fit.a.im, fit.b.norm()));
    }
    Ok(notes.join("; "))
}

fn multiplicity_free() -> Outcome {
    let specs = [
        SpaceSpec::coset(3, J_MAX, 1),
        SpaceSpec::coset(3, J_MAX, 2),
        SpaceSpec::coset(4, HalfInt::integer(4), 1),
        SpaceSpec::coset(4, HalfInt::integer(4), 2),
        SpaceSpec::coset(4, HalfInt::integer(4), 3),
    ];
    let mut irreps = 0;
    for spec in specs {
        let basis = enumerate_basis(spec).map_err(|e| e.to_string())?;
        let audit = multiplicity_audit(&basis);
        ensure(!audit.is_empty(), || format!("{spec:?}: empty basis"))?;
        for (label, count) in &audit {
            ensure(*count == 1, || format!("n={} m={}: {label} occurs {count} times", spec.n, spec.m_split))?;
            ensure(!label.is_spinorial(), || format!("n={} m={}: spinorial {label}", spec.n, spec.m_split))?;
        }
        irreps += audit.len();
    }
    Ok(format!("{irreps} irreps over 5 coset bases, each once, none spinorial"))
}

/// Both orthogonality relations and both symmetries, every j₁, j₂ ≤ 4.
fn cg_exhaustive() -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    let limit = HalfInt::integer(4);
    for j1 in limit.up_to() {
        for j2 in limit.up_to() {
            let product: Vec<(HalfInt, HalfInt)> =
                j1.projections().flat_map(|m1| j2.projections().map(move |m2| (m1, m2))).collect();
            let coupled: Vec<(HalfInt, HalfInt)> =
                ladder((j1 - j2).abs(), j1 + j2).flat_map(|j| j.projections().map(move |m| (j, m))).collect();
            let d = product.len();
            assert_eq!(coupled.len(), d);
            let mut u = DMatrix::<f64>::zeros(d, d);
            for (r, &(m1, m2)) in product.iter().enumerate() {
                for (col, &(j, m)) in coupled.iter().enumerate() {
                    let v = cg_f64(j1, m1, j2, m2, j, m).map_err(|e| e.to_string())?;
                    u[(r, col)] = v;
                    let phase = if (j1 + j2 - j).twice() % 4 == 0 { 1.0 } else { -1.0 };
                    let swapped = cg_f64(j2, m2, j1, m1, j, m).map_err(|e| e.to_string())?;
                    let flipped = cg_f64(j1, -m1, j2, -m2, j, -m).map_err(|e| e.to_string())?;
                    worst = worst.max((swapped - phase * v).abs()).max((flipped - phase * v).abs());
                }
            }
            let id = DMatrix::<f64>::identity(d, d);
            worst = worst.max((u.transpose() * &u - &id).amax()).max((&u * u.transpose() - id).amax());
        }
    }
    Ok(worst)
}

fn foundation() -> Outcome {
    let cg = cg_exhaustive()?;
    ensure(cg <= 1e-12, || format!("CG defect {cg:e}"))?;
    let mut mk: f64 = 0.0;
    let mut uu: f64 = 0.0;
    for spec in [SpaceSpec::full(3, J_MAX), SpaceSpec::coset(3, J_MAX, 1), SpaceSpec::full(4, HalfInt::integer(3))] {
        let basis = Arc::new(enumerate_basis(spec).map_err(|e| e.to_string())?);
        let cfg = GellMannConfig::new(spec.n, spec.m_split, c(0.0)).map_err(|e| e.to_string())?;
        let m = build_m(&basis).map_err(|e| e.to_string())?;
        let k = build_k(&basis).map_err(|e| e.to_string())?;
        let u = build_u(&basis, &cfg).map_err(|e| e.to_string())?;
        let cas = check_casimirs(&basis).map_err(|e| e.to_string())?;
        ensure(cas.pass, || format!("n={} casimirs {:e}", spec.n, cas.max_abs_residual))?;
        mk = mk.max(check_mk_commute(&m, &k, HalfInt::ZERO).map_err(|e| e.to_string())?.max_abs_residual);
        uu = uu.max(check_uu(&u, &cfg, HalfInt::TWO).map_err(|e| e.to_string())?.max_abs_residual);
    }
    ensure(mk <= 1e-12, || format!("[M,K] = {mk:e}"))?;
    ensure(uu <= 1e-10, || format!("[U,U] = {uu:e}"))?;
    Ok(format!("CG {cg:.1e}, [M,K] {mk:.1e}, [U,U] {uu:.1e}"))
}

fn truncation_stability() -> Outcome {
    let mut rows = 0;
    for sigma in SIGMAS {
        let small = default_grid(3, HalfInt::integer(6), MARGIN, c(sigma)).map_err(|e| e.to_string())?;
        let large = default_grid(3, J_MAX, MARGIN, c(sigma)).map_err(|e| e.to_string())?;
        let a = validity_scan(&small).map_err(|e| e.to_string())?;
        let b = validity_scan(&large).map_err(|e| e.to_string())?;
        for (x, y) in a.iter().zip(&b) {
            ensure(x.pass == y.pass && x.as_expected && y.as_expected, || {
                format!(
                    "{:?} m={}: {:e} -> {:e}",
                    x.config.mode, x.config.m_split, x.max_abs_residual, y.max_abs_residual
                )
            })?;
        }
        rows += a.len();
    }
    Ok(format!("{rows} grid rows unchanged from j_max 6 to 8"))
}

/// `lo, lo + 1, …, hi`.
fn ladder(lo: HalfInt, hi: HalfInt) -> impl Iterator<Item = HalfInt> {
    (lo.twice()..=hi.twice()).step_by(2).map(HalfInt::from_twice)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("casimir identities", casimir_identities),
        ("alpha reproduction", alpha_reproduction),
        ("coset validity", validity),
        ("full-space invalidity", invalidity),
        ("two-construction equivalence", equivalence),
        ("multiplicity-freeness", multiplicity_free),
        ("foundation suite", foundation),
        ("truncation stability", truncation_stability),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
