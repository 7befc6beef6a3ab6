use std::sync::Arc;

use gmrk_core::coupling::{HalfInt, PhaseConvention};
use gmrk_core::group::{CMatrix, SpinGroup};
use gmrk_core::operators::{build_m, build_t_gellmann, build_u, GellMannConfig, XKind, XVector};
use gmrk_core::repspace::{enumerate_basis, BasisIndex, SpaceMode, SpaceSpec};
use gmrk_core::validator::{
    check_little_group_conditions, check_mm, check_mt, check_tt, check_uu, default_grid, fit_t_equivalence,
    little_group_residuals, run_suite, validity_scan, Expectation, SuiteOptions,
};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int(j: i32) -> HalfInt {
    HalfInt::integer(j)
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn basis(spec: SpaceSpec) -> Arc<BasisIndex> {
    Arc::new(enumerate_basis(spec).unwrap())
}

#[test]
fn rotations_close_on_any_space() {
    for spec in [SpaceSpec::full(3, int(4)), SpaceSpec::coset(3, int(4), 1), SpaceSpec::coset(4, int(3), 2)] {
        let b = basis(spec);
        let m = build_m(&b).unwrap();
        let r = check_mm(&m, HalfInt::ZERO).unwrap();
        assert!(r.max_abs_residual <= 1e-12, "{r:?}");
        if spec == SpaceSpec::coset(3, int(4), 1) {
            assert_eq!(r.basis_size, 25);
        }
    }
}

#[test]
fn multiplication_operators_commute_everywhere() {
    for spec in [SpaceSpec::coset(3, int(8), 1), SpaceSpec::full(3, int(6))] {
        let b = basis(spec);
        let cfg = GellMannConfig::new(3, 1, c(0.0)).unwrap();
        let u = build_u(&b, &cfg).unwrap();
        assert!(check_uu(&u, &cfg, int(4)).unwrap().max_abs_residual <= 1e-10);
    }
}

#[test]
fn shear_generators_are_tensors_on_any_space_for_any_sigma() {
    for spec in [SpaceSpec::coset(3, int(6), 1), SpaceSpec::full(3, int(6))] {
        let b = basis(spec);
        let m = build_m(&b).unwrap();
        for sigma in [c(-1.3), c(0.0), Complex64::new(2.0, 0.5)] {
            let cfg = GellMannConfig::new(3, 1, sigma).unwrap();
            let t = build_t_gellmann(&b, &cfg).unwrap();
            let r = check_mt(&m, &t, &cfg, int(2)).unwrap();
            assert!(r.max_abs_residual <= 1e-10, "{r:?}");
        }
    }
}

#[test]
fn closure_holds_on_cosets_and_fails_on_full_space() {
    let cfg = GellMannConfig::new(3, 1, c(0.0)).unwrap();
    let coset = basis(SpaceSpec::coset(3, int(8), 1));
    let t = build_t_gellmann(&coset, &cfg).unwrap();
    assert!(check_tt(&build_m(&coset).unwrap(), &t, &cfg, int(4)).unwrap().pass);

    let full = basis(SpaceSpec::full(3, int(8)));
    let t = build_t_gellmann(&full, &cfg).unwrap();
    let r = check_tt(&build_m(&full).unwrap(), &t, &cfg, int(4)).unwrap();
    assert!(r.max_abs_residual >= 0.1, "{r:?}");
}

#[test]
fn little_group_conditions() {
    for (n, m) in [(3, 1), (4, 2)] {
        assert!(check_little_group_conditions(&GellMannConfig::new(n, m, c(0.0)).unwrap()).unwrap().pass);
    }
    let cfg = GellMannConfig::new(3, 1, c(0.0)).unwrap();
    let group = SpinGroup::new(3, PhaseConvention::CondonShortley).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let mut x = CMatrix::zeros(3, 3);
        for a in 0..3 {
            for b in a..3 {
                let v = c(rng.random_range(-1.0..1.0));
                x[(a, b)] = v;
                x[(b, a)] = v;
            }
        }
        let tr = x.trace() / c(3.0);
        for a in 0..3 {
            x[(a, a)] -= tr;
        }
        let random = XVector::from_cartesian(&group, x, XKind::Custom).unwrap();
        let r = little_group_residuals(&cfg.clone().x(random)).unwrap();
        assert!(r.invariance > 0.1, "{r:?}");
    }
}

#[test]
fn fitted_sigma_relation_is_invertible() {
    for m in [1, 2] {
        let b = basis(SpaceSpec::coset(3, int(8), m));
        let cfg = GellMannConfig::new(3, m, c(1.0)).unwrap();
        let fit = fit_t_equivalence(&b, &cfg, int(4)).unwrap();
        assert!(fit.a.norm() > 0.1);
        assert!(fit.report.max_abs_residual <= 1e-10);
        assert!(fit.off_diagonal_residual <= 1e-10);
    }
}

fn pass_set(n: u8, j_max: i32, margin: i32) -> Vec<(SpaceMode, u8, Option<XKind>)> {
    let grid = default_grid(n, int(j_max), int(margin), c(1.0)).unwrap();
    let reports = validity_scan(&grid).unwrap();
    assert_eq!(reports.len(), grid.len());
    for r in &reports {
        assert!(r.as_expected, "{r:?}");
    }
    reports.iter().filter(|r| r.pass).map(|r| (r.config.mode, r.config.m_split, r.config.x)).collect()
}

#[test]
fn n3_scan_passes_exactly_on_cosets() {
    let canonical = Some(XKind::Canonical);
    assert_eq!(pass_set(3, 8, 4), vec![(SpaceMode::Coset, 1, canonical), (SpaceMode::Coset, 2, canonical)]);
}

#[test]
fn n4_scan_passes_exactly_on_cosets() {
    let canonical = Some(XKind::Canonical);
    assert_eq!(
        pass_set(4, 4, 2),
        vec![(SpaceMode::Coset, 1, canonical), (SpaceMode::Coset, 2, canonical), (SpaceMode::Coset, 3, canonical)]
    );
}

#[test]
fn perturbed_x_is_a_demonstrated_failure() {
    let grid = default_grid(3, int(8), int(4), c(0.0)).unwrap();
    let perturbed: Vec<_> = grid.into_iter().filter(|e| e.x == XKind::Perturbed).collect();
    let r = &validity_scan(&perturbed).unwrap()[0];
    assert_eq!(r.expectation, Expectation::Fail);
    assert!(!r.pass && r.as_expected, "{r:?}");
}

fn suite(spec: SpaceSpec, margin: i32, tolerance: Option<f64>) -> Vec<gmrk_core::validator::ResidualReport> {
    run_suite(&SuiteOptions { spec, sigma: c(1.0), margin: int(margin), tolerance }).unwrap()
}

#[test]
fn suites_meet_their_expectations() {
    for spec in [SpaceSpec::coset(3, int(8), 1), SpaceSpec::full(3, int(6)), SpaceSpec::coset(4, int(3), 2)] {
        let margin = if spec.n == 3 { 4 } else { 2 };
        let reports = suite(spec, margin, None);
        for r in &reports {
            assert!(r.as_expected, "{r:?}");
        }
        let tt = reports.iter().find(|r| r.check_name == "tt").unwrap();
        assert_eq!(tt.pass, spec.mode == SpaceMode::Coset);
        assert_eq!(reports.iter().any(|r| r.check_name == "t_equivalence"), spec.mode == SpaceMode::Coset);
    }
}

#[test]
fn absurd_tolerance_exposes_float_noise() {
    let reports = suite(SpaceSpec::coset(3, int(8), 1), 4, Some(1e-18));
    assert!(reports.iter().any(|r| !r.as_expected));
    assert!(reports.iter().all(|r| r.tolerance == 1e-18));
}
