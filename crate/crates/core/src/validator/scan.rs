//! The validity scan and the standard validation suite.

use std::sync::Arc;

use num::complex::Complex64;
use rayon::prelude::*;

use super::{
    check_casimirs, check_little_group_conditions, check_mk_commute, check_mm, check_mt, check_sigma_cancellation,
    check_structure_constants, check_tt, check_uu, fit_t_equivalence, Expectation, ResidualReport,
};
use crate::coupling::HalfInt;
use crate::error::Result;
use crate::operators::{
    build_k, build_m, build_t_gellmann_from_u, build_u, build_u_unchecked, GellMannConfig, XKind, XVector,
};
use crate::repspace::{enumerate_basis, SpaceMode, SpaceSpec};

/// Size of the off-diagonal admixture in a perturbed `x`.
pub const PERTURBATION: f64 = 0.1;

/// One configuration of the scan.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ScanEntry {
    pub spec: SpaceSpec,
    pub x: XKind,
    pub sigma: Complex64,
    pub margin: HalfInt,
}

impl ScanEntry {
    /// Closure is expected exactly on coset spaces with the canonical `x`.
    pub fn expectation(&self) -> Expectation {
        if self.spec.mode == SpaceMode::Coset && self.x == XKind::Canonical {
            Expectation::Pass
        } else {
            Expectation::Fail
        }
    }

    fn config(&self) -> Result<GellMannConfig> {
        let cfg = GellMannConfig::with_phase(self.spec.n, self.spec.m_split, self.sigma, self.spec.phase)?;
        Ok(match self.x {
            XKind::Canonical => cfg,
            XKind::Perturbed | XKind::Custom => {
                let x = XVector::perturbed(&cfg.group(), self.spec.m_split, PERTURBATION)?;
                cfg.x(x)
            }
        })
    }

    /// The `[T, T]` report for this configuration.
    pub fn run(&self) -> Result<ResidualReport> {
        let basis = Arc::new(enumerate_basis(self.spec)?);
        let cfg = self.config()?;
        let u = build_u_unchecked(&basis, &cfg)?;
        let t = build_t_gellmann_from_u(&basis, &cfg, &u)?;
        let m = build_m(&basis)?;
        Ok(check_tt(&m, &t, &cfg, self.margin)?.expecting(self.expectation()))
    }
}

/// Full space (m = 1), every coset split, and the m = 1 coset with a
/// perturbed `x`.
pub fn default_grid(n: u8, j_max: HalfInt, margin: HalfInt, sigma: Complex64) -> Result<Vec<ScanEntry>> {
    SpaceSpec::full(n, j_max).validate()?;
    let entry = |spec, x| ScanEntry { spec, x, sigma, margin };
    let mut grid = vec![entry(SpaceSpec::full(n, j_max), XKind::Canonical)];
    for m in 1..n {
        grid.push(entry(SpaceSpec::coset(n, j_max, m), XKind::Canonical));
    }
    grid.push(entry(SpaceSpec::coset(n, j_max, 1), XKind::Perturbed));
    Ok(grid)
}

/// One `[T, T]` report per entry, in grid order.
pub fn validity_scan(entries: &[ScanEntry]) -> Result<Vec<ResidualReport>> {
    entries.par_iter().map(ScanEntry::run).collect()
}

/// Settings for [`run_suite`].
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub spec: SpaceSpec,
    pub sigma: Complex64,
    pub margin: HalfInt,
    /// Overrides every per-check tolerance when set.
    pub tolerance: Option<f64>,
}

/// Every check for one configuration. `[T, T]` is expected to close on a
/// coset space and to fail on the full space.
pub fn run_suite(opts: &SuiteOptions) -> Result<Vec<ResidualReport>> {
    let spec = opts.spec;
    let basis = Arc::new(enumerate_basis(spec)?);
    let cfg = GellMannConfig::with_phase(spec.n, spec.m_split, opts.sigma, spec.phase)?;
    let margin = opts.margin;

    let m = build_m(&basis)?;
    let k = build_k(&basis)?;
    let u = build_u(&basis, &cfg)?;
    let t = build_t_gellmann_from_u(&basis, &cfg, &u)?;
    let t_zero = if opts.sigma == Complex64::new(0.0, 0.0) {
        t.clone()
    } else {
        build_t_gellmann_from_u(&basis, &cfg.clone().sigma(Complex64::new(0.0, 0.0)), &u)?
    };
    let tt_expectation = match spec.mode {
        SpaceMode::Coset => Expectation::Pass,
        SpaceMode::Full => Expectation::Fail,
    };

    let mut reports = vec![
        check_structure_constants(spec.n)?,
        check_little_group_conditions(&cfg)?,
        check_mm(&m, margin)?,
        check_mk_commute(&m, &k, margin)?,
        check_casimirs(&basis)?,
        check_uu(&u, &cfg, margin)?,
        check_mt(&m, &t, &cfg, margin)?,
        check_sigma_cancellation(&t_zero, &u, &cfg, margin)?,
        check_tt(&m, &t, &cfg, margin)?.expecting(tt_expectation),
    ];
    if spec.mode == SpaceMode::Coset {
        reports.push(fit_t_equivalence(&basis, &cfg, margin)?.report);
    }
    if let Some(tol) = opts.tolerance {
        reports = reports.into_iter().map(|r| r.with_tolerance(tol)).collect();
    }
    Ok(reports)
}
