//! Numerical certification of the algebraic claims: commutation relations
//! on interior states, the little-group conditions, agreement of the two
//! `T` constructions, and the validity scan.
//!
//! Every residual is the largest entry magnitude of the interior block of
//! a difference matrix. Tolerances are implementation choices; see the
//! constants below.

mod closure;
mod equivalence;
mod interior;
mod little_group;
mod scan;
mod structure;

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coupling::{HalfInt, PhaseConvention};
use crate::operators::{GellMannConfig, XKind};
use crate::repspace::{SpaceMode, SpaceSpec};

pub use closure::{check_casimirs, check_mk_commute, check_mm, check_mt, check_sigma_cancellation, check_tt, check_uu};
pub use equivalence::{fit_t_equivalence, EquivalenceFit};
pub use little_group::{
    audit_subalgebra, check_little_group_conditions, little_group_residuals, u2_generators, LittleGroupResiduals,
    SubalgebraAudit,
};
pub use scan::{default_grid, run_suite, validity_scan, ScanEntry, SuiteOptions};
pub use structure::check_structure_constants;

/// Default pass threshold.
pub const PASS_TOLERANCE: f64 = 1e-10;
/// Pass threshold for `[T, T]`, whose entries are products of larger numbers.
pub const TT_TOLERANCE: f64 = 1e-9;
/// Pass threshold for the exact little-group conditions.
pub const LITTLE_GROUP_TOLERANCE: f64 = 1e-12;
/// A demonstration of failure needs a residual at least this large.
pub const FAIL_THRESHOLD: f64 = 1e-2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Pass,
    Fail,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

/// The configuration a report was produced under.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub n: u8,
    pub j_max: HalfInt,
    pub mode: SpaceMode,
    pub m_split: u8,
    pub phase: PhaseConvention,
    pub sigma: Option<ComplexValue>,
    pub alpha: Option<f64>,
    pub u_norm: Option<f64>,
    pub x: Option<XKind>,
}

impl ConfigSnapshot {
    pub fn of(spec: &SpaceSpec, cfg: Option<&GellMannConfig>) -> Self {
        ConfigSnapshot {
            n: spec.n,
            j_max: spec.j_max,
            mode: spec.mode,
            m_split: cfg.map_or(spec.m_split, |c| c.m_split),
            phase: spec.phase,
            sigma: cfg.map(|c| c.sigma.into()),
            alpha: cfg.map(|c| c.alpha),
            u_norm: cfg.map(|c| c.u_norm),
            x: cfg.map(|c| c.x.kind),
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub check_name: String,
    pub max_abs_residual: f64,
    pub interior_margin: HalfInt,
    pub basis_size: usize,
    pub config: ConfigSnapshot,
    pub tolerance: f64,
    /// `max_abs_residual ≤ tolerance`.
    pub pass: bool,
    pub expectation: Expectation,
    /// `pass` for expected passes; `residual ≥ FAIL_THRESHOLD` for expected failures.
    pub as_expected: bool,
}

impl ResidualReport {
    pub fn new(
        check_name: impl Into<String>,
        residual: f64,
        interior_margin: HalfInt,
        basis_size: usize,
        config: ConfigSnapshot,
        tolerance: f64,
    ) -> Self {
        let pass = residual <= tolerance;
        ResidualReport {
            check_name: check_name.into(),
            max_abs_residual: residual,
            interior_margin,
            basis_size,
            config,
            tolerance,
            pass,
            expectation: Expectation::Pass,
            as_expected: pass,
        }
    }

    pub fn expecting(mut self, expectation: Expectation) -> Self {
        self.expectation = expectation;
        self.as_expected = match expectation {
            Expectation::Pass => self.pass,
            Expectation::Fail => self.max_abs_residual >= FAIL_THRESHOLD,
        };
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.max_abs_residual <= tolerance;
        let expectation = self.expectation;
        self.expecting(expectation)
    }
}
