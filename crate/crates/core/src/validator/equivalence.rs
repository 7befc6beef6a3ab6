//! Agreement of the Gell-Mann formula with the closed-form matrix elements.
//!
//! Both constructions are affine in their σ: `T(σ) = A + σB`. Matching
//! `T_closed(a·σ + b) = T_gellmann(σ)` for all σ is a linear least-squares
//! problem in `(a, b)` whose normal equations only involve `B_closed`.

use std::sync::Arc;

use num::complex::Complex64;

use super::interior::max_abs_difference;
use super::{ConfigSnapshot, ResidualReport, PASS_TOLERANCE};
use crate::coupling::HalfInt;
use crate::error::Result;
use crate::operators::{build_t_closed, build_t_gellmann, GellMannConfig};
use crate::repspace::BasisIndex;
use crate::sparse::SparseMatrix;

/// The fitted relation `σ_closed = a · σ_gellmann + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceFit {
    pub a: Complex64,
    pub b: Complex64,
    /// Set when the σ-dependent part of the closed form vanishes on the
    /// interior, so the fit is undetermined.
    pub inconclusive: bool,
    /// `T_gellmann(0) − T_closed(0)` on the `J' ≠ J` entries, with no fit.
    pub off_diagonal_residual: f64,
    /// Worst mismatch after the fit, over σ ∈ {0, 1, 2.5}.
    pub report: ResidualReport,
}

fn interior_blocks(
    basis: &Arc<BasisIndex>,
    cfg: &GellMannConfig,
    sigma: Complex64,
    closed: bool,
    interior: &[usize],
) -> Result<Vec<SparseMatrix>> {
    let cfg = cfg.clone().sigma(sigma);
    let family = if closed { build_t_closed(basis, &cfg)? } else { build_t_gellmann(basis, &cfg)? };
    Ok(family.iter().map(|op| op.matrix.restrict(interior, interior)).collect())
}

fn inner(x: &[SparseMatrix], y: &[SparseMatrix]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.inner(b)).sum()
}

fn difference(x: &[SparseMatrix], y: &[SparseMatrix]) -> Vec<SparseMatrix> {
    let (one, minus) = (Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0));
    x.iter().zip(y).map(|(a, b)| SparseMatrix::exact_combination(&[(one, a), (minus, b)])).collect()
}

/// Fit the σ relation between the two constructions on a coset basis.
pub fn fit_t_equivalence(basis: &Arc<BasisIndex>, cfg: &GellMannConfig, margin: HalfInt) -> Result<EquivalenceFit> {
    let interior = basis.interior(margin);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let g0 = interior_blocks(basis, cfg, zero, false, &interior)?;
    let g1 = interior_blocks(basis, cfg, one, false, &interior)?;
    let c0 = interior_blocks(basis, cfg, zero, true, &interior)?;
    let c1 = interior_blocks(basis, cfg, one, true, &interior)?;
    let bg = difference(&g1, &g0);
    let bc = difference(&c1, &c0);

    let norm = inner(&bc, &bc).re;
    let inconclusive = norm < 1e-24;
    let (a, b) =
        if inconclusive { (zero, zero) } else { (inner(&bc, &bg) / norm, inner(&bc, &difference(&g0, &c0)) / norm) };

    let labels: Vec<_> = interior.iter().map(|&i| basis.state(i).label).collect();
    let mut off_diagonal: f64 = 0.0;
    for d in difference(&g0, &c0) {
        for (r, c, v) in d.entries() {
            if labels[r] != labels[c] {
                off_diagonal = off_diagonal.max(v.norm());
            }
        }
    }

    let mut worst: f64 = if inconclusive { f64::INFINITY } else { 0.0 };
    if !inconclusive {
        for s in [0.0, 1.0, 2.5] {
            let s = Complex64::new(s, 0.0);
            let g = interior_blocks(basis, cfg, s, false, &interior)?;
            let c = interior_blocks(basis, cfg, a * s + b, true, &interior)?;
            for (x, y) in g.iter().zip(&c) {
                worst = worst.max(max_abs_difference(x, y));
            }
        }
    }
    let report = ResidualReport::new(
        "t_equivalence",
        worst,
        margin,
        basis.len(),
        ConfigSnapshot::of(basis.spec(), Some(cfg)),
        PASS_TOLERANCE,
    );
    Ok(EquivalenceFit { a, b, inconclusive, off_diagonal_residual: off_diagonal, report })
}
