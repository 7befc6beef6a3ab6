//! The two conditions on the little group `L` of `x`: `(so(n), L)` must be a
//! symmetric pair, and `x` must be `L`-invariant.

use nalgebra::SymmetricEigen;
use num::complex::Complex64;

use super::{ConfigSnapshot, ResidualReport, LITTLE_GROUP_TOLERANCE};
use crate::coupling::{self, HalfInt};
use crate::error::Result;
use crate::group::{CMatrix, SpinGroup};
use crate::operators::{invariance_defect, GellMannConfig};
use crate::repspace::{SpaceMode, SpaceSpec};

/// Residuals of the two conditions for one configuration.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LittleGroupResiduals {
    /// Worst violation of `[L, L] ⊂ L`, `[L, N] ⊂ N`, `[N, N] ⊂ L`.
    pub symmetric_pair: f64,
    /// Largest entry of `ρ_{2}(K_α) x` over the generators of `L`.
    pub invariance: f64,
}

/// What a candidate subalgebra allows.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SubalgebraAudit {
    pub symmetric_pair: f64,
    /// Dimension of the `L`-invariant subspace of `{2}`.
    pub invariant_dim: usize,
}

/// Coordinates of an antisymmetric `n × n` matrix on the generators
/// `M_ab`, `a < b` (each has `tr(M†M) = 2`).
fn coordinates(group: &SpinGroup, x: &CMatrix) -> Vec<Complex64> {
    group
        .cartesian_pairs()
        .into_iter()
        .map(|(a, b)| (group.defining_generator(a, b).adjoint() * x).trace() / 2.0)
        .collect()
}

/// Orthonormal basis (as coordinate columns) of the span of `gens`, and of
/// its orthogonal complement in so(n).
fn split(group: &SpinGroup, gens: &[CMatrix]) -> (CMatrix, CMatrix) {
    let d = group.cartesian_pairs().len();
    let mut proj = CMatrix::zeros(d, d);
    for g in gens {
        let v = CMatrix::from_column_slice(d, 1, &coordinates(group, g));
        proj += &v * v.adjoint();
    }
    let eig = SymmetricEigen::new(proj);
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for i in 0..d {
        let col = eig.eigenvectors.column(i).into_owned();
        if eig.eigenvalues[i] > 1e-10 {
            inside.push(col);
        } else {
            outside.push(col);
        }
    }
    let stack = |cols: Vec<nalgebra::DVector<Complex64>>| {
        if cols.is_empty() {
            CMatrix::zeros(d, 0)
        } else {
            CMatrix::from_columns(&cols)
        }
    };
    (stack(inside), stack(outside))
}

fn matrix_of(group: &SpinGroup, coords: &[Complex64]) -> CMatrix {
    let n = group.n() as usize;
    let mut out = CMatrix::zeros(n, n);
    for ((a, b), c) in group.cartesian_pairs().into_iter().zip(coords) {
        out += group.defining_generator(a, b) * *c;
    }
    out
}

/// Largest component of `[X, Y]` along the subspace `target` (orthonormal
/// columns), over `X ∈ xs`, `Y ∈ ys`.
fn leakage(group: &SpinGroup, xs: &CMatrix, ys: &CMatrix, target: &CMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..xs.ncols() {
        let x = matrix_of(group, xs.column(i).as_slice());
        for j in 0..ys.ncols() {
            let y = matrix_of(group, ys.column(j).as_slice());
            let c = coordinates(group, &(&x * &y - &y * &x));
            let v = CMatrix::from_column_slice(c.len(), 1, &c);
            let along = target.adjoint() * v;
            worst = along.iter().map(|z| z.norm()).fold(worst, f64::max);
        }
    }
    worst
}

/// Audit an arbitrary subalgebra given by generators in the defining
/// representation.
pub fn audit_subalgebra(group: &SpinGroup, gens: &[CMatrix]) -> Result<SubalgebraAudit> {
    let (l, nn) = split(group, gens);
    let symmetric_pair =
        leakage(group, &l, &l, &nn).max(leakage(group, &l, &nn, &l)).max(leakage(group, &nn, &nn, &nn));

    let sym = coupling::symmetric_irrep(group.n())?;
    let d = sym.dim();
    let mut gram = CMatrix::zeros(d, d);
    for i in 0..l.ncols() {
        let mut rho = CMatrix::zeros(d, d);
        for ((a, b), c) in group.cartesian_pairs().into_iter().zip(l.column(i).iter()) {
            if c.norm() > 0.0 {
                rho += group.cartesian_generator(sym, a, b)? * *c;
            }
        }
        gram += rho.adjoint() * &rho;
    }
    let invariant_dim = SymmetricEigen::new(gram).eigenvalues.iter().filter(|&&e| e.abs() < 1e-10).count();
    Ok(SubalgebraAudit { symmetric_pair, invariant_dim })
}

/// Both residuals for the configuration's `L = Spin(m) × Spin(n − m)`.
pub fn little_group_residuals(cfg: &GellMannConfig) -> Result<LittleGroupResiduals> {
    let group = cfg.group();
    let gens: Vec<CMatrix> =
        group.little_group_pairs(cfg.m_split).into_iter().map(|(a, b)| group.defining_generator(a, b)).collect();
    let audit = audit_subalgebra(&group, &gens)?;
    Ok(LittleGroupResiduals {
        symmetric_pair: audit.symmetric_pair,
        invariance: invariance_defect(&group, cfg.m_split, &cfg.x)?,
    })
}

/// One report covering both conditions (the larger residual).
pub fn check_little_group_conditions(cfg: &GellMannConfig) -> Result<ResidualReport> {
    let r = little_group_residuals(cfg)?;
    let spec =
        SpaceSpec { n: cfg.n, j_max: HalfInt::ZERO, mode: SpaceMode::Coset, m_split: cfg.m_split, phase: cfg.phase };
    Ok(ResidualReport::new(
        "little_group",
        r.symmetric_pair.max(r.invariance),
        HalfInt::ZERO,
        0,
        ConfigSnapshot::of(&spec, Some(cfg)),
        LITTLE_GROUP_TOLERANCE,
    ))
}

/// Generators of `u(2) ⊂ so(4)`: the centraliser of the complex structure
/// `M_12 + M_34`, i.e. `su(2)` of the second factor plus `u(1)` of the first.
pub fn u2_generators(group: &SpinGroup) -> Vec<CMatrix> {
    let g = |a, b| group.defining_generator(a, b);
    let half = Complex64::new(0.5, 0.0);
    vec![(g(0, 1) + g(2, 3)) * half, (g(1, 2) - g(0, 3)) * half, (g(2, 0) - g(1, 3)) * half, (g(0, 1) - g(2, 3)) * half]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::PhaseConvention;
    use crate::operators::{XKind, XVector};

    #[test]
    fn canonical_splits_satisfy_both_conditions() {
        for (n, m) in [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)] {
            let cfg = GellMannConfig::new(n, m, Complex64::new(0.0, 0.0)).unwrap();
            let r = little_group_residuals(&cfg).unwrap();
            assert!(r.symmetric_pair < 1e-14 && r.invariance < 1e-14, "({n},{m}): {r:?}");
            assert!(check_little_group_conditions(&cfg).unwrap().pass);
        }
    }

    #[test]
    fn perturbed_x_breaks_invariance() {
        let cfg = GellMannConfig::new(3, 1, Complex64::new(0.0, 0.0)).unwrap();
        let g = cfg.group();
        let bad = cfg.clone().x(XVector::perturbed(&g, 1, 0.3).unwrap());
        assert!(little_group_residuals(&bad).unwrap().invariance > 0.1);
        assert_eq!(bad.x.kind, XKind::Perturbed);
    }

    #[test]
    fn u2_is_symmetric_but_fixes_no_x() {
        let g = SpinGroup::new(4, PhaseConvention::CondonShortley).unwrap();
        let audit = audit_subalgebra(&g, &u2_generators(&g)).unwrap();
        assert!(audit.symmetric_pair < 1e-14, "{audit:?}");
        assert_eq!(audit.invariant_dim, 0);
    }

    #[test]
    fn non_symmetric_subalgebra_is_detected() {
        // so(2) in the 1-2 plane of so(4) is not a symmetric subalgebra
        let g = SpinGroup::new(4, PhaseConvention::CondonShortley).unwrap();
        let audit = audit_subalgebra(&g, &[g.defining_generator(0, 1)]).unwrap();
        assert!(audit.symmetric_pair > 0.1);
    }
}
