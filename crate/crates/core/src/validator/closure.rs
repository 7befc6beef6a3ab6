//! Commutation relations on interior states.
//!
//! Conventions (the defining realization `M_ab = −i(E_ab − E_ba)`,
//! `T_ab = i(E_ab + E_ba)` satisfies all three):
//!
//! ```text
//! [M_ab, M_cd] = i(δ_ac M_bd + δ_bd M_ac − δ_ad M_bc − δ_bc M_ad)
//! [M_ab, T_cd] = i(δ_ac T_bd + δ_ad T_bc − δ_bc T_ad − δ_bd T_ac)
//! [T_ab, T_cd] = i(δ_ac M_db + δ_ad M_cb + δ_bc M_da + δ_bd M_ca)
//! ```

use std::sync::Arc;

use num::complex::Complex64;

use super::interior::{combine, delta, max_abs_difference, CommutatorTable, InteriorFamily};
use super::{ConfigSnapshot, ResidualReport, PASS_TOLERANCE, TT_TOLERANCE};
use crate::coupling::HalfInt;
use crate::error::{Error, Result};
use crate::operators::{build_casimir_k, build_casimir_m, GellMannConfig, OperatorMatrix, TensorKind};
use crate::repspace::BasisIndex;
use crate::sparse::SparseMatrix;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn context(family: &[OperatorMatrix], margin: HalfInt) -> Result<(Arc<BasisIndex>, Vec<usize>)> {
    let first = family.first().ok_or_else(|| Error::MissingComponent("empty operator family".into()))?;
    let basis = first.basis().clone();
    let interior = basis.interior(margin);
    Ok((basis, interior))
}

fn report(
    name: &str,
    residual: f64,
    margin: HalfInt,
    basis: &BasisIndex,
    cfg: Option<&GellMannConfig>,
    tolerance: f64,
) -> ResidualReport {
    ResidualReport::new(name, residual, margin, basis.len(), ConfigSnapshot::of(basis.spec(), cfg), tolerance)
}

/// `so(n)` closure of the right-action generators.
pub fn check_mm(m: &[OperatorMatrix], margin: HalfInt) -> Result<ResidualReport> {
    let (basis, interior) = context(m, margin)?;
    let size = interior.len();
    let dm = InteriorFamily::new(m, TensorKind::Adjoint, &interior)?;
    let table = CommutatorTable::new(m, m, &interior);
    let pairs = basis.group().cartesian_pairs();
    let mut worst: f64 = 0.0;
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            let lhs = table.cartesian(&dm.map, &dm.map, (a, b), (c, d));
            let rhs = combine(
                size,
                &[
                    (delta(a, c), dm.get(b, d)),
                    (delta(b, d), dm.get(a, c)),
                    (-delta(a, d), dm.get(b, c)),
                    (-delta(b, c), dm.get(a, d)),
                ],
                I,
            );
            worst = worst.max(max_abs_difference(&lhs, &rhs));
        }
    }
    Ok(report("mm", worst, margin, &basis, None, PASS_TOLERANCE))
}

/// Left and right actions commute.
pub fn check_mk_commute(m: &[OperatorMatrix], k: &[OperatorMatrix], margin: HalfInt) -> Result<ResidualReport> {
    let (basis, interior) = context(m, margin)?;
    let residual = CommutatorTable::new(m, k, &interior).max_abs();
    Ok(report("mk_commute", residual, margin, &basis, None, PASS_TOLERANCE))
}

/// The multiplication operators commute among themselves.
pub fn check_uu(u: &[OperatorMatrix], cfg: &GellMannConfig, margin: HalfInt) -> Result<ResidualReport> {
    let (basis, interior) = context(u, margin)?;
    let residual = CommutatorTable::new(u, u, &interior).max_abs();
    Ok(report("uu", residual, margin, &basis, Some(cfg), PASS_TOLERANCE))
}

/// `T` transforms as a symmetric traceless tensor.
pub fn check_mt(
    m: &[OperatorMatrix],
    t: &[OperatorMatrix],
    cfg: &GellMannConfig,
    margin: HalfInt,
) -> Result<ResidualReport> {
    let (basis, interior) = context(m, margin)?;
    let size = interior.len();
    let dm = InteriorFamily::new(m, TensorKind::Adjoint, &interior)?;
    let dt = InteriorFamily::new(t, TensorKind::Symmetric, &interior)?;
    let table = CommutatorTable::new(m, t, &interior);
    let n = basis.spec().n as usize;
    let mut worst: f64 = 0.0;
    for (a, b) in basis.group().cartesian_pairs() {
        for c in 0..n {
            for d in c..n {
                let lhs = table.cartesian(&dm.map, &dt.map, (a, b), (c, d));
                let rhs = combine(
                    size,
                    &[
                        (delta(a, c), dt.get(b, d)),
                        (delta(a, d), dt.get(b, c)),
                        (-delta(b, c), dt.get(a, d)),
                        (-delta(b, d), dt.get(a, c)),
                    ],
                    I,
                );
                worst = worst.max(max_abs_difference(&lhs, &rhs));
            }
        }
    }
    Ok(report("mt", worst, margin, &basis, Some(cfg), PASS_TOLERANCE))
}

/// Shear generators close onto the rotations: the relation that holds only
/// when the little group is represented trivially.
pub fn check_tt(
    m: &[OperatorMatrix],
    t: &[OperatorMatrix],
    cfg: &GellMannConfig,
    margin: HalfInt,
) -> Result<ResidualReport> {
    let (basis, interior) = context(m, margin)?;
    let size = interior.len();
    let dm = InteriorFamily::new(m, TensorKind::Adjoint, &interior)?;
    let dt = InteriorFamily::new(t, TensorKind::Symmetric, &interior)?;
    let table = CommutatorTable::new(t, t, &interior);
    let n = basis.spec().n as usize;
    let sym_pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut worst: f64 = 0.0;
    for (i, &(a, b)) in sym_pairs.iter().enumerate() {
        // antisymmetric under (ab) ↔ (cd), so half the pairs suffice
        for &(c, d) in &sym_pairs[i..] {
            let lhs = table.cartesian(&dt.map, &dt.map, (a, b), (c, d));
            let rhs = combine(
                size,
                &[
                    (delta(a, c), dm.get(d, b)),
                    (delta(a, d), dm.get(c, b)),
                    (delta(b, c), dm.get(d, a)),
                    (delta(b, d), dm.get(c, a)),
                ],
                I,
            );
            worst = worst.max(max_abs_difference(&lhs, &rhs));
        }
    }
    Ok(report("tt", worst, margin, &basis, Some(cfg), TT_TOLERANCE))
}

/// `C₂_K = C₂_M = C₂(J)` on every block, over the whole truncated space
/// (both operators are block diagonal, so truncation does not enter).
pub fn check_casimirs(basis: &Arc<BasisIndex>) -> Result<ResidualReport> {
    let ck = build_casimir_k(basis)?;
    let cm = build_casimir_m(basis)?;
    let diagonal: Vec<(usize, usize, Complex64)> =
        basis.states().iter().enumerate().map(|(i, s)| (i, i, Complex64::new(s.label.casimir2_f64(), 0.0))).collect();
    let exact = SparseMatrix::from_triplets(basis.len(), basis.len(), &diagonal);
    let residual = ck.matrix.sub(&cm.matrix).max_abs().max(cm.matrix.sub(&exact).max_abs());
    Ok(report("casimirs", residual, HalfInt::ZERO, basis, None, PASS_TOLERANCE))
}

/// With `T(σ) = A + σU/|u|`, the commutator `[T, T]` picks up
/// `σ([A, U] + [U, A])/|u|` and `σ²[U, U]/|u|²`; both must vanish for the
/// closure to be σ-independent. `a` is the family built at σ = 0.
pub fn check_sigma_cancellation(
    a: &[OperatorMatrix],
    u: &[OperatorMatrix],
    cfg: &GellMannConfig,
    margin: HalfInt,
) -> Result<ResidualReport> {
    let (basis, interior) = context(a, margin)?;
    let au = CommutatorTable::new(a, u, &interior);
    let mut worst: f64 = 0.0;
    for i in 0..a.len() {
        for j in 0..u.len() {
            // [A_i, U_j] + [U_i, A_j] = [A_i, U_j] − [A_j, U_i]
            worst = worst.max(max_abs_difference(au.get(i, j), au.get(j, i)) / cfg.u_norm);
        }
    }
    let uu = CommutatorTable::new(u, u, &interior).max_abs() / (cfg.u_norm * cfg.u_norm);
    Ok(report("sigma_cancellation", worst.max(uu), margin, &basis, Some(cfg), PASS_TOLERANCE))
}
