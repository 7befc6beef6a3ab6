use std::sync::Arc;

use num::complex::Complex64;

use super::assemble::{assemble_family, BlockContribution, LeftFactor};
use super::{spherical_to_cartesian, GellMannConfig, OperatorMatrix, TensorTag, XVector};
use crate::coupling::{self, cg_irrep_f64};
use crate::error::{Error, Result};
use crate::group::{CMatrix, SpinGroup};
use crate::repspace::{BasisIndex, SpaceMode};
use crate::sparse::SparseMatrix;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest `|ρ_{2}(M_ab) x|` over the generators of `Spin(m) × Spin(n−m)`;
/// zero exactly when `x` is invariant under the little group.
pub fn invariance_defect(group: &SpinGroup, m_split: u8, x: &XVector) -> Result<f64> {
    let sym = coupling::symmetric_irrep(group.n())?;
    let v = CMatrix::from_column_slice(x.spherical.len(), 1, &x.spherical);
    let mut worst: f64 = 0.0;
    for (a, b) in group.little_group_pairs(m_split) {
        let image = group.cartesian_generator(sym, a, b)? * &v;
        worst = image.iter().map(|z| z.norm()).fold(worst, f64::max);
    }
    Ok(worst)
}

/// Right-action generators: identity on `k`, `ρ_J(M_c)` on `m`.
pub fn build_m(basis: &Arc<BasisIndex>) -> Result<Vec<OperatorMatrix>> {
    let group = *basis.group();
    let comps = group.adjoint_components();
    let mats = assemble_family(basis, comps.len(), |from, to| {
        if from.label != to.label {
            return Ok(None);
        }
        let d = from.dim();
        let right = comps.iter().map(|&c| Ok(Some((group.generator(from.label, c)?, ONE)))).collect::<Result<_>>()?;
        Ok(Some(BlockContribution { left: LeftFactor::Raw(CMatrix::identity(d, d)), right }))
    })?;
    Ok(tagged(basis, "M", mats, comps.into_iter().map(TensorTag::Adjoint)))
}

/// Left-action generators: `ρ_J(M_c)` on `k` (projected onto the frame),
/// identity on `m`.
pub fn build_k(basis: &Arc<BasisIndex>) -> Result<Vec<OperatorMatrix>> {
    let group = *basis.group();
    let comps = group.adjoint_components();
    let mut out = Vec::with_capacity(comps.len());
    for &c in &comps {
        let mut mats = assemble_family(basis, 1, |from, to| {
            if from.label != to.label {
                return Ok(None);
            }
            let d = from.dim();
            Ok(Some(BlockContribution {
                left: LeftFactor::Raw(group.generator(from.label, c)?),
                right: vec![Some((CMatrix::identity(d, d), ONE))],
            }))
        })?;
        out.push(OperatorMatrix::new("K", TensorTag::Adjoint(c), mats.remove(0), basis.clone()));
    }
    Ok(out)
}

/// Multiplication operators `U_μ`; rejects an `x` that the little group
/// moves.
pub fn build_u(basis: &Arc<BasisIndex>, cfg: &GellMannConfig) -> Result<Vec<OperatorMatrix>> {
    cfg.check_against(basis)?;
    let defect = invariance_defect(basis.group(), cfg.m_split, &cfg.x)?;
    if defect > 1e-10 {
        return Err(Error::Config(format!(
            "x is not invariant under Spin({})×Spin({}) (defect {defect:.3e})",
            cfg.m_split,
            cfg.n - cfg.m_split
        )));
    }
    build_u_unchecked(basis, cfg)
}

/// [`build_u`] without the little-group check, for demonstrating what goes
/// wrong with a non-invariant `x`.
///
/// ⟨J' k' m'|U_μ|J k m⟩ = |u| √(dim J / dim J') · Σ_ν x̄_ν ⟨J k; {2} ν|J' k'⟩ · ⟨J m; {2} μ|J' m'⟩
pub fn build_u_unchecked(basis: &Arc<BasisIndex>, cfg: &GellMannConfig) -> Result<Vec<OperatorMatrix>> {
    cfg.check_against(basis)?;
    let group = *basis.group();
    let sym = coupling::symmetric_irrep(group.n())?;
    let comps = group.symmetric_components();
    let mats = assemble_family(basis, comps.len(), |from, to| {
        if !coupling::couples(from.label, sym, to.label) {
            return Ok(None);
        }
        let mut left = CMatrix::zeros(to.dim(), from.dim());
        for (nu, &c) in comps.iter().enumerate() {
            let xn = cfg.x.spherical[nu].conj();
            if xn.norm() > 0.0 {
                left += group.coupling_matrix(from.label, c, to.label)? * xn;
            }
        }
        let scale = Complex64::new(cfg.u_norm * (from.dim() as f64 / to.dim() as f64).sqrt(), 0.0);
        let right = comps
            .iter()
            .map(|&c| Ok(Some((group.coupling_matrix(from.label, c, to.label)?, scale))))
            .collect::<Result<_>>()?;
        Ok(Some(BlockContribution { left: LeftFactor::Raw(left), right }))
    })?;
    Ok(tagged(basis, "U", mats, comps.into_iter().map(TensorTag::Symmetric)))
}

/// `Σ_{a<b} K_ab²`, formed on the left index before projecting onto the
/// frame (the projection of a square is not the square of projections).
pub fn build_casimir_k(basis: &Arc<BasisIndex>) -> Result<OperatorMatrix> {
    let group = *basis.group();
    let mut mats = assemble_family(basis, 1, |from, to| {
        if from.label != to.label {
            return Ok(None);
        }
        let d = from.dim();
        Ok(Some(BlockContribution {
            left: LeftFactor::Raw(group.casimir_matrix(from.label)?),
            right: vec![Some((CMatrix::identity(d, d), ONE))],
        }))
    })?;
    Ok(OperatorMatrix::new("C2K", TensorTag::Scalar, mats.remove(0), basis.clone()))
}

/// `Σ_{a<b} M_ab²` from products of the assembled Cartesian generators.
pub fn build_casimir_m(basis: &Arc<BasisIndex>) -> Result<OperatorMatrix> {
    let cart = spherical_to_cartesian(&build_m(basis)?)?;
    let squares: Vec<SparseMatrix> =
        basis.group().cartesian_pairs().into_iter().map(|p| cart[&p].matrix.matmul(&cart[&p].matrix)).collect();
    let terms: Vec<(Complex64, &SparseMatrix)> = squares.iter().map(|m| (ONE, m)).collect();
    let sum = match terms.is_empty() {
        true => SparseMatrix::zeros(basis.len(), basis.len()),
        false => SparseMatrix::linear_combination(&terms),
    };
    Ok(OperatorMatrix::new("C2M", TensorTag::Scalar, sum, basis.clone()))
}

/// `T_μ = (iα [C₂_K, U_μ] + σ U_μ) / |u|`, with `U` built by [`build_u`].
pub fn build_t_gellmann(basis: &Arc<BasisIndex>, cfg: &GellMannConfig) -> Result<Vec<OperatorMatrix>> {
    let u = build_u(basis, cfg)?;
    build_t_gellmann_from_u(basis, cfg, &u)
}

/// The Gell-Mann formula applied to an already assembled `U` family.
pub fn build_t_gellmann_from_u(
    basis: &Arc<BasisIndex>,
    cfg: &GellMannConfig,
    u: &[OperatorMatrix],
) -> Result<Vec<OperatorMatrix>> {
    let c2 = build_casimir_k(basis)?;
    let inv = 1.0 / cfg.u_norm;
    Ok(u.iter()
        .map(|op| {
            let comm = c2.matrix.commutator(&op.matrix);
            let m = SparseMatrix::linear_combination(&[(I * cfg.alpha * inv, &comm), (cfg.sigma * inv, &op.matrix)]);
            OperatorMatrix::new("T", op.tag, m, basis.clone())
        })
        .collect())
}

/// Closed-form matrix elements on a coset basis:
///
/// ⟨J' 0 m'|T_μ|J 0 m⟩ = iα √(dim J / dim J') (C₂(J') − C₂(J) + σ) · Z(J → J') · ⟨J m; {2} μ|J' m'⟩
///
/// where `Z` couples the invariant vectors of the two blocks through `x̄`.
pub fn build_t_closed(basis: &Arc<BasisIndex>, cfg: &GellMannConfig) -> Result<Vec<OperatorMatrix>> {
    if basis.spec().mode != SpaceMode::Coset {
        return Err(Error::UnsupportedSpace(
            "the closed form is defined on the coset space only; use the Gell-Mann construction on the full space"
                .into(),
        ));
    }
    cfg.check_against(basis)?;
    let group = *basis.group();
    let phase = group.phase();
    let sym = coupling::symmetric_irrep(group.n())?;
    let comps = group.symmetric_components();
    let mats = assemble_family(basis, comps.len(), |from, to| {
        if !coupling::couples(from.label, sym, to.label) {
            return Ok(None);
        }
        let (wf, wt) = (from.label.weights(), to.label.weights());
        let mut zero_slot = CMatrix::zeros(to.multiplicity(), from.multiplicity());
        for r in 0..from.multiplicity() {
            for rp in 0..to.multiplicity() {
                let mut z = Complex64::new(0.0, 0.0);
                for (nu, c) in comps.iter().enumerate() {
                    let xn = cfg.x.spherical[nu].conj();
                    for (i, &k) in wf.iter().enumerate() {
                        let fk = from.frame[(i, r)];
                        if fk.norm() == 0.0 {
                            continue;
                        }
                        for (ip, &kp) in wt.iter().enumerate() {
                            let coeff = cg_irrep_f64(phase, from.label, k, sym, c.weight, to.label, kp)?;
                            if coeff != 0.0 {
                                z += to.frame[(ip, rp)].conj() * xn * fk * coeff;
                            }
                        }
                    }
                }
                zero_slot[(rp, r)] = z;
            }
        }
        let bracket = Complex64::new(to.label.casimir2_f64() - from.label.casimir2_f64(), 0.0) + cfg.sigma;
        let scale = I * cfg.alpha * (from.dim() as f64 / to.dim() as f64).sqrt() * bracket;
        let right = comps
            .iter()
            .map(|&c| Ok(Some((group.coupling_matrix(from.label, c, to.label)?, scale))))
            .collect::<Result<_>>()?;
        Ok(Some(BlockContribution { left: LeftFactor::Reduced(zero_slot), right }))
    })?;
    Ok(tagged(basis, "T", mats, comps.into_iter().map(TensorTag::Symmetric)))
}

fn tagged(
    basis: &Arc<BasisIndex>,
    name: &'static str,
    mats: Vec<SparseMatrix>,
    tags: impl Iterator<Item = TensorTag>,
) -> Vec<OperatorMatrix> {
    mats.into_iter().zip(tags).map(|(m, t)| OperatorMatrix::new(name, t, m, basis.clone())).collect()
}
