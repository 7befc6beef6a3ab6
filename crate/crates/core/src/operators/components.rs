//! Maps between Cartesian index pairs `(a, b)` and spherical components.

use std::collections::BTreeMap;

use nalgebra::SymmetricEigen;
use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{CMatrix, Component, SpinGroup};
use crate::sparse::SparseMatrix;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorKind {
    /// Antisymmetric `{1,1}`: the generators `M_ab`.
    Adjoint,
    /// Symmetric traceless `{2}`: `U_ab`, `T_ab`.
    Symmetric,
}

/// Intertwiner between Cartesian and spherical components of one tensor
/// type, `X_ab = Σ_c C[(a,b), c] X_c`.
///
/// The columns of `C` are mutually orthogonal with a common norm: 1 for the
/// symmetric tensor, 2 (n = 3) or 4 (n = 4) for the adjoint, whose pairs
/// `(a, b)` and `(b, a)` both appear.
#[derive(Clone, Debug)]
pub struct TensorComponentMap {
    kind: TensorKind,
    n: usize,
    components: Vec<Component>,
    coefficients: CMatrix,
}

impl TensorComponentMap {
    pub fn adjoint(group: &SpinGroup) -> Self {
        TensorComponentMap {
            kind: TensorKind::Adjoint,
            n: group.n() as usize,
            components: group.adjoint_components(),
            coefficients: group.adjoint_cartesian_coefficients(),
        }
    }

    /// `T_ab = Σ_μ conj(e_μ)_ab T_μ`, with `e_μ` the basis of
    /// [`SpinGroup::symmetric_basis`].
    pub fn symmetric(group: &SpinGroup) -> Result<Self> {
        let n = group.n() as usize;
        let basis = group.symmetric_basis()?;
        let mut coefficients = CMatrix::zeros(n * n, basis.len());
        for (col, e) in basis.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    coefficients[(a * n + b, col)] = e[(a, b)].conj();
                }
            }
        }
        Ok(TensorComponentMap {
            kind: TensorKind::Symmetric,
            n,
            components: group.symmetric_components(),
            coefficients,
        })
    }

    pub fn for_kind(group: &SpinGroup, kind: TensorKind) -> Result<Self> {
        match kind {
            TensorKind::Adjoint => Ok(Self::adjoint(group)),
            TensorKind::Symmetric => Self::symmetric(group),
        }
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn coefficients(&self) -> &CMatrix {
        &self.coefficients
    }

    pub fn coefficient(&self, a: usize, b: usize, component: usize) -> Complex64 {
        self.coefficients[(a * self.n + b, component)]
    }

    /// Nonzero coefficients of row `(a, b)`.
    pub fn row(&self, a: usize, b: usize) -> Vec<(usize, Complex64)> {
        (0..self.components.len()).map(|c| (c, self.coefficient(a, b, c))).filter(|(_, v)| v.norm() > 1e-15).collect()
    }

    /// Canonical independent pairs: `a < b` for the adjoint, `a ≤ b` for the
    /// symmetric tensor.
    pub fn canonical_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let strict = self.kind == TensorKind::Adjoint;
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| if strict { a < b } else { a <= b }).collect()
    }

    /// `‖C†C − s·I‖∞` with `s` the mean column norm; zero for an exact
    /// intertwiner.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.coefficients.adjoint() * &self.coefficients;
        let d = gram.nrows();
        let s = gram.trace() / Complex64::new(d as f64, 0.0);
        (gram - CMatrix::identity(d, d) * s).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Cartesian family (all `n²` pairs) from spherical matrices.
    pub fn to_cartesian(&self, spherical: &[SparseMatrix]) -> Result<BTreeMap<(usize, usize), SparseMatrix>> {
        if spherical.len() != self.components.len() {
            return Err(Error::MissingComponent(format!(
                "expected {} spherical components, got {}",
                self.components.len(),
                spherical.len()
            )));
        }
        let (rows, cols) = (spherical[0].nrows(), spherical[0].ncols());
        let mut out = BTreeMap::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let terms: Vec<(Complex64, &SparseMatrix)> =
                    self.row(a, b).into_iter().map(|(c, v)| (v, &spherical[c])).collect();
                let m = if terms.is_empty() {
                    SparseMatrix::zeros(rows, cols)
                } else {
                    SparseMatrix::linear_combination(&terms)
                };
                out.insert((a, b), m);
            }
        }
        Ok(out)
    }

    /// Spherical matrices from any Cartesian subfamily that determines them.
    ///
    /// Uses the least-squares inverse over the pairs present; fails with
    /// [`Error::MissingComponent`] when those pairs do not span every
    /// spherical component.
    pub fn to_spherical(&self, cartesian: &BTreeMap<(usize, usize), SparseMatrix>) -> Result<Vec<SparseMatrix>> {
        let pairs: Vec<(usize, usize)> = cartesian.keys().copied().filter(|&(a, b)| a < self.n && b < self.n).collect();
        let d = self.components.len();
        let mut sub = CMatrix::zeros(pairs.len(), d);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for c in 0..d {
                sub[(i, c)] = self.coefficient(a, b, c);
            }
        }
        let gram = sub.adjoint() * &sub;
        let smallest = SymmetricEigen::new(gram.clone()).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if pairs.is_empty() || smallest < 1e-10 {
            let missing = self
                .canonical_pairs()
                .into_iter()
                .find(|p| !cartesian.contains_key(p))
                .map(|(a, b)| format!("({a},{b})"))
                .unwrap_or_else(|| "?".into());
            return Err(Error::MissingComponent(format!(
                "Cartesian family does not determine all spherical components; first absent pair {missing}"
            )));
        }
        let inverse = gram.try_inverse().expect("gram checked positive definite") * sub.adjoint();
        let (rows, cols) = {
            let m = &cartesian[&pairs[0]];
            (m.nrows(), m.ncols())
        };
        let mut out = Vec::with_capacity(d);
        for c in 0..d {
            let terms: Vec<(Complex64, &SparseMatrix)> = pairs
                .iter()
                .enumerate()
                .map(|(i, p)| (inverse[(c, i)], &cartesian[p]))
                .filter(|(v, _)| v.norm() > 1e-15)
                .collect();
            out.push(if terms.is_empty() {
                SparseMatrix::zeros(rows, cols)
            } else {
                SparseMatrix::linear_combination(&terms)
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::PhaseConvention;

    fn groups() -> Vec<SpinGroup> {
        [3, 4]
            .into_iter()
            .flat_map(|n| {
                [PhaseConvention::CondonShortley, PhaseConvention::SignedIrreps].map(|p| SpinGroup::new(n, p).unwrap())
            })
            .collect()
    }

    #[test]
    fn maps_are_orthogonal() {
        for g in groups() {
            let adj = TensorComponentMap::adjoint(&g);
            let sym = TensorComponentMap::symmetric(&g).unwrap();
            assert!(adj.unitarity_defect() < 1e-14);
            assert!(sym.unitarity_defect() < 1e-14);
            let n = g.n() as usize;
            assert_eq!(sym.components().len(), n * (n + 1) / 2 - 1);
            assert_eq!(adj.components().len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn round_trip_on_small_matrices() {
        for g in groups() {
            let map = TensorComponentMap::symmetric(&g).unwrap();
            let family: Vec<SparseMatrix> = (0..map.components().len())
                .map(|c| SparseMatrix::from_triplets(2, 2, &[(0, 1, Complex64::new(c as f64 + 1.0, 0.5))]))
                .collect();
            let cart = map.to_cartesian(&family).unwrap();
            let canonical: BTreeMap<_, _> = map.canonical_pairs().into_iter().map(|p| (p, cart[&p].clone())).collect();
            let back = map.to_spherical(&canonical).unwrap();
            for (x, y) in back.iter().zip(&family) {
                assert!(x.sub(y).max_abs() < 1e-13);
            }
        }
    }

    #[test]
    fn incomplete_family_is_rejected() {
        let g = SpinGroup::new(3, PhaseConvention::CondonShortley).unwrap();
        let map = TensorComponentMap::adjoint(&g);
        let mut cart = BTreeMap::new();
        cart.insert((0, 1), SparseMatrix::identity(2));
        assert!(matches!(map.to_spherical(&cart), Err(Error::MissingComponent(_))));
        assert!(matches!(map.to_cartesian(&[]), Err(Error::MissingComponent(_))));
    }
}
