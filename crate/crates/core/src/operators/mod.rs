//! Generator matrices on a truncated basis: the rotations `M` (right
//! action), their left copies `K`, the multiplication operators `U`, the
//! Casimirs, and the shear generators `T` built two ways.
//!
//! Spherical components are the primary storage; Cartesian families are
//! derived through [`TensorComponentMap`].

mod assemble;
mod builders;
mod components;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::complex::Complex64;
use num::rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::coupling::PhaseConvention;
use crate::error::{Error, Result};
use crate::group::{CMatrix, Component, SpinGroup};
use crate::repspace::BasisIndex;
use crate::sparse::SparseMatrix;

pub use builders::{
    build_casimir_k, build_casimir_m, build_k, build_m, build_t_closed, build_t_gellmann, build_t_gellmann_from_u,
    build_u, build_u_unchecked, invariance_defect,
};
pub use components::{TensorComponentMap, TensorKind};

/// Tensor character of an operator.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TensorTag {
    Adjoint(Component),
    Symmetric(Component),
    CartesianAdjoint(usize, usize),
    CartesianSymmetric(usize, usize),
    Scalar,
}

impl fmt::Display for TensorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorTag::Adjoint(c) | TensorTag::Symmetric(c) => write!(f, "{c}"),
            TensorTag::CartesianAdjoint(a, b) | TensorTag::CartesianSymmetric(a, b) => write!(f, "{}{}", a + 1, b + 1),
            TensorTag::Scalar => f.write_str("scalar"),
        }
    }
}

/// Real form the matrix belongs to.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraForm {
    #[default]
    Sl,
    Su,
}

/// A sparse complex matrix over a shared basis.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub name: &'static str,
    pub tag: TensorTag,
    pub form: AlgebraForm,
    pub matrix: SparseMatrix,
    basis: Arc<BasisIndex>,
}

impl OperatorMatrix {
    pub fn new(name: &'static str, tag: TensorTag, matrix: SparseMatrix, basis: Arc<BasisIndex>) -> Self {
        assert_eq!(matrix.nrows(), basis.len(), "operator shape does not match its basis");
        OperatorMatrix { name, tag, form: AlgebraForm::Sl, matrix, basis }
    }

    pub fn basis(&self) -> &Arc<BasisIndex> {
        &self.basis
    }

    /// `name[tag]`, e.g. `T[-2]` or `M[12]`.
    pub fn label(&self) -> String {
        format!("{}[{}]", self.name, self.tag)
    }
}

/// How the unit vector `x` labelling the contracted representation was chosen.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum XKind {
    /// The traceless diagonal matrix fixed by the split.
    Canonical,
    /// Canonical plus a small non-invariant off-diagonal admixture.
    Perturbed,
    Custom,
}

/// A unit vector in the symmetric traceless representation, kept both as
/// an `n × n` matrix and as spherical components `x_μ = tr(e_μ† X)`.
#[derive(Clone, Debug, PartialEq)]
pub struct XVector {
    pub kind: XKind,
    pub cartesian: CMatrix,
    pub spherical: Vec<Complex64>,
}

impl XVector {
    /// Normalises `x` (Frobenius norm) and removes nothing else: the caller
    /// is expected to pass a symmetric traceless matrix.
    pub fn from_cartesian(group: &SpinGroup, x: CMatrix, kind: XKind) -> Result<Self> {
        let n = group.n() as usize;
        if x.nrows() != n || x.ncols() != n {
            return Err(Error::Config(format!("x must be {n}×{n}")));
        }
        let norm = x.norm();
        if norm < 1e-12 {
            return Err(Error::Config("x must be nonzero".into()));
        }
        let cartesian = x / Complex64::new(norm, 0.0);
        let spherical: Vec<Complex64> =
            group.symmetric_basis()?.iter().map(|e| (e.adjoint() * &cartesian).trace()).collect();
        let captured: f64 = spherical.iter().map(|z| z.norm_sqr()).sum();
        if (captured - 1.0).abs() > 1e-10 {
            return Err(Error::Config("x is not symmetric and traceless".into()));
        }
        Ok(XVector { kind, cartesian, spherical })
    }

    /// Normalised vector from spherical components.
    pub fn from_spherical(group: &SpinGroup, comps: &[Complex64], kind: XKind) -> Result<Self> {
        let basis = group.symmetric_basis()?;
        if comps.len() != basis.len() {
            return Err(Error::Config(format!("x needs {} spherical components", basis.len())));
        }
        let n = group.n() as usize;
        let mut x = CMatrix::zeros(n, n);
        for (c, e) in comps.iter().zip(&basis) {
            x += e * *c;
        }
        Self::from_cartesian(group, x, kind)
    }

    /// `√(m(n−m)/n) · diag(1/m, …, 1/m, −1/(n−m), …, −1/(n−m))`.
    pub fn canonical(group: &SpinGroup, m_split: u8) -> Result<Self> {
        check_split(group.n(), m_split)?;
        let (n, m) = (group.n() as usize, m_split as usize);
        let scale = ((m * (n - m)) as f64 / n as f64).sqrt();
        let diag: Vec<Complex64> = (0..n)
            .map(|i| {
                let v = if i < m { 1.0 / m as f64 } else { -1.0 / (n - m) as f64 };
                Complex64::new(scale * v, 0.0)
            })
            .collect();
        let x = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag));
        Self::from_cartesian(group, x, XKind::Canonical)
    }

    /// Canonical `x` plus `eps · (E_{1n} + E_{n1})`, renormalised.
    pub fn perturbed(group: &SpinGroup, m_split: u8, eps: f64) -> Result<Self> {
        let mut x = Self::canonical(group, m_split)?.cartesian;
        let last = group.n() as usize - 1;
        x[(0, last)] += Complex64::new(eps, 0.0);
        x[(last, 0)] += Complex64::new(eps, 0.0);
        Self::from_cartesian(group, x, XKind::Perturbed)
    }
}

fn check_split(n: u8, m_split: u8) -> Result<()> {
    if !matches!(n, 3 | 4) {
        return Err(Error::UnsupportedN(n));
    }
    if m_split < 1 || m_split >= n {
        return Err(Error::Config(format!("m_split must lie in 1..={}, got {m_split}", n - 1)));
    }
    Ok(())
}

/// `α² = m(n−m)/(4n)`, exactly.
pub fn alpha_squared(n: u8, m_split: u8) -> Result<Ratio<i64>> {
    check_split(n, m_split)?;
    let (n, m) = (i64::from(n), i64::from(m_split));
    Ok(Ratio::new(m * (n - m), 4 * n))
}

/// `α = ½ √(m(n−m)/n)`.
pub fn alpha_of(n: u8, m_split: u8) -> Result<f64> {
    let a2 = alpha_squared(n, m_split)?;
    Ok((*a2.numer() as f64 / *a2.denom() as f64).sqrt())
}

/// The canonical `x` for `(n, m_split)` in the Condon-Shortley convention.
pub fn x_vector_of(n: u8, m_split: u8) -> Result<XVector> {
    XVector::canonical(&SpinGroup::new(n, PhaseConvention::CondonShortley)?, m_split)
}

/// Parameters of one Gell-Mann construction.
#[derive(Clone, Debug, PartialEq)]
pub struct GellMannConfig {
    pub n: u8,
    pub m_split: u8,
    pub sigma: Complex64,
    /// `|u|`, the norm of the contracted-algebra representation vector.
    pub u_norm: f64,
    pub alpha: f64,
    pub x: XVector,
    pub phase: PhaseConvention,
}

impl GellMannConfig {
    /// Canonical `x`, `|u| = 1`, Condon-Shortley phases.
    pub fn new(n: u8, m_split: u8, sigma: Complex64) -> Result<Self> {
        Self::with_phase(n, m_split, sigma, PhaseConvention::CondonShortley)
    }

    pub fn with_phase(n: u8, m_split: u8, sigma: Complex64, phase: PhaseConvention) -> Result<Self> {
        let group = SpinGroup::new(n, phase)?;
        Ok(GellMannConfig {
            n,
            m_split,
            sigma,
            u_norm: 1.0,
            alpha: alpha_of(n, m_split)?,
            x: XVector::canonical(&group, m_split)?,
            phase,
        })
    }

    pub fn sigma(mut self, sigma: Complex64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn x(mut self, x: XVector) -> Self {
        self.x = x;
        self
    }

    pub fn u_norm(mut self, u_norm: f64) -> Result<Self> {
        if !(u_norm.is_finite() && u_norm > 0.0) {
            return Err(Error::Config(format!("|u| must be positive and finite, got {u_norm}")));
        }
        self.u_norm = u_norm;
        Ok(self)
    }

    pub fn group(&self) -> SpinGroup {
        SpinGroup::new(self.n, self.phase).expect("validated at construction")
    }

    pub(crate) fn check_against(&self, basis: &BasisIndex) -> Result<()> {
        let spec = basis.spec();
        if spec.n != self.n {
            return Err(Error::Config(format!("configuration has n = {}, basis has n = {}", self.n, spec.n)));
        }
        if spec.phase != self.phase {
            return Err(Error::Config("configuration and basis use different phase conventions".into()));
        }
        if spec.mode == crate::repspace::SpaceMode::Coset && spec.m_split != self.m_split {
            return Err(Error::Config(format!(
                "coset basis reduced by m = {}, configuration has m = {}",
                spec.m_split, self.m_split
            )));
        }
        Ok(())
    }
}

/// Multiply every matrix by `i`, turning sl(n, ℝ) shear generators into
/// the noncompact generators of su(n).
pub fn to_su_n(family: &[OperatorMatrix]) -> Vec<OperatorMatrix> {
    family
        .iter()
        .map(|op| {
            let mut out = op.clone();
            out.matrix = op.matrix.scale(Complex64::new(0.0, 1.0));
            out.form = match op.form {
                AlgebraForm::Sl => AlgebraForm::Su,
                AlgebraForm::Su => AlgebraForm::Sl,
            };
            out
        })
        .collect()
}

/// Cartesian components `(a, b)` of a spherical family, for all `n²` pairs.
pub fn spherical_to_cartesian(family: &[OperatorMatrix]) -> Result<BTreeMap<(usize, usize), OperatorMatrix>> {
    let first = family.first().ok_or_else(|| Error::MissingComponent("empty operator family".into()))?;
    let basis = first.basis().clone();
    let kind = family_kind(family)?;
    let map = TensorComponentMap::for_kind(basis.group(), kind)?;
    let matrices: Vec<SparseMatrix> = family.iter().map(|op| op.matrix.clone()).collect();
    Ok(map
        .to_cartesian(&matrices)?
        .into_iter()
        .map(|((a, b), m)| {
            let tag = match kind {
                TensorKind::Adjoint => TensorTag::CartesianAdjoint(a, b),
                TensorKind::Symmetric => TensorTag::CartesianSymmetric(a, b),
            };
            let mut op = OperatorMatrix::new(first.name, tag, m, basis.clone());
            op.form = first.form;
            ((a, b), op)
        })
        .collect())
}

/// Spherical components from a Cartesian family; any subset of pairs that
/// determines them is accepted.
pub fn cartesian_to_spherical(family: &BTreeMap<(usize, usize), OperatorMatrix>) -> Result<Vec<OperatorMatrix>> {
    let first = family.values().next().ok_or_else(|| Error::MissingComponent("empty operator family".into()))?;
    let basis = first.basis().clone();
    let kind = match first.tag {
        TensorTag::CartesianAdjoint(..) => TensorKind::Adjoint,
        TensorTag::CartesianSymmetric(..) => TensorKind::Symmetric,
        other => return Err(Error::Config(format!("{other} is not a Cartesian component"))),
    };
    let map = TensorComponentMap::for_kind(basis.group(), kind)?;
    let matrices = family.iter().map(|(&p, op)| (p, op.matrix.clone())).collect();
    Ok(map
        .to_spherical(&matrices)?
        .into_iter()
        .zip(map.components())
        .map(|(m, &c)| {
            let tag = match kind {
                TensorKind::Adjoint => TensorTag::Adjoint(c),
                TensorKind::Symmetric => TensorTag::Symmetric(c),
            };
            let mut op = OperatorMatrix::new(first.name, tag, m, basis.clone());
            op.form = first.form;
            op
        })
        .collect())
}

fn family_kind(family: &[OperatorMatrix]) -> Result<TensorKind> {
    let group = family[0].basis().group();
    let (kind, expected) = match family[0].tag {
        TensorTag::Adjoint(_) => (TensorKind::Adjoint, group.adjoint_components()),
        TensorTag::Symmetric(_) => (TensorKind::Symmetric, group.symmetric_components()),
        other => return Err(Error::Config(format!("{other} is not a spherical component"))),
    };
    for (i, want) in expected.iter().enumerate() {
        let found = family.get(i).map(|op| match op.tag {
            TensorTag::Adjoint(c) | TensorTag::Symmetric(c) => Some(c),
            _ => None,
        });
        if found != Some(Some(*want)) {
            return Err(Error::MissingComponent(format!("spherical component {want} missing or out of order")));
        }
    }
    if family.len() != expected.len() {
        return Err(Error::MissingComponent(format!(
            "expected {} spherical components, got {}",
            expected.len(),
            family.len()
        )));
    }
    Ok(kind)
}
