//! Interior blocks of operator families and their commutators.

use num::complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::operators::{OperatorMatrix, TensorComponentMap, TensorKind};
use crate::sparse::SparseMatrix;

/// A spherical family restricted to interior rows and columns, plus its
/// Cartesian components.
pub(crate) struct InteriorFamily {
    pub map: TensorComponentMap,
    pub cartesian: Vec<SparseMatrix>,
}

impl InteriorFamily {
    pub fn new(family: &[OperatorMatrix], kind: TensorKind, interior: &[usize]) -> Result<Self> {
        let map = TensorComponentMap::for_kind(family[0].basis().group(), kind)?;
        let spherical: Vec<SparseMatrix> = family.par_iter().map(|op| op.matrix.restrict(interior, interior)).collect();
        let n = map.n();
        let size = interior.len();
        let cartesian = (0..n * n)
            .map(|ab| {
                let terms: Vec<(Complex64, &SparseMatrix)> =
                    map.row(ab / n, ab % n).into_iter().map(|(c, v)| (v, &spherical[c])).collect();
                combination(size, &terms)
            })
            .collect();
        Ok(InteriorFamily { map, cartesian })
    }

    pub fn get(&self, a: usize, b: usize) -> &SparseMatrix {
        &self.cartesian[a * self.map.n() + b]
    }
}

/// `[X_i, Y_j]` on the interior for every spherical pair, summing the
/// intermediate index over the whole truncated space.
pub(crate) struct CommutatorTable {
    size: usize,
    entries: Vec<Vec<SparseMatrix>>,
}

impl CommutatorTable {
    pub fn new(x: &[OperatorMatrix], y: &[OperatorMatrix], interior: &[usize]) -> Self {
        let pairs: Vec<(usize, usize)> = (0..x.len()).flat_map(|i| (0..y.len()).map(move |j| (i, j))).collect();
        let flat: Vec<SparseMatrix> = pairs
            .par_iter()
            .map(|&(i, j)| x[i].matrix.restricted_commutator(&y[j].matrix, interior, interior))
            .collect();
        let mut it = flat.into_iter();
        let entries = (0..x.len()).map(|_| (0..y.len()).map(|_| it.next().unwrap()).collect()).collect();
        CommutatorTable { size: interior.len(), entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &SparseMatrix {
        &self.entries[i][j]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(SparseMatrix::max_abs).fold(0.0, f64::max)
    }

    /// `[X_ab, Y_cd] = Σ_ij C_x[ab,i] C_y[cd,j] [X_i, Y_j]`.
    pub fn cartesian(
        &self,
        mx: &TensorComponentMap,
        my: &TensorComponentMap,
        ab: (usize, usize),
        cd: (usize, usize),
    ) -> SparseMatrix {
        let mut terms = Vec::new();
        for (i, ci) in mx.row(ab.0, ab.1) {
            for (j, cj) in my.row(cd.0, cd.1) {
                terms.push((ci * cj, self.get(i, j)));
            }
        }
        combination(self.size, &terms)
    }
}

pub(crate) fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Unpruned `Σ cᵢ Aᵢ`; an empty sum is the zero matrix.
fn combination(size: usize, terms: &[(Complex64, &SparseMatrix)]) -> SparseMatrix {
    if terms.is_empty() {
        SparseMatrix::zeros(size, size)
    } else {
        SparseMatrix::exact_combination(terms)
    }
}

/// `factor · Σ coeff · matrix` over the nonzero coefficients.
pub(crate) fn combine(size: usize, terms: &[(f64, &SparseMatrix)], factor: Complex64) -> SparseMatrix {
    let scaled: Vec<(Complex64, &SparseMatrix)> =
        terms.iter().filter(|(c, _)| *c != 0.0).map(|&(c, m)| (factor * c, m)).collect();
    combination(size, &scaled)
}

/// Largest entry of `x − y`, with nothing pruned.
pub(crate) fn max_abs_difference(x: &SparseMatrix, y: &SparseMatrix) -> f64 {
    SparseMatrix::exact_combination(&[(Complex64::new(1.0, 0.0), x), (Complex64::new(-1.0, 0.0), y)]).max_abs()
}
