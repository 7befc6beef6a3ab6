//! Compressed-sparse-row complex matrices.
//!
//! Only the handful of operations the builders and the validator need:
//! linear combinations, products, commutators, adjoints and products
//! restricted to a subset of rows and columns.

use nalgebra::DMatrix;
use num::complex::Complex64;
use rayon::prelude::*;

/// Entries below this magnitude are dropped when a matrix is assembled.
pub const PRUNE: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<Complex64>,
}

/// Dense row accumulator reused across rows of a product.
struct RowScratch {
    acc: Vec<Complex64>,
    touched: Vec<usize>,
    seen: Vec<bool>,
}

impl RowScratch {
    fn new(ncols: usize) -> Self {
        RowScratch { acc: vec![ZERO; ncols], touched: Vec::new(), seen: vec![false; ncols] }
    }

    fn add(&mut self, c: usize, v: Complex64) {
        if !self.seen[c] {
            self.seen[c] = true;
            self.touched.push(c);
        }
        self.acc[c] += v;
    }

    /// Sorted entries of magnitude at least `threshold` (exact zeros always
    /// go); resets the scratch.
    fn drain(&mut self, threshold: f64) -> Vec<(usize, Complex64)> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &c in &self.touched {
            let v = self.acc[c];
            if v != ZERO && v.norm() >= threshold {
                out.push((c, v));
            }
            self.acc[c] = ZERO;
            self.seen[c] = false;
        }
        self.touched.clear();
        out
    }
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, indptr: vec![0; nrows + 1], indices: Vec::new(), values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    /// Assemble from `(row, col, value)` triplets; duplicates are summed and
    /// entries smaller than [`PRUNE`] dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, Complex64)]) -> Self {
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); nrows];
        for &(r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r}, {c}) outside {nrows}×{ncols}");
            rows[r].push((c, v));
        }
        let mut scratch = RowScratch::new(ncols);
        let rows = rows
            .into_iter()
            .map(|row| {
                for (c, v) in row {
                    scratch.add(c, v);
                }
                scratch.drain(PRUNE)
            })
            .collect();
        Self::from_rows(nrows, ncols, rows)
    }

    fn from_rows(nrows: usize, ncols: usize, rows: Vec<Vec<(usize, Complex64)>>) -> Self {
        let mut indptr = Vec::with_capacity(nrows + 1);
        indptr.push(0);
        let nnz = rows.iter().map(Vec::len).sum();
        let mut indices = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        for row in rows {
            for (c, v) in row {
                indices.push(c);
                values.push(v);
            }
            indptr.push(indices.len());
        }
        SparseMatrix { nrows, ncols, indptr, indices, values }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Entries `(col, value)` of one row, columns ascending.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.indptr[r]..self.indptr[r + 1];
        self.indices[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.nrows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let span = self.indptr[r]..self.indptr[r + 1];
        match self.indices[span.clone()].binary_search(&c) {
            Ok(i) => self.values[span.start + i],
            Err(_) => ZERO,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= s;
        }
        out.pruned()
    }

    fn pruned(self) -> Self {
        if self.values.iter().all(|v| v.norm() >= PRUNE) {
            return self;
        }
        let rows = (0..self.nrows).map(|r| self.row(r).filter(|(_, v)| v.norm() >= PRUNE).collect()).collect();
        Self::from_rows(self.nrows, self.ncols, rows)
    }

    /// `Σ cᵢ Aᵢ` for matrices of equal shape.
    pub fn linear_combination(terms: &[(Complex64, &SparseMatrix)]) -> Self {
        Self::combination(terms, PRUNE)
    }

    /// As [`linear_combination`](Self::linear_combination), keeping every
    /// nonzero entry however small; residuals are computed this way.
    pub fn exact_combination(terms: &[(Complex64, &SparseMatrix)]) -> Self {
        Self::combination(terms, 0.0)
    }

    fn combination(terms: &[(Complex64, &SparseMatrix)], threshold: f64) -> Self {
        let (first, rest) = terms.split_first().expect("empty linear combination");
        let (nrows, ncols) = (first.1.nrows, first.1.ncols);
        for (_, m) in rest {
            assert_eq!((m.nrows, m.ncols), (nrows, ncols), "shape mismatch in linear combination");
        }
        let rows = (0..nrows)
            .into_par_iter()
            .map_init(
                || RowScratch::new(ncols),
                |scratch, r| {
                    for &(c, m) in terms {
                        for (col, v) in m.row(r) {
                            scratch.add(col, c * v);
                        }
                    }
                    scratch.drain(threshold)
                },
            )
            .collect();
        Self::from_rows(nrows, ncols, rows)
    }

    pub fn add(&self, other: &SparseMatrix) -> Self {
        Self::linear_combination(&[(Complex64::new(1.0, 0.0), self), (Complex64::new(1.0, 0.0), other)])
    }

    pub fn sub(&self, other: &SparseMatrix) -> Self {
        Self::linear_combination(&[(Complex64::new(1.0, 0.0), self), (Complex64::new(-1.0, 0.0), other)])
    }

    pub fn matmul(&self, other: &SparseMatrix) -> Self {
        assert_eq!(self.ncols, other.nrows, "inner dimensions differ");
        let rows = (0..self.nrows)
            .into_par_iter()
            .map_init(
                || RowScratch::new(other.ncols),
                |scratch, r| {
                    for (k, a) in self.row(r) {
                        for (c, b) in other.row(k) {
                            scratch.add(c, a * b);
                        }
                    }
                    scratch.drain(PRUNE)
                },
            )
            .collect();
        Self::from_rows(self.nrows, other.ncols, rows)
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &SparseMatrix) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); self.ncols];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.conj()));
        }
        Self::from_rows(self.ncols, self.nrows, rows)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.nrows, self.ncols);
        for (r, c, v) in self.entries() {
            out[(r, c)] = v;
        }
        out
    }

    /// Block `A[rows, cols]`, reindexed to `rows.len() × cols.len()`.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        let map = column_map(self.ncols, cols);
        let out = rows
            .iter()
            .map(|&r| {
                let mut row: Vec<(usize, Complex64)> =
                    self.row(r).filter_map(|(c, v)| map[c].map(|j| (j, v))).collect();
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        Self::from_rows(rows.len(), cols.len(), out)
    }

    /// `(A·B)[rows, cols]`, unpruned. The intermediate index runs over the
    /// whole space, so truncation only enters through the chosen rows and
    /// columns.
    pub fn restricted_product(&self, other: &SparseMatrix, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(self.ncols, other.nrows, "inner dimensions differ");
        let map = column_map(other.ncols, cols);
        let out = rows
            .par_iter()
            .map_init(
                || RowScratch::new(cols.len()),
                |scratch, &r| {
                    for (k, a) in self.row(r) {
                        for (c, b) in other.row(k) {
                            if let Some(j) = map[c] {
                                scratch.add(j, a * b);
                            }
                        }
                    }
                    scratch.drain(0.0)
                },
            )
            .collect();
        Self::from_rows(rows.len(), cols.len(), out)
    }

    /// `[A, B][rows, cols]` without forming the full product.
    pub fn restricted_commutator(&self, other: &SparseMatrix, rows: &[usize], cols: &[usize]) -> Self {
        let ab = self.restricted_product(other, rows, cols);
        let ba = other.restricted_product(self, rows, cols);
        Self::exact_combination(&[(Complex64::new(1.0, 0.0), &ab), (Complex64::new(-1.0, 0.0), &ba)])
    }

    /// `Σ conj(A_rc) B_rc`.
    pub fn inner(&self, other: &SparseMatrix) -> Complex64 {
        self.entries().map(|(r, c, v)| v.conj() * other.get(r, c)).sum()
    }
}

fn column_map(ncols: usize, cols: &[usize]) -> Vec<Option<usize>> {
    let mut map = vec![None; ncols];
    for (j, &c) in cols.iter().enumerate() {
        map[c] = Some(j);
    }
    map
}
