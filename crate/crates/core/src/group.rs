//! Spin(n) data shared by the basis and operator builders: spherical
//! components of the adjoint and symmetric tensors, generator matrices in
//! each irrep, and the defining n × n realization.
//!
//! Cartesian generators follow `M_ab = -i(E_ab - E_ba)` on ℂⁿ, so that
//! `M_12` is the usual `J_z` and the spherical component `M₀` equals `M_12`.
//! For n = 4, `J_k = ½ ε_kab M_ab` (a, b ≤ 3), `K_k = M_k4`, and the two
//! SU(2) factors are `A = (J + K)/2`, `B = (J − K)/2`.

use std::fmt;

use nalgebra::DMatrix;
use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coupling::{self, cg_irrep_f64, HalfInt, IrrepLabel, MagneticIndex, PhaseConvention};
use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One spherical component of a tensor: the irrep it sits in and its weight.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub irrep: IrrepLabel,
    pub weight: MagneticIndex,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.irrep {
            IrrepLabel::Spin3(_) => write!(f, "{}", self.weight),
            IrrepLabel::Spin4(..) => write!(f, "{};{}", self.irrep, self.weight),
        }
    }
}

/// Spin(n) for n ∈ {3, 4} together with a phase convention.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SpinGroup {
    n: u8,
    phase: PhaseConvention,
}

/// `ε_abc` on 0-based indices.
fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Components of the Condon-Shortley spherical unit vector `ε_q` in ℝ³.
fn spherical_unit(q: i32) -> [Complex64; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let zero = Complex64::new(0.0, 0.0);
    match q {
        1 => [Complex64::new(-s, 0.0), Complex64::new(0.0, -s), zero],
        0 => [zero, zero, Complex64::new(1.0, 0.0)],
        -1 => [Complex64::new(s, 0.0), Complex64::new(0.0, -s), zero],
        _ => unreachable!("spherical unit vector index out of range"),
    }
}

impl SpinGroup {
    pub fn new(n: u8, phase: PhaseConvention) -> Result<Self> {
        match n {
            3 | 4 => Ok(SpinGroup { n, phase }),
            _ => Err(Error::UnsupportedN(n)),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn phase(&self) -> PhaseConvention {
        self.phase
    }

    /// Cartesian index pairs `(a, b)` with `a < b`.
    pub fn cartesian_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n as usize;
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    }

    /// Pairs `(a, b)` generating `Spin(m) × Spin(n − m)`: both indices below
    /// `m`, or both at or above it.
    pub fn little_group_pairs(&self, m_split: u8) -> Vec<(usize, usize)> {
        let m = m_split as usize;
        self.cartesian_pairs().into_iter().filter(|&(a, b)| (a < m) == (b < m)).collect()
    }

    /// The complement of [`little_group_pairs`](Self::little_group_pairs).
    pub fn complement_pairs(&self, m_split: u8) -> Vec<(usize, usize)> {
        let m = m_split as usize;
        self.cartesian_pairs().into_iter().filter(|&(a, b)| (a < m) != (b < m)).collect()
    }

    /// Spherical components of the adjoint, in a fixed order.
    pub fn adjoint_components(&self) -> Vec<Component> {
        let mut out = Vec::new();
        for irrep in coupling::adjoint_irreps(self.n).expect("n validated") {
            for weight in irrep.weights() {
                out.push(Component { irrep, weight });
            }
        }
        out
    }

    /// Spherical components of the symmetric traceless tensor `{2}`.
    pub fn symmetric_components(&self) -> Vec<Component> {
        let irrep = coupling::symmetric_irrep(self.n).expect("n validated");
        irrep.weights().into_iter().map(|weight| Component { irrep, weight }).collect()
    }

    /// Reduced matrix element of the generator component inside `label`:
    /// `√C₂(J)` for n = 3, `√(jᵢ(jᵢ+1))` of the matching factor for n = 4.
    pub fn generator_reduced(&self, label: IrrepLabel, comp: Component) -> f64 {
        let jj = |j: HalfInt| {
            let t = f64::from(j.twice());
            (t * (t + 2.0) / 4.0).sqrt()
        };
        match (label, comp.irrep) {
            (IrrepLabel::Spin3(j), _) => jj(j),
            (IrrepLabel::Spin4(a, _), IrrepLabel::Spin4(one, _)) if one == HalfInt::ONE => jj(a),
            (IrrepLabel::Spin4(_, b), _) => jj(b),
        }
    }

    /// `⟨J m'| M_c |J m⟩` as a dense `dim × dim` matrix (rows `m'`).
    pub fn generator(&self, label: IrrepLabel, comp: Component) -> Result<CMatrix> {
        let red = self.generator_reduced(label, comp);
        self.coupling_matrix(label, comp, label).map(|m| m * Complex64::new(red, 0.0))
    }

    /// `⟨to m'| P |from m ⊗ via⟩ = ⟨from m; via | to m'⟩` as a `dim(to) × dim(from)` matrix.
    pub fn coupling_matrix(&self, from: IrrepLabel, via: Component, to: IrrepLabel) -> Result<CMatrix> {
        let wf = from.weights();
        let wt = to.weights();
        let mut out = CMatrix::zeros(wt.len(), wf.len());
        if !coupling::couples(from, via.irrep, to) {
            return Ok(out);
        }
        for (c, &m) in wf.iter().enumerate() {
            for (r, &mp) in wt.iter().enumerate() {
                let v = cg_irrep_f64(self.phase, from, m, via.irrep, via.weight, to, mp)?;
                if v != 0.0 {
                    out[(r, c)] = Complex64::new(v, 0.0);
                }
            }
        }
        Ok(out)
    }

    /// Coefficients `c_{ab,comp}` with `M_ab = Σ_comp c_{ab,comp} M_comp`, as an
    /// `n² × |adjoint|` matrix with rows in row-major `(a, b)` order.
    pub fn adjoint_cartesian_coefficients(&self) -> CMatrix {
        let n = self.n as usize;
        let comps = self.adjoint_components();
        let mut out = CMatrix::zeros(n * n, comps.len());
        for (col, comp) in comps.iter().enumerate() {
            let q = comp.weight.parts().iter().map(|p| p.twice() / 2).find(|&v| v != 0).unwrap_or(0);
            let e = spherical_unit(q);
            // Cartesian component k of the vector operator behind this comp is conj(ε_q)_k.
            let vec_part = |k: usize| e[k].conj();
            let (j_sign, k_sign) = match comp.irrep {
                IrrepLabel::Spin3(_) => (1.0, 0.0),
                IrrepLabel::Spin4(a, _) if a == HalfInt::ONE => (1.0, 1.0),
                IrrepLabel::Spin4(..) => (1.0, -1.0),
            };
            let omega = f64::from(self.phase.irrep_sign(comp.irrep));
            for a in 0..n {
                for b in 0..n {
                    let mut v = Complex64::new(0.0, 0.0);
                    if a < 3 && b < 3 {
                        for k in 0..3 {
                            v += vec_part(k) * (levi_civita(a, b, k) * j_sign);
                        }
                    } else if a < 3 && b == 3 {
                        v = vec_part(a) * k_sign;
                    } else if a == 3 && b < 3 {
                        v = -vec_part(b) * k_sign;
                    }
                    out[(a * n + b, col)] = v * omega;
                }
            }
        }
        out
    }

    /// Cartesian generator `M_ab` inside irrep `label`.
    pub fn cartesian_generator(&self, label: IrrepLabel, a: usize, b: usize) -> Result<CMatrix> {
        let n = self.n as usize;
        let coeff = self.adjoint_cartesian_coefficients();
        let d = label.dim();
        let mut out = CMatrix::zeros(d, d);
        for (col, comp) in self.adjoint_components().into_iter().enumerate() {
            let c = coeff[(a * n + b, col)];
            if c.norm() > 0.0 {
                out += self.generator(label, comp)? * c;
            }
        }
        Ok(out)
    }

    /// `Σ_{a<b} M_ab²` inside `label`, assembled from generator matrices.
    pub fn casimir_matrix(&self, label: IrrepLabel) -> Result<CMatrix> {
        let d = label.dim();
        let mut out = CMatrix::zeros(d, d);
        for (a, b) in self.cartesian_pairs() {
            let g = self.cartesian_generator(label, a, b)?;
            out += &g * &g;
        }
        Ok(out)
    }

    /// The defining generator `-i(E_ab - E_ba)` on ℂⁿ.
    pub fn defining_generator(&self, a: usize, b: usize) -> CMatrix {
        let n = self.n as usize;
        let mut g = CMatrix::zeros(n, n);
        if a != b {
            g[(a, b)] = -I;
            g[(b, a)] = I;
        }
        g
    }

    /// Spherical basis of the vector irrep as columns of an `n × n` matrix,
    /// ordered like `vector_irrep(n).weights()`. Built from a highest-weight
    /// vector by lowering, so it carries the Condon-Shortley phases.
    pub fn vector_basis(&self) -> CMatrix {
        let n = self.n as usize;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut top = CMatrix::zeros(n, 1);
        top[(0, 0)] = Complex64::new(-s, 0.0);
        top[(1, 0)] = Complex64::new(0.0, -s);
        let g = |a, b| self.defining_generator(a, b);
        let jx = g(1, 2);
        let jy = g(2, 0);
        let cols: Vec<CMatrix> = if n == 3 {
            let lower = &jx - &jy * I;
            let mid = &lower * &top * Complex64::new(s, 0.0);
            let bottom = &lower * &mid * Complex64::new(s, 0.0);
            vec![bottom, mid, top]
        } else {
            let kx = g(0, 3);
            let ky = g(1, 3);
            let half = Complex64::new(0.5, 0.0);
            let a_lower = ((&jx + &kx) - (&jy + &ky) * I) * half;
            let b_lower = ((&jx - &kx) - (&jy - &ky) * I) * half;
            let am = &a_lower * &top;
            let bm = &b_lower * &top;
            let both = &a_lower * &bm;
            // weights (−½,−½), (−½,½), (½,−½), (½,½)
            vec![both, am, bm, top]
        };
        let omega = f64::from(self.phase.irrep_sign(coupling::vector_irrep(self.n).expect("n validated")));
        let mut out = CMatrix::zeros(n, n);
        for (i, c) in cols.iter().enumerate() {
            out.set_column(i, &(c.column(0) * Complex64::new(omega, 0.0)));
        }
        out
    }

    /// Basis matrices `e_μ` of `{2}` inside symmetric traceless n × n
    /// matrices, coupled from two vectors. Orthonormal for `tr(A†B)`.
    pub fn symmetric_basis(&self) -> Result<Vec<CMatrix>> {
        let n = self.n as usize;
        let v = self.vector_basis();
        let vec_irrep = coupling::vector_irrep(self.n)?;
        let weights = vec_irrep.weights();
        let mut out = Vec::new();
        for comp in self.symmetric_components() {
            let mut e = CMatrix::zeros(n, n);
            for (ia, &wa) in weights.iter().enumerate() {
                for (ib, &wb) in weights.iter().enumerate() {
                    let c = cg_irrep_f64(self.phase, vec_irrep, wa, vec_irrep, wb, comp.irrep, comp.weight)?;
                    if c != 0.0 {
                        e += v.column(ia) * v.column(ib).transpose() * Complex64::new(c, 0.0);
                    }
                }
            }
            out.push(e);
        }
        Ok(out)
    }
}
