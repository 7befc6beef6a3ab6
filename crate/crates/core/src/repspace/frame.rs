use nalgebra::SymmetricEigen;
use num::complex::Complex64;

use crate::coupling::IrrepLabel;
use crate::error::Result;
use crate::group::{CMatrix, SpinGroup};

/// Eigenvalues of `Σ G†G` below this count as zero.
pub const NULL_TOLERANCE: f64 = 1e-9;

/// Orthonormal basis of the vectors in irrep `label` annihilated by every
/// generator `M_ab`, `(a, b) ∈ pairs`, as the columns of a `dim × r` matrix.
///
/// Each column is rephased so its largest entry is real and positive, and
/// entries below 1e−14 are cleared, which makes the choice reproducible.
pub fn invariant_frame(group: &SpinGroup, label: IrrepLabel, pairs: &[(usize, usize)]) -> Result<CMatrix> {
    let d = label.dim();
    let mut gram = CMatrix::zeros(d, d);
    for &(a, b) in pairs {
        let g = group.cartesian_generator(label, a, b)?;
        gram += g.adjoint() * &g;
    }
    let eig = SymmetricEigen::new(gram);
    let mut keep: Vec<usize> = (0..d).filter(|&i| eig.eigenvalues[i].abs() < NULL_TOLERANCE).collect();
    keep.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let mut frame = CMatrix::zeros(d, keep.len());
    for (col, &i) in keep.iter().enumerate() {
        let mut v = eig.eigenvectors.column(i).into_owned();
        let pivot =
            (0..d).max_by(|&x, &y| v[x].norm().total_cmp(&v[y].norm()).then(y.cmp(&x))).expect("non-empty irrep");
        let phase = v[pivot].conj() / v[pivot].norm();
        v *= phase;
        for z in v.iter_mut() {
            if z.re.abs() < 1e-14 {
                z.re = 0.0;
            }
            if z.im.abs() < 1e-14 {
                z.im = 0.0;
            }
        }
        let norm = v.norm();
        frame.set_column(col, &(v / Complex64::new(norm, 0.0)));
    }
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::{HalfInt, PhaseConvention};

    #[test]
    fn frames_are_annihilated_and_orthonormal() {
        let g = SpinGroup::new(4, PhaseConvention::CondonShortley).unwrap();
        for m in 1..=3 {
            let pairs = g.little_group_pairs(m);
            for label in IrrepLabel::all_up_to(4, HalfInt::integer(3)).unwrap() {
                let f = invariant_frame(&g, label, &pairs).unwrap();
                let r = f.ncols();
                let gram = f.adjoint() * &f;
                assert!((gram - CMatrix::identity(r, r)).camax() < 1e-12);
                for &(a, b) in &pairs {
                    let gen = g.cartesian_generator(label, a, b).unwrap();
                    assert!((gen * &f).camax() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn spinors_have_no_invariants_for_n3() {
        let g = SpinGroup::new(3, PhaseConvention::CondonShortley).unwrap();
        for m in [1, 2] {
            let f = invariant_frame(&g, IrrepLabel::Spin3(HalfInt::from_twice(3)), &g.little_group_pairs(m)).unwrap();
            assert_eq!(f.ncols(), 0);
        }
    }
}
