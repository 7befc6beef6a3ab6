//! Block-tensor assembly: every operator here acts on a `(J → J')` block as
//! `(F_J'† κ F_J) ⊗ μ`, a left factor sandwiched between frames times a
//! right factor on the `m` index.

use num::complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::group::CMatrix;
use crate::repspace::{BasisIndex, Block};
use crate::sparse::SparseMatrix;

pub(crate) enum LeftFactor {
    /// `dim(J') × dim(J)` in weight coordinates; sandwiched between frames.
    Raw(CMatrix),
    /// Already reduced to `r' × r` frame coordinates.
    Reduced(CMatrix),
}

/// What one block pair contributes to each member of a family.
pub(crate) struct BlockContribution {
    pub left: LeftFactor,
    /// One `(m-factor, scale)` per family member; `None` leaves it empty.
    pub right: Vec<Option<(CMatrix, Complex64)>>,
}

type Triplet = (usize, usize, Complex64);

/// Assemble `count` sparse matrices over `basis` from per-block factors.
/// The closure is called for every ordered pair `(from, to)`.
pub(crate) fn assemble_family<F>(basis: &BasisIndex, count: usize, contribution: F) -> Result<Vec<SparseMatrix>>
where
    F: Fn(&Block, &Block) -> Result<Option<BlockContribution>> + Sync,
{
    let blocks = basis.blocks();
    let pairs: Vec<(usize, usize)> = (0..blocks.len()).flat_map(|i| (0..blocks.len()).map(move |j| (i, j))).collect();
    let per_pair: Vec<Vec<Vec<Triplet>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (from, to) = (&blocks[i], &blocks[j]);
            let mut out = vec![Vec::new(); count];
            let Some(c) = contribution(from, to)? else {
                return Ok(out);
            };
            let reduced = match c.left {
                LeftFactor::Raw(k) => to.frame.adjoint() * k * &from.frame,
                LeftFactor::Reduced(k) => k,
            };
            for (slot, right) in out.iter_mut().zip(c.right) {
                let Some((mf, scale)) = right else { continue };
                for r in 0..from.multiplicity() {
                    for rp in 0..to.multiplicity() {
                        let kv = reduced[(rp, r)] * scale;
                        if kv.norm() < 1e-15 {
                            continue;
                        }
                        for i in 0..from.dim() {
                            for ip in 0..to.dim() {
                                let mv = mf[(ip, i)];
                                if mv.norm() > 0.0 {
                                    slot.push((to.index(rp, ip), from.index(r, i), kv * mv));
                                }
                            }
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let n = basis.len();
    Ok((0..count)
        .map(|c| {
            let triplets: Vec<Triplet> = per_pair.iter().flat_map(|p| p[c].iter().copied()).collect();
            SparseMatrix::from_triplets(n, n, &triplets)
        })
        .collect())
}
