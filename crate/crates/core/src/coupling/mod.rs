//! Exact Clebsch-Gordan coefficients and irrep metadata for Spin(3) and
//! Spin(4) ≅ SU(2) × SU(2).
//!
//! Spin(3) coefficients come from Racah's closed sum in exact rational
//! arithmetic; Spin(4) coefficients are products of two SU(2) factors. The
//! phase convention is Condon-Shortley unless a [`PhaseConvention`] says
//! otherwise.

mod cgvalue;
mod halfint;
mod irrep;
mod racah;

pub use cgvalue::CgValue;
pub use halfint::HalfInt;
pub use irrep::{IrrepLabel, MagneticIndex};
pub use racah::{cg, cg_f64};

use num::rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Global phase convention for coupling coefficients.
///
/// `SignedIrreps` multiplies every basis of irrep `J` by
/// `ω_J = Π (−1)^⌊jᵢ⌋`, so coefficients pick up `ω_J1 ω_J2 ω_J`. Results
/// that are physical (commutator residuals) must not notice the switch.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseConvention {
    #[default]
    CondonShortley,
    SignedIrreps,
}

impl PhaseConvention {
    /// Sign attached to the basis of `label`.
    pub fn irrep_sign(self, label: IrrepLabel) -> i8 {
        match self {
            PhaseConvention::CondonShortley => 1,
            PhaseConvention::SignedIrreps => {
                label.parts().iter().map(|j| if j.floor() % 2 == 0 { 1 } else { -1 }).product()
            }
        }
    }
}

/// Dimension of an irrep.
pub fn dim(label: IrrepLabel) -> usize {
    label.dim()
}

/// Second-order Casimir `½ Σ_ab M_ab²`: `j(j+1)` for n = 3 and
/// `2(j₁(j₁+1) + j₂(j₂+1))` for n = 4.
pub fn casimir2(label: IrrepLabel) -> Ratio<i64> {
    label.casimir2()
}

fn check_weight(label: IrrepLabel, m: MagneticIndex) -> Result<()> {
    let ok = matches!(
        (label, m),
        (IrrepLabel::Spin3(_), MagneticIndex::One(_)) | (IrrepLabel::Spin4(..), MagneticIndex::Two(..))
    );
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidLabel(format!("weight {m} does not belong to a rank-{} label", label.n())))
    }
}

/// Spin(4) coefficient as the product of its two SU(2) factors.
pub fn cg_spin4(
    l1: IrrepLabel,
    x1: MagneticIndex,
    l2: IrrepLabel,
    x2: MagneticIndex,
    l: IrrepLabel,
    x: MagneticIndex,
) -> Result<CgValue> {
    match (l1, x1, l2, x2, l, x) {
        (
            IrrepLabel::Spin4(a1, b1),
            MagneticIndex::Two(ma1, mb1),
            IrrepLabel::Spin4(a2, b2),
            MagneticIndex::Two(ma2, mb2),
            IrrepLabel::Spin4(a, b),
            MagneticIndex::Two(ma, mb),
        ) => Ok(&cg(a1, ma1, a2, ma2, a, ma)? * &cg(b1, mb1, b2, mb2, b, mb)?),
        _ => Err(Error::InvalidLabel("cg_spin4 needs rank-4 labels and weight pairs".into())),
    }
}

fn check_same_rank(l1: IrrepLabel, l2: IrrepLabel, l: IrrepLabel) -> Result<()> {
    if l1.n() != l2.n() || l1.n() != l.n() {
        return Err(Error::InvalidLabel(format!("mixed ranks in coupling {l1} ⊗ {l2} → {l}")));
    }
    Ok(())
}

/// Exact coefficient ⟨J1 x1; J2 x2 | J x⟩ for either rank, in the given
/// phase convention.
pub fn cg_irrep(
    phase: PhaseConvention,
    l1: IrrepLabel,
    x1: MagneticIndex,
    l2: IrrepLabel,
    x2: MagneticIndex,
    l: IrrepLabel,
    x: MagneticIndex,
) -> Result<CgValue> {
    check_same_rank(l1, l2, l)?;
    check_weight(l1, x1)?;
    check_weight(l2, x2)?;
    check_weight(l, x)?;
    let value = match (l1, x1, l2, x2, l, x) {
        (
            IrrepLabel::Spin3(j1),
            MagneticIndex::One(m1),
            IrrepLabel::Spin3(j2),
            MagneticIndex::One(m2),
            IrrepLabel::Spin3(j),
            MagneticIndex::One(m),
        ) => cg(j1, m1, j2, m2, j, m)?,
        _ => cg_spin4(l1, x1, l2, x2, l, x)?,
    };
    let s = phase.irrep_sign(l1) * phase.irrep_sign(l2) * phase.irrep_sign(l);
    Ok(if s < 0 { value.neg() } else { value })
}

/// Floating-point version of [`cg_irrep`], backed by the memo table.
pub fn cg_irrep_f64(
    phase: PhaseConvention,
    l1: IrrepLabel,
    x1: MagneticIndex,
    l2: IrrepLabel,
    x2: MagneticIndex,
    l: IrrepLabel,
    x: MagneticIndex,
) -> Result<f64> {
    check_same_rank(l1, l2, l)?;
    let value = match (l1, x1, l2, x2, l, x) {
        (
            IrrepLabel::Spin3(j1),
            MagneticIndex::One(m1),
            IrrepLabel::Spin3(j2),
            MagneticIndex::One(m2),
            IrrepLabel::Spin3(j),
            MagneticIndex::One(m),
        ) => cg_f64(j1, m1, j2, m2, j, m)?,
        (
            IrrepLabel::Spin4(a1, b1),
            MagneticIndex::Two(ma1, mb1),
            IrrepLabel::Spin4(a2, b2),
            MagneticIndex::Two(ma2, mb2),
            IrrepLabel::Spin4(a, b),
            MagneticIndex::Two(ma, mb),
        ) => {
            let first = cg_f64(a1, ma1, a2, ma2, a, ma)?;
            if first == 0.0 {
                // still validate the second factor's labels
                cg_f64(b1, mb1, b2, mb2, b, mb)?;
                0.0
            } else {
                first * cg_f64(b1, mb1, b2, mb2, b, mb)?
            }
        }
        _ => return Err(Error::InvalidLabel("weights do not match label ranks".into())),
    };
    let s = phase.irrep_sign(l1) * phase.irrep_sign(l2) * phase.irrep_sign(l);
    Ok(f64::from(s) * value)
}

/// Whether `l1 ⊗ l2` contains `l` (triangle and parity rules on every part).
pub fn couples(l1: IrrepLabel, l2: IrrepLabel, l: IrrepLabel) -> bool {
    let (p1, p2, p) = (l1.parts(), l2.parts(), l.parts());
    l1.n() == l2.n()
        && l1.n() == l.n()
        && p1.iter().zip(&p2).zip(&p).all(|((a, b), c)| {
            let (a, b, c) = (a.twice(), b.twice(), c.twice());
            c <= a + b && c >= (a - b).abs() && (a + b + c) % 2 == 0
        })
}

/// The symmetric traceless tensor irrep `{2}`.
pub fn symmetric_irrep(n: u8) -> Result<IrrepLabel> {
    match n {
        3 => Ok(IrrepLabel::Spin3(HalfInt::TWO)),
        4 => Ok(IrrepLabel::Spin4(HalfInt::ONE, HalfInt::ONE)),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// The defining vector irrep `{1}`.
pub fn vector_irrep(n: u8) -> Result<IrrepLabel> {
    match n {
        3 => Ok(IrrepLabel::Spin3(HalfInt::ONE)),
        4 => Ok(IrrepLabel::Spin4(HalfInt::HALF, HalfInt::HALF)),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// Irreducible pieces of the adjoint `{1,1}`: one for n = 3, the self-dual
/// and anti-self-dual halves `(1,0) ⊕ (0,1)` for n = 4.
pub fn adjoint_irreps(n: u8) -> Result<Vec<IrrepLabel>> {
    match n {
        3 => Ok(vec![IrrepLabel::Spin3(HalfInt::ONE)]),
        4 => Ok(vec![IrrepLabel::Spin4(HalfInt::ONE, HalfInt::ZERO), IrrepLabel::Spin4(HalfInt::ZERO, HalfInt::ONE)]),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// The irrep that pairs with `{1,1}` in the antisymmetric square of `{2}`;
/// its Casimir is `4n`. For n = 4 one of the two conjugate halves is returned.
pub fn antisymmetric_partner_irrep(n: u8) -> Result<IrrepLabel> {
    match n {
        3 => Ok(IrrepLabel::Spin3(HalfInt::integer(3))),
        4 => Ok(IrrepLabel::Spin4(HalfInt::TWO, HalfInt::ONE)),
        _ => Err(Error::UnsupportedN(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn spin4_factorises() {
        let l = |a, b| IrrepLabel::Spin4(h(a), h(b));
        let w = |a, b| MagneticIndex::Two(h(a), h(b));
        let v = cg_spin4(l(2, 0), w(2, 0), l(2, 0), w(-2, 0), l(0, 0), w(0, 0)).unwrap();
        assert_eq!(v, CgValue::from_ratio(1, 1, 3));
        let trivial = cg_spin4(l(0, 0), w(0, 0), l(2, 1), w(2, -1), l(2, 1), w(2, -1)).unwrap();
        assert_eq!(trivial, CgValue::one());
        // second factor violates the triangle rule
        assert!(cg_spin4(l(2, 0), w(0, 0), l(2, 0), w(0, 0), l(4, 2), w(0, 0)).unwrap().is_zero());
    }

    #[test]
    fn mixed_rank_rejected() {
        let a = IrrepLabel::Spin3(h(2));
        let b = IrrepLabel::Spin4(h(2), h(0));
        let ma = MagneticIndex::One(h(0));
        let mb = MagneticIndex::Two(h(0), h(0));
        assert!(cg_irrep(PhaseConvention::CondonShortley, a, ma, b, mb, a, ma).is_err());
        assert!(cg_irrep_f64(PhaseConvention::CondonShortley, a, ma, b, mb, a, ma).is_err());
        assert!(cg_spin4(a, ma, a, ma, a, ma).is_err());
    }

    #[test]
    fn signed_convention_flips_odd_irreps() {
        let p = PhaseConvention::SignedIrreps;
        assert_eq!(p.irrep_sign(IrrepLabel::Spin3(h(2))), -1);
        assert_eq!(p.irrep_sign(IrrepLabel::Spin3(h(4))), 1);
        assert_eq!(p.irrep_sign(IrrepLabel::Spin3(h(1))), 1);
        assert_eq!(p.irrep_sign(IrrepLabel::Spin4(h(2), h(2))), 1);
        assert_eq!(p.irrep_sign(IrrepLabel::Spin4(h(2), h(0))), -1);
    }

    #[test]
    fn partner_casimir_is_4n() {
        for n in [3u8, 4] {
            let c = antisymmetric_partner_irrep(n).unwrap().casimir2();
            assert_eq!(c, Ratio::from_integer(4 * i64::from(n)));
        }
    }
}
