use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::rational::Ratio;
use serde::{Deserialize, Serialize};

use super::halfint::HalfInt;
use crate::error::{Error, Result};

/// A Spin(n) irrep: one spin for n = 3, a pair `(j₁, j₂)` for
/// n = 4 through Spin(4) ≅ SU(2) × SU(2).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum IrrepLabel {
    Spin3(HalfInt),
    Spin4(HalfInt, HalfInt),
}

/// A weight inside an irrep: the magnetic projection(s) matching the
/// label's parts.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum MagneticIndex {
    One(HalfInt),
    Two(HalfInt, HalfInt),
}

impl IrrepLabel {
    pub fn spin3(j: HalfInt) -> Result<Self> {
        if j.twice() < 0 {
            return Err(Error::InvalidLabel(format!("negative spin {j}")));
        }
        Ok(IrrepLabel::Spin3(j))
    }

    pub fn spin4(j1: HalfInt, j2: HalfInt) -> Result<Self> {
        if j1.twice() < 0 || j2.twice() < 0 {
            return Err(Error::InvalidLabel(format!("negative spin in ({j1},{j2})")));
        }
        Ok(IrrepLabel::Spin4(j1, j2))
    }

    pub fn trivial(n: u8) -> Result<Self> {
        match n {
            3 => Ok(IrrepLabel::Spin3(HalfInt::ZERO)),
            4 => Ok(IrrepLabel::Spin4(HalfInt::ZERO, HalfInt::ZERO)),
            _ => Err(Error::UnsupportedN(n)),
        }
    }

    pub fn n(&self) -> u8 {
        match self {
            IrrepLabel::Spin3(_) => 3,
            IrrepLabel::Spin4(..) => 4,
        }
    }

    pub fn parts(&self) -> Vec<HalfInt> {
        match *self {
            IrrepLabel::Spin3(j) => vec![j],
            IrrepLabel::Spin4(a, b) => vec![a, b],
        }
    }

    /// Truncation level: `j` for n = 3 and `j₁ + j₂` for n = 4. Coupling with
    /// the symmetric tensor moves the level by at most 2.
    pub fn level(&self) -> HalfInt {
        match *self {
            IrrepLabel::Spin3(j) => j,
            IrrepLabel::Spin4(a, b) => a + b,
        }
    }

    /// Genuinely double-valued on SO(n).
    pub fn is_spinorial(&self) -> bool {
        !self.level().is_integer()
    }

    pub fn dim(&self) -> usize {
        self.parts().iter().map(|j| (j.twice() + 1) as usize).product()
    }

    /// Second-order Casimir normalised as `½ Σ_ab M_ab²`.
    pub fn casimir2(&self) -> Ratio<i64> {
        let jj = |j: HalfInt| {
            let t = i64::from(j.twice());
            Ratio::new(t * (t + 2), 4)
        };
        match *self {
            IrrepLabel::Spin3(j) => jj(j),
            IrrepLabel::Spin4(a, b) => (jj(a) + jj(b)) * 2,
        }
    }

    pub fn casimir2_f64(&self) -> f64 {
        let c = self.casimir2();
        *c.numer() as f64 / *c.denom() as f64
    }

    /// All weights in ascending (lexicographic) order.
    pub fn weights(&self) -> Vec<MagneticIndex> {
        match *self {
            IrrepLabel::Spin3(j) => j.projections().map(MagneticIndex::One).collect(),
            IrrepLabel::Spin4(a, b) => {
                a.projections().flat_map(|ma| b.projections().map(move |mb| MagneticIndex::Two(ma, mb))).collect()
            }
        }
    }

    /// Position of a weight in [`weights`](Self::weights).
    pub fn weight_position(&self, m: MagneticIndex) -> Option<usize> {
        let pos = |j: HalfInt, mj: HalfInt| {
            if mj.abs() > j || (j.twice() - mj.twice()) % 2 != 0 {
                None
            } else {
                Some(((mj.twice() + j.twice()) / 2) as usize)
            }
        };
        match (*self, m) {
            (IrrepLabel::Spin3(j), MagneticIndex::One(mj)) => pos(j, mj),
            (IrrepLabel::Spin4(a, b), MagneticIndex::Two(ma, mb)) => {
                Some(pos(a, ma)? * (b.twice() as usize + 1) + pos(b, mb)?)
            }
            _ => None,
        }
    }

    /// All labels of rank `n` with level at most `max_level`, sorted.
    pub fn all_up_to(n: u8, max_level: HalfInt) -> Result<Vec<IrrepLabel>> {
        let mut out: Vec<IrrepLabel> = match n {
            3 => max_level.up_to().map(IrrepLabel::Spin3).collect(),
            4 => {
                max_level.up_to().flat_map(|a| (max_level - a).up_to().map(move |b| IrrepLabel::Spin4(a, b))).collect()
            }
            _ => return Err(Error::UnsupportedN(n)),
        };
        out.sort();
        Ok(out)
    }
}

impl Ord for IrrepLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n().cmp(&other.n()).then(self.level().cmp(&other.level())).then_with(|| self.parts().cmp(&other.parts()))
    }
}

impl PartialOrd for IrrepLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl MagneticIndex {
    pub fn parts(&self) -> Vec<HalfInt> {
        match *self {
            MagneticIndex::One(m) => vec![m],
            MagneticIndex::Two(a, b) => vec![a, b],
        }
    }

    /// The all-zero weight matching the label's rank.
    pub fn zero(n: u8) -> Self {
        if n == 4 {
            MagneticIndex::Two(HalfInt::ZERO, HalfInt::ZERO)
        } else {
            MagneticIndex::One(HalfInt::ZERO)
        }
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, parts: &[HalfInt]) -> fmt::Result {
    if let [single] = parts {
        return write!(f, "{single}");
    }
    write!(f, "(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

fn parse_tuple(s: &str) -> Result<Vec<HalfInt>> {
    let s = s.trim();
    let inner = match s.strip_prefix('(') {
        Some(rest) => rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?,
        None => s,
    };
    let parts = inner.split(',').map(str::parse).collect::<Result<Vec<HalfInt>>>()?;
    if parts.is_empty() || parts.len() > 2 {
        return Err(Error::Parse(format!("expected one or two entries in {s:?}")));
    }
    Ok(parts)
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.parts())
    }
}

impl fmt::Display for MagneticIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.parts())
    }
}

/// `"2"`, `"3/2"` for n = 3; `"(1,1/2)"` for n = 4.
impl FromStr for IrrepLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match parse_tuple(s)?[..] {
            [j] => IrrepLabel::spin3(j),
            [a, b] => IrrepLabel::spin4(a, b),
            _ => unreachable!(),
        }
    }
}

impl FromStr for MagneticIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match parse_tuple(s)?[..] {
            [m] => Ok(MagneticIndex::One(m)),
            [a, b] => Ok(MagneticIndex::Two(a, b)),
            _ => unreachable!(),
        }
    }
}

impl From<IrrepLabel> for String {
    fn from(l: IrrepLabel) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for IrrepLabel {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<MagneticIndex> for String {
    fn from(m: MagneticIndex) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for MagneticIndex {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn dimensions() {
        assert_eq!(IrrepLabel::Spin3(j(0)).dim(), 1);
        assert_eq!(IrrepLabel::Spin3(j(4)).dim(), 5);
        assert_eq!(IrrepLabel::Spin4(j(2), j(2)).dim(), 9);
    }

    #[test]
    fn casimir_values() {
        assert_eq!(IrrepLabel::Spin3(j(4)).casimir2(), Ratio::from_integer(6));
        assert_eq!(IrrepLabel::Spin3(j(1)).casimir2(), Ratio::new(3, 4));
        assert_eq!(IrrepLabel::Spin4(j(2), j(2)).casimir2(), Ratio::from_integer(8));
        assert_eq!(IrrepLabel::Spin4(j(0), j(0)).casimir2(), Ratio::from_integer(0));
    }

    #[test]
    fn weights_are_indexed_consistently() {
        for label in IrrepLabel::all_up_to(4, HalfInt::integer(3)).unwrap() {
            let w = label.weights();
            assert_eq!(w.len(), label.dim());
            for (i, m) in w.iter().enumerate() {
                assert_eq!(label.weight_position(*m), Some(i));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(IrrepLabel::all_up_to(3, HalfInt::integer(2)).unwrap().len(), 5);
        // (a, b) with a + b ≤ 1 in half steps: 1 + 2 + 3 = 6
        assert_eq!(IrrepLabel::all_up_to(4, HalfInt::integer(1)).unwrap().len(), 6);
        assert!(IrrepLabel::all_up_to(5, HalfInt::ONE).is_err());
    }

    #[test]
    fn parse_and_display() {
        let l: IrrepLabel = "(1,1/2)".parse().unwrap();
        assert_eq!(l, IrrepLabel::Spin4(j(2), j(1)));
        assert_eq!(l.to_string(), "(1,1/2)");
        assert_eq!("3/2".parse::<IrrepLabel>().unwrap(), IrrepLabel::Spin3(j(3)));
        assert!("-1".parse::<IrrepLabel>().is_err());
        assert!("(1,2,3)".parse::<IrrepLabel>().is_err());
        assert!("(1".parse::<IrrepLabel>().is_err());
    }

    #[test]
    fn spinorial_sectors() {
        assert!(IrrepLabel::Spin3(j(1)).is_spinorial());
        assert!(!IrrepLabel::Spin4(j(1), j(1)).is_spinorial());
        assert!(IrrepLabel::Spin4(j(1), j(0)).is_spinorial());
    }
}
