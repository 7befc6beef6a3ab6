use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An integer or half-integer, stored as twice its value.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };
    pub const TWO: HalfInt = HalfInt { twice: 4 };

    #[inline]
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    #[inline]
    pub const fn integer(value: i32) -> Self {
        HalfInt { twice: 2 * value }
    }

    #[inline]
    pub const fn twice(self) -> i32 {
        self.twice
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// Largest integer not above the value.
    #[inline]
    pub fn floor(self) -> i32 {
        self.twice.div_euclid(2)
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    /// The values `-self, -self + 1, …, self` in ascending order.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        let t = self.twice;
        (-t..=t).step_by(2).map(HalfInt::from_twice)
    }

    /// The values `0, 1/2, 1, …, self`.
    pub fn up_to(self) -> impl Iterator<Item = HalfInt> {
        (0..=self.twice.max(-1)).map(HalfInt::from_twice)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl From<HalfInt> for String {
    fn from(h: HalfInt) -> String {
        h.to_string()
    }
}

impl TryFrom<String> for HalfInt {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

const MAX_TWICE: i64 = 1 << 20;

/// Accepts `"3"`, `"-3/2"`, `"1.5"` and `"-0.5"`.
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an integer or half-integer: {s:?}"));
        let twice: i64 = if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => num.checked_mul(2).ok_or_else(bad)?,
                "2" => num,
                _ => return Err(bad()),
            }
        } else if let Some((int, frac)) = s.split_once('.') {
            let negative = int.trim_start().starts_with('-');
            let int_part: i64 = match int {
                "" | "-" | "+" => 0,
                _ => int.parse().map_err(|_| bad())?,
            };
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let frac_twice = match frac.trim_end_matches('0') {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let magnitude = int_part
                .checked_abs()
                .and_then(|v| v.checked_mul(2))
                .and_then(|v| v.checked_add(frac_twice))
                .ok_or_else(bad)?;
            if negative {
                -magnitude
            } else {
                magnitude
            }
        } else {
            let v: i64 = s.parse().map_err(|_| bad())?;
            v.checked_mul(2).ok_or_else(bad)?
        };
        if twice.abs() > MAX_TWICE {
            return Err(Error::Parse(format!("value out of range: {s:?}")));
        }
        Ok(HalfInt { twice: twice as i32 })
    }
}
