use std::fmt;
use std::ops::Mul;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// A signed square root of a non-negative rational, `sign · √radicand`.
///
/// Clebsch-Gordan coefficients live in this set. It is closed under
/// multiplication; sums of distinct radicands have to go through `f64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CgValue {
    sign: i8,
    radicand: BigRational,
}

impl CgValue {
    pub fn zero() -> Self {
        CgValue { sign: 0, radicand: BigRational::zero() }
    }

    pub fn one() -> Self {
        CgValue { sign: 1, radicand: BigRational::one() }
    }

    /// `sign · √radicand`; a zero radicand or sign gives zero.
    pub fn new(sign: i8, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "radicand must be non-negative");
        if sign == 0 || radicand.is_zero() {
            return CgValue::zero();
        }
        CgValue { sign: sign.signum(), radicand }
    }

    /// `sign · √(num/den)`.
    pub fn from_ratio(sign: i8, num: i64, den: i64) -> Self {
        CgValue::new(sign, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The value `s`, stored as `sign(s) · √(s²)`.
    pub fn from_rational(s: &BigRational) -> Self {
        let sign = if s.is_zero() {
            0
        } else if s.is_negative() {
            -1
        } else {
            1
        };
        CgValue::new(sign, s * s)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn neg(&self) -> Self {
        CgValue { sign: -self.sign, radicand: self.radicand.clone() }
    }

    /// The square, which is always rational.
    pub fn square(&self) -> BigRational {
        self.radicand.clone()
    }

    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let r = self.radicand.to_f64().unwrap_or(f64::NAN);
        f64::from(self.sign) * r.sqrt()
    }
}

impl Mul for &CgValue {
    type Output = CgValue;
    fn mul(self, rhs: &CgValue) -> CgValue {
        CgValue::new(self.sign * rhs.sign, &self.radicand * &rhs.radicand)
    }
}

impl Mul for CgValue {
    type Output = CgValue;
    fn mul(self, rhs: CgValue) -> CgValue {
        &self * &rhs
    }
}

impl fmt::Display for CgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}√({})", if s < 0 { "-" } else { "+" }, self.radicand),
        }
    }
}
