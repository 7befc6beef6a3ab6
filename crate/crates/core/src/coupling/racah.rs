//! Exact SU(2) Clebsch-Gordan coefficients from Racah's single-sum formula.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num::{BigInt, BigRational, One, Zero};

use super::cgvalue::CgValue;
use super::halfint::HalfInt;
use crate::error::{Error, Result};

fn factorial(k: i32) -> BigInt {
    static TABLE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    let k = usize::try_from(k).expect("factorial of a negative number");
    if let Some(v) = table.read().unwrap().get(k) {
        return v.clone();
    }
    let mut t = table.write().unwrap();
    while t.len() <= k {
        let next = t.last().unwrap() * BigInt::from(t.len());
        t.push(next);
    }
    t[k].clone()
}

fn check_projection(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice() < 0 {
        return Err(Error::InvalidLabel(format!("negative angular momentum {j}")));
    }
    if (j.twice() - m.twice()) % 2 != 0 {
        return Err(Error::InvalidLabel(format!("projection {m} does not match j = {j}")));
    }
    Ok(())
}

/// ⟨j1 m1; j2 m2 | j m⟩ in the Condon-Shortley convention.
///
/// Zero whenever `m1 + m2 ≠ m`, a projection is out of range, or the
/// triangle rule fails. Negative `j` or projections of the wrong parity
/// are rejected.
pub fn cg(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> Result<CgValue> {
    check_projection(j1, m1)?;
    check_projection(j2, m2)?;
    check_projection(j, m)?;
    Ok(cg_unchecked([j1, m1, j2, m2, j, m].map(HalfInt::twice)))
}

fn selection_rules_hold(t: [i32; 6]) -> bool {
    let [j1, m1, j2, m2, j, m] = t;
    m1 + m2 == m
        && m1.abs() <= j1
        && m2.abs() <= j2
        && m.abs() <= j
        && j <= j1 + j2
        && j >= (j1 - j2).abs()
        && (j1 + j2 + j) % 2 == 0
}

/// Racah sum on twice-valued labels that already passed parity checks.
fn cg_unchecked(t: [i32; 6]) -> CgValue {
    if !selection_rules_hold(t) {
        return CgValue::zero();
    }
    let [j1, m1, j2, m2, j, m] = t;
    // Every combination below is an even number of half units.
    let h = |v: i32| v / 2;
    let a = h(j1 + j2 - j);
    let b = h(j1 - j2 + j);
    let c = h(-j1 + j2 + j);
    let d = h(j1 + j2 + j) + 1;

    let num = BigInt::from(j + 1)
        * factorial(a)
        * factorial(b)
        * factorial(c)
        * factorial(h(j + m))
        * factorial(h(j - m))
        * factorial(h(j1 - m1))
        * factorial(h(j1 + m1))
        * factorial(h(j2 - m2))
        * factorial(h(j2 + m2));
    let prefactor = BigRational::new(num, factorial(d));

    let k_min = 0.max(h(j2 - j - m1)).max(h(j1 + m2 - j));
    let k_max = a.min(h(j1 - m1)).min(h(j2 + m2));
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let den = factorial(k)
            * factorial(a - k)
            * factorial(h(j1 - m1) - k)
            * factorial(h(j2 + m2) - k)
            * factorial(h(j - j2 + m1) + k)
            * factorial(h(j - j1 - m2) + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let s = CgValue::from_rational(&sum);
    CgValue::new(s.sign(), prefactor * s.square())
}

type CacheKey = [i32; 6];

fn float_cache() -> &'static RwLock<HashMap<CacheKey, f64>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `cg(...)` converted to `f64`, memoised.
///
/// Assembly code calls this in tight loops; the cache only stores values
/// the exact routine already produced.
pub fn cg_f64(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> Result<f64> {
    let key = [j1, m1, j2, m2, j, m].map(HalfInt::twice);
    if !selection_rules_hold(key) {
        check_projection(j1, m1)?;
        check_projection(j2, m2)?;
        check_projection(j, m)?;
        return Ok(0.0);
    }
    if let Some(v) = float_cache().read().unwrap().get(&key) {
        return Ok(*v);
    }
    let v = cg(j1, m1, j2, m2, j, m)?.to_f64();
    float_cache().write().unwrap().insert(key, v);
    Ok(v)
}
