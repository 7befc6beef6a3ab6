//! Consistency of the adopted structure constants, independent of any
//! truncated space: the brackets must satisfy the Jacobi identity as
//! abstract formulas, and must hold in the defining realization.

use num::complex::Complex64;

use super::{ConfigSnapshot, ResidualReport, PASS_TOLERANCE};
use crate::coupling::HalfInt;
use crate::error::{Error, Result};
use crate::group::CMatrix;
use crate::repspace::SpaceSpec;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// An element of gl(n) in the basis `M_ab (a < b)`, `T_ab (a ≤ b)`.
#[derive(Clone, Debug, PartialEq)]
struct Element {
    n: usize,
    m: Vec<Complex64>,
    t: Vec<Complex64>,
}

impl Element {
    fn zero(n: usize) -> Self {
        Element { n, m: vec![Complex64::new(0.0, 0.0); n * n], t: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    fn add_m(&mut self, a: usize, b: usize, c: Complex64) {
        // M_ba = −M_ab, M_aa = 0
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.m[a * self.n + b] += c,
            std::cmp::Ordering::Greater => self.m[b * self.n + a] -= c,
            std::cmp::Ordering::Equal => {}
        }
    }

    fn add_t(&mut self, a: usize, b: usize, c: Complex64) {
        let (a, b) = (a.min(b), a.max(b));
        self.t[a * self.n + b] += c;
    }

    fn scaled_add(&mut self, other: &Element, c: Complex64) {
        for (x, y) in self.m.iter_mut().zip(&other.m) {
            *x += y * c;
        }
        for (x, y) in self.t.iter_mut().zip(&other.t) {
            *x += y * c;
        }
    }

    fn max_abs(&self) -> f64 {
        self.m.iter().chain(&self.t).map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn d(a: usize, b: usize) -> Complex64 {
    Complex64::new(if a == b { 1.0 } else { 0.0 }, 0.0)
}

#[derive(Copy, Clone)]
enum Gen {
    M(usize, usize),
    T(usize, usize),
}

/// The adopted bracket on basis generators.
fn bracket_gen(n: usize, x: Gen, y: Gen) -> Element {
    let mut out = Element::zero(n);
    match (x, y) {
        (Gen::M(a, b), Gen::M(c, e)) => {
            out.add_m(b, e, I * d(a, c));
            out.add_m(a, c, I * d(b, e));
            out.add_m(b, c, -I * d(a, e));
            out.add_m(a, e, -I * d(b, c));
        }
        (Gen::M(a, b), Gen::T(c, e)) => {
            out.add_t(b, e, I * d(a, c));
            out.add_t(b, c, I * d(a, e));
            out.add_t(a, e, -I * d(b, c));
            out.add_t(a, c, -I * d(b, e));
        }
        (Gen::T(..), Gen::M(..)) => {
            out.scaled_add(&bracket_gen(n, y, x), Complex64::new(-1.0, 0.0));
        }
        (Gen::T(a, b), Gen::T(c, e)) => {
            out.add_m(e, b, I * d(a, c));
            out.add_m(c, b, I * d(a, e));
            out.add_m(e, a, I * d(b, c));
            out.add_m(c, a, I * d(b, e));
        }
    }
    out
}

fn generators(n: usize) -> Vec<(Gen, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            if a < b {
                out.push((Gen::M(a, b), a * n + b));
            }
            out.push((Gen::T(a, b), a * n + b));
        }
    }
    out
}

fn bracket(x: &Element, y: &Element) -> Element {
    let n = x.n;
    let mut out = Element::zero(n);
    for &(gx, ix) in &generators(n) {
        let cx = match gx {
            Gen::M(..) => x.m[ix],
            Gen::T(..) => x.t[ix],
        };
        if cx.norm() == 0.0 {
            continue;
        }
        for &(gy, iy) in &generators(n) {
            let cy = match gy {
                Gen::M(..) => y.m[iy],
                Gen::T(..) => y.t[iy],
            };
            if cy.norm() == 0.0 {
                continue;
            }
            out.scaled_add(&bracket_gen(n, gx, gy), cx * cy);
        }
    }
    out
}

fn single(n: usize, g: Gen) -> Element {
    let mut e = Element::zero(n);
    match g {
        Gen::M(a, b) => e.add_m(a, b, Complex64::new(1.0, 0.0)),
        Gen::T(a, b) => e.add_t(a, b, Complex64::new(1.0, 0.0)),
    }
    e
}

fn jacobi_residual(n: usize) -> f64 {
    let basis: Vec<Element> = generators(n).into_iter().map(|(g, _)| single(n, g)).collect();
    let mut worst: f64 = 0.0;
    for x in &basis {
        for y in &basis {
            let xy = bracket(x, y);
            for z in &basis {
                let mut sum = bracket(x, &bracket(y, z));
                sum.scaled_add(&bracket(y, &bracket(z, x)), Complex64::new(1.0, 0.0));
                sum.scaled_add(&bracket(z, &xy), Complex64::new(1.0, 0.0));
                worst = worst.max(sum.max_abs());
            }
        }
    }
    worst
}

fn realize(n: usize, e: &Element) -> CMatrix {
    let mut out = CMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let (cm, ct) = (e.m[a * n + b], e.t[a * n + b]);
            // M_ab = −i(E_ab − E_ba), T_ab = i(E_ab + E_ba)
            out[(a, b)] += -I * cm + I * ct;
            out[(b, a)] += I * cm + I * ct;
        }
    }
    out
}

fn realization_residual(n: usize) -> f64 {
    let gens = generators(n);
    let mut worst: f64 = 0.0;
    for &(gx, _) in &gens {
        let x = single(n, gx);
        let rx = realize(n, &x);
        for &(gy, _) in &gens {
            let y = single(n, gy);
            let ry = realize(n, &y);
            let lhs = &rx * &ry - &ry * &rx;
            let rhs = realize(n, &bracket(&x, &y));
            worst = (lhs - rhs).iter().map(|z| z.norm()).fold(worst, f64::max);
        }
    }
    worst
}

/// Jacobi identity of the adopted brackets and their validity on the
/// defining n × n realization; the larger residual is reported.
pub fn check_structure_constants(n: u8) -> Result<ResidualReport> {
    if !matches!(n, 3 | 4) {
        return Err(Error::UnsupportedN(n));
    }
    let n_us = n as usize;
    let residual = jacobi_residual(n_us).max(realization_residual(n_us));
    Ok(ResidualReport::new(
        "structure_constants",
        residual,
        HalfInt::ZERO,
        0,
        ConfigSnapshot::of(&SpaceSpec::full(n, HalfInt::ZERO), None),
        PASS_TOLERANCE,
    ))
}
