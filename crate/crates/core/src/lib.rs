//! Matrix representations of sl(n, ℝ) on truncated L²(Spin(n)) spaces, built
//! from the Gell-Mann decontraction formula, plus the residual checks that
//! certify (or refute) them numerically.

pub mod coupling;
pub mod error;
pub mod group;
pub mod operators;
pub mod repspace;
pub mod sparse;
pub mod validator;

pub use error::{Error, Result};
