//! Exact decision procedures for the sign of trigonometric polynomials.
//!
//! A trigonometric polynomial `a0 + sum(ak cos(kx) + bk sin(kx))` is rewritten
//! exactly as `P1(cos x) + sin(x) P2(cos x)` and then reduced to an algebraic
//! polynomial, either in `X = cos x` (pure cosine and pure sine inputs) or in
//! `T = tan(x/2)` (everything else). Sturm sequences over exact rationals then
//! decide nonnegativity on an interval, and every verdict carries a
//! certificate that can be re-checked without re-running the pipeline.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line front end live in the `trigcert` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod minimize;
pub mod ratpoly;
pub mod reduce;
pub mod sturm;
pub mod trigexpr;
pub mod verify;

pub use error::{Error, Result};
pub use ratpoly::{ParamPoly, Poly, Rational};
