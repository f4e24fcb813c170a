//! Exact rational and univariate polynomial arithmetic.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals
//! and no operation ever rounds. Degrees in this crate stay small (a few
//! dozen at most), so storage is dense.

mod chebyshev;
mod gcd;
mod param;
mod poly;
mod rational;
mod resultant;
pub mod text;

pub use chebyshev::{chebyshev_first, chebyshev_second};
pub use gcd::{odd_part, poly_gcd, squarefree_decompose, squarefree_part, SquarefreeDecomposition};
pub use param::ParamPoly;
pub use poly::Poly;
pub use rational::{int, rat, rational_from_f64, rational_to_f64, Rational};
pub use resultant::{bareiss_determinant, discriminant_param, resultant, BareissRing};
