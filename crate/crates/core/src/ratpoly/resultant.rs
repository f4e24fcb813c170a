use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::param::ParamPoly;
use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Integral-domain operations needed by fraction-free elimination.
pub trait BareissRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, other: &Self) -> Result<Self>;
}

impl BareissRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Result<Self> {
        if Zero::is_zero(other) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self / other)
        }
    }
}

impl BareissRing for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Result<Self> {
        Poly::exact_div(self, other)
    }
}

/// Determinant by Bareiss fraction-free elimination. Every intermediate
/// entry is a minor of the input, so all divisions are exact.
pub fn bareiss_determinant<R: BareissRing>(mut m: Vec<Vec<R>>) -> Result<R> {
    let n = m.len();
    if n == 0 {
        return Ok(R::one());
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.exact_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Sylvester matrix with descending coefficients, `deg q` rows of `p` first.
fn sylvester<R: BareissRing>(p: &[R], q: &[R]) -> Vec<Vec<R>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, shifts) in [(p, n), (q, m)] {
        for s in 0..shifts {
            let mut row = vec![R::zero(); size];
            for (j, c) in src.iter().rev().enumerate() {
                row[s + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Resultant `lc(p)^deg(q) * prod q(root_i)` over the roots of `p`, computed
/// as the Sylvester determinant. Zero exactly when `p` and `q` share a root.
pub fn resultant(p: &Poly, q: &Poly) -> Result<Rational> {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    if m == 0 {
        return Ok(num_traits::pow(p.coeffs()[0].clone(), n));
    }
    if n == 0 {
        return Ok(num_traits::pow(q.coeffs()[0].clone(), m));
    }
    bareiss_determinant(sylvester(p.coeffs(), q.coeffs()))
}

/// Discriminant in `T` of a parametric polynomial, as a polynomial in the
/// parameter.
///
/// Computed as `resultant(p, dp/dT) / lc(p)` over `Q[param]`, then normalized
/// to a primitive integer polynomial with positive leading coefficient. Only
/// the root set is meaningful after normalization.
pub fn discriminant_param(p: &ParamPoly) -> Result<Poly> {
    let n = p.degree_t().unwrap_or(0);
    if n < 2 {
        return Err(Error::DegreeTooLow { needed: 2, got: n });
    }
    let dp = p.derivative_t();
    let res = bareiss_determinant(sylvester(p.coeffs(), dp.coeffs()))?;
    let lead = p.leading_coeff().expect("degree checked");
    Ok(res.exact_div(lead)?.primitive_positive())
}
