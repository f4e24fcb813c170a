use alloc::vec::Vec;

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Monic gcd via a primitive remainder sequence.
///
/// Each remainder is replaced by its primitive integer part before the next
/// step, which keeps coefficient sizes bounded by the inputs' rather than
/// growing exponentially as in plain rational Euclid.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (p.primitive().1, q.primitive().1);
    if a.degree() < b.degree() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r.primitive().1;
    }
    Ok(a.monic())
}

/// `p = unit * prod(factor^multiplicity)` with monic, square-free, pairwise
/// coprime factors listed by increasing multiplicity.
///
/// `unit` is the leading coefficient of `p` and may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reassemble(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (f, k)| &acc * &f.pow(*k))
    }

    /// Product of the factors with odd multiplicity (monic).
    pub fn odd_part(&self) -> Poly {
        self.factors
            .iter()
            .filter(|(_, k)| k % 2 == 1)
            .fold(Poly::one(), |acc, (f, _)| &acc * f)
    }

    /// Product of all distinct factors (monic).
    pub fn squarefree_part(&self) -> Poly {
        self.factors.iter().fold(Poly::one(), |acc, (f, _)| &acc * f)
    }
}

/// Yun's square-free decomposition over the rationals.
pub fn squarefree_decompose(p: &Poly) -> Result<SquarefreeDecomposition> {
    let unit = p.leading_coeff().ok_or(Error::ZeroPolynomial)?.clone();
    let mut factors = Vec::new();
    if p.is_constant() {
        return Ok(SquarefreeDecomposition { unit, factors });
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df)?;
    let mut b = f.exact_div(&a0)?;
    let mut c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d)?;
        b = b.exact_div(&a)?;
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        if !a.is_constant() {
            factors.push((a, i));
        }
        i += 1;
    }
    Ok(SquarefreeDecomposition { unit, factors })
}

/// Monic product of the odd-multiplicity square-free factors of `p`.
///
/// `p` changes sign exactly at the real roots of this polynomial.
pub fn odd_part(p: &Poly) -> Result<Poly> {
    Ok(squarefree_decompose(p)?.odd_part())
}

/// Monic `p / gcd(p, p')`.
pub fn squarefree_part(p: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Poly::one());
    }
    let g = poly_gcd(p, &p.derivative())?;
    Ok(p.exact_div(&g)?.monic())
}
