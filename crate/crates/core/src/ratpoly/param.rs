use alloc::vec::Vec;

use super::poly::Poly;
use super::rational::Rational;

/// Polynomial in `T` whose coefficients are polynomials in one parameter.
///
/// `coeffs[i]` is the coefficient of `T^i`, a polynomial in the parameter.
/// The highest stored coefficient is never the zero polynomial, but it can
/// still vanish at particular parameter values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamPoly {
    coeffs: Vec<Poly>,
}

impl ParamPoly {
    pub fn from_coeffs(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        ParamPoly { coeffs }
    }

    /// `constant + param * slope`, both polynomials in `T`.
    pub fn affine(constant: &Poly, slope: &Poly) -> Self {
        let n = constant.coeffs().len().max(slope.coeffs().len());
        ParamPoly::from_coeffs(
            (0..n)
                .map(|i| Poly::from_coeffs(alloc::vec![constant.coeff(i), slope.coeff(i)]))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading `T`-coefficient as a polynomial in the parameter.
    pub fn leading_coeff(&self) -> Option<&Poly> {
        self.coeffs.last()
    }

    pub fn derivative_t(&self) -> ParamPoly {
        ParamPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer((i as i64).into())))
                .collect(),
        )
    }

    /// Specializes the parameter, giving a polynomial in `T`.
    pub fn at_param(&self, value: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.eval(value)).collect())
    }

    /// Fixes `T`, giving a polynomial in the parameter.
    pub fn at_t(&self, t: &Rational) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &acc.scale(t) + c)
    }
}
