//! Reductions from trigonometric to algebraic polynomials.
//!
//! * pure cosine: `f(x) = P(cos x)`;
//! * pure sine: `f(x) = sin(x) P(cos x)`;
//! * anything else: `T = tan(x/2)` turns `f` into `N(T) / (d (1+T^2)^m)`.
//!
//! The cosine and sine reductions have half the degree of the half-angle
//! one and are preferred when they apply.

mod interval;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{Poly, Rational};
use crate::trigexpr::{classify, Classification, MixedForm};

pub use interval::{
    map_x_interval, map_x_interval_cosine, parse_interval, AngleSpec, IntervalSpec, Rounding,
    TInterval, XImage, ENDPOINT_SLACK,
};
pub(crate) use interval::{acos_f64, shift_into};

/// `P` with `f(x) = P(cos x)`.
pub fn to_cosine_poly(m: &MixedForm) -> Result<Poly> {
    if m.param.is_some() || classify(m) != Classification::PureCosine {
        return Err(Error::NotCosine);
    }
    Ok(m.p1.clone())
}

/// `P` with `f(x) = sin(x) P(cos x)`.
pub fn to_sine_form(m: &MixedForm) -> Result<Poly> {
    if m.param.is_some() || classify(m) != Classification::PureSine {
        return Err(Error::NotSine);
    }
    Ok(m.p2.clone())
}

/// `numerator(T) / (denom_scalar * (1 + T^2)^denom_power)`.
///
/// The denominator is positive for every real `T`, so the sign of the
/// numerator is the sign of the source expression at `x = 2 atan(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalForm {
    pub numerator: Poly,
    pub denom_scalar: BigInt,
    pub denom_power: u32,
}

impl RationalForm {
    pub fn eval(&self, t: &Rational) -> Rational {
        let one_t2 = Rational::one() + t * t;
        let den = Rational::from_integer(self.denom_scalar.clone())
            * num_traits::pow(one_t2, self.denom_power as usize);
        self.numerator.eval(t) / den
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let den = crate::ratpoly::rational_to_f64(&Rational::from_integer(self.denom_scalar.clone()))
            * libm::pow(1.0 + t * t, self.denom_power as f64);
        self.numerator.eval_f64(t) / den
    }
}

/// Smallest `m` clearing both substituted terms: `max(deg P1, deg P2 + 1)`.
pub fn half_angle_power(p1: &Poly, p2: &Poly) -> u32 {
    let a = p1.degree().unwrap_or(0);
    let b = p2.degree().map_or(0, |d| d + 1);
    a.max(b) as u32
}

/// `(1+T^2)^m P1(X) + 2T (1+T^2)^(m-1) P2(X)` with `X = (1-T^2)/(1+T^2)`,
/// expanded as a polynomial in `T`. Requires `m >= half_angle_power(p1, p2)`.
pub fn half_angle_bracket(p1: &Poly, p2: &Poly, m: u32) -> Poly {
    let m = m as usize;
    let one_minus = Poly::from_ints(&[1, 0, -1]);
    let one_plus = Poly::from_ints(&[1, 0, 1]);
    let minus_pows: alloc::vec::Vec<Poly> = (0..=m).map(|k| one_minus.pow(k as u32)).collect();
    let plus_pows: alloc::vec::Vec<Poly> = (0..=m).map(|k| one_plus.pow(k as u32)).collect();
    let mut acc = Poly::zero();
    for (k, a) in p1.coeffs().iter().enumerate() {
        if !a.is_zero() {
            acc = &acc + &(&minus_pows[k] * &plus_pows[m - k]).scale(a);
        }
    }
    let two_t = Poly::from_ints(&[0, 2]);
    for (k, b) in p2.coeffs().iter().enumerate() {
        if !b.is_zero() {
            let term = &(&two_t * &minus_pows[k]) * &plus_pows[m - 1 - k];
            acc = &acc + &term.scale(b);
        }
    }
    acc
}

/// Least common multiple of the coefficient denominators (1 for zero).
pub(crate) fn denominator_lcm(coeffs: &[Rational]) -> BigInt {
    coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Tangent half-angle substitution. `d` is the least positive integer that
/// clears every denominator of the bracket, so `numerator = d * bracket` has
/// integer coefficients.
pub fn weierstrass(m: &MixedForm) -> Result<RationalForm> {
    if let Some(name) = m.param_name() {
        return Err(Error::Parametric(name.into()));
    }
    let power = half_angle_power(&m.p1, &m.p2);
    let bracket = half_angle_bracket(&m.p1, &m.p2, power);
    let d = denominator_lcm(bracket.coeffs());
    Ok(RationalForm {
        numerator: bracket.scale(&Rational::from_integer(d.clone())),
        denom_scalar: d,
        denom_power: power,
    })
}

/// Exact value at `x = pi`, the one point `T = tan(x/2)` cannot reach.
pub fn eval_at_pi(m: &MixedForm) -> Rational {
    m.value_at_pi()
}
