use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Exact rational number. Always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    match r.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // Huge numerator/denominator; scale through the bit lengths.
            let n = r.numer();
            let d = r.denom();
            let shift = n.bits() as i64 - d.bits() as i64;
            let scaled = if shift > 0 {
                Rational::new(n.clone(), d.clone() << (shift as usize))
            } else {
                Rational::new(n.clone() << ((-shift) as usize), d.clone())
            };
            scaled.to_f64().unwrap_or(0.0) * libm::pow(2.0, shift as f64)
        }
    }
}

/// Exact conversion of a finite `f64` into a rational. Non-finite input gives `None`.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    if !v.is_finite() {
        return None;
    }
    if v == 0.0 {
        return Some(Rational::zero());
    }
    let bits = v.to_bits();
    let sign: i64 = if bits >> 63 == 0 { 1 } else { -1 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & 0x000f_ffff_ffff_ffff;
    let (mantissa, exp) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    let m = BigInt::from(mantissa) * sign;
    Some(if exp >= 0 {
        Rational::from_integer(m << (exp as usize))
    } else {
        Rational::new(m, BigInt::from(1) << ((-exp) as usize))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_conversion_is_exact() {
        assert_eq!(rational_from_f64(0.5).unwrap(), rat(1, 2));
        assert_eq!(rational_from_f64(-3.0).unwrap(), int(-3));
        assert_eq!(rational_from_f64(0.1).unwrap().to_f64().unwrap(), 0.1);
        assert!(rational_from_f64(f64::NAN).is_none());
        assert_eq!(rational_to_f64(&rat(-7, 4)), -1.75);
    }
}
