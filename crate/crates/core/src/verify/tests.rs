use super::*;
use crate::ratpoly::rat;
use crate::trigexpr::parse;
use std::string::ToString;

fn ang(n: i64, d: i64) -> AngleSpec {
    AngleSpec::new(rat(n, d))
}

fn verify(text: &str, a: AngleSpec, b: AngleSpec) -> Verdict {
    let v = verify_nonneg(&parse(text).unwrap(), &a, &b).unwrap();
    assert_eq!(check_certificate(&v.certificate), Ok(()), "{text}");
    v
}

const EXAMPLE1: &str = "3/5 + sin(x) + cos(x) + sin(2*x)/2 + cos(2*x)/2";
const EXAMPLE4A: &str = "sin(x)/3 + sin(2*x)/2 + sin(3*x) + (23/125)*4";
const EXAMPLE4B: &str = "sin(x)/4 + sin(2*x)/3 + sin(3*x)/2 + sin(4*x) + (23/125)*5";

#[test]
fn example1_is_nonnegative_on_zero_pi() {
    let v = verify(EXAMPLE1, ang(0, 1), ang(1, 1));
    assert_eq!(v.outcome, Outcome::Nonnegative);
    assert_eq!(v.certificate.pipeline, Pipeline::HalfAngle);
    assert_eq!(v.certificate.pi_value, Some(rat(1, 10)));
    let piece = &v.certificate.pieces[0];
    assert_eq!(piece.interior_roots, 0);
    assert_eq!(piece.chain.len(), 5);
    assert!(v.witness.is_none());
}

#[test]
fn example4_sums_are_nonnegative() {
    for text in [EXAMPLE4A, EXAMPLE4B] {
        assert_eq!(verify(text, ang(0, 1), ang(1, 1)).outcome, Outcome::Nonnegative, "{text}");
    }
}

#[test]
fn example4_minus_constant_above_minimum_is_violated() {
    // the minimum over [0, pi] is about 0.01207
    for c in ["1/50", "1/10"] {
        let v = verify(&(EXAMPLE4A.to_string() + " - " + c), ang(0, 1), ang(1, 1));
        assert_eq!(v.outcome, Outcome::Violated);
        let w = v.witness.unwrap();
        assert!(w.value.is_negative());
        let x: f64 = w.x_approx.parse().unwrap();
        assert!((0.0..=core::f64::consts::PI).contains(&x));
    }
}

#[test]
fn simple_violation_has_witness() {
    let v = verify("-1 + sin(x)", ang(0, 1), ang(1, 1));
    assert_eq!(v.outcome, Outcome::Violated);
    let w = v.witness.unwrap();
    assert!(w.value.is_negative());
}

#[test]
fn sine_pipeline_cases() {
    let v = verify("sin(x)", ang(0, 1), ang(1, 1));
    assert_eq!((v.outcome, v.certificate.pipeline), (Outcome::Nonnegative, Pipeline::Sine));
    let v = verify("sin(2*x)", ang(0, 1), ang(1, 1));
    assert_eq!(v.outcome, Outcome::Violated);
    let x: f64 = v.witness.unwrap().x_approx.parse().unwrap();
    assert!(libm::sin(2.0 * x) < 0.0);
    let v = verify("sin(x) + sin(2*x)", ang(0, 1), ang(1, 1));
    assert_eq!(v.outcome, Outcome::Violated);
    let x: f64 = v.witness.unwrap().x_approx.parse().unwrap();
    assert!(libm::sin(x) + libm::sin(2.0 * x) < 0.0);
    assert!(x > 2.0 * core::f64::consts::FRAC_PI_3);
    // sin x <= 0 on [pi, 2 pi]
    let v = verify("-sin(x)", ang(1, 1), ang(2, 1));
    assert_eq!(v.outcome, Outcome::Nonnegative);
    let v = verify("sin(x)", ang(1, 2), ang(3, 2));
    assert_eq!(v.outcome, Outcome::Violated);
    let x: f64 = v.witness.unwrap().x_approx.parse().unwrap();
    assert!(libm::sin(x) < 0.0 && x <= 1.5 * core::f64::consts::PI + 1e-9);
}

#[test]
fn sine_path_precondition() {
    let m = normalize(&parse("sin(x)").unwrap()).unwrap();
    assert!(verify_sine_path(&m, &ang(0, 1), &ang(1, 1)).is_ok());
    assert!(verify_sine_path(&m, &ang(-1, 1), &ang(1, 1)).is_err());
    let m = normalize(&parse("cos(x)").unwrap()).unwrap();
    assert_eq!(verify_sine_path(&m, &ang(0, 1), &ang(1, 1)).unwrap_err(), Error::NotSine);
}

#[test]
fn touch_points_are_allowed() {
    for text in ["1 - cos(x)", "(1 - cos(x))^2", "(1-cos(x))^2*(2 + sin(x))", "1 + cos(x)", "(sin(x) - cos(x))^2"] {
        for (a, b) in [(ang(0, 1), ang(2, 1)), (ang(-1, 1), ang(1, 1)), (ang(0, 1), ang(1, 2)), (ang(1, 3), ang(7, 3))] {
            let v = verify(text, a.clone(), b.clone());
            assert_eq!(v.outcome, Outcome::Nonnegative, "{text} on [{a}, {b}]");
        }
    }
}

#[test]
fn zero_expression_is_nonnegative() {
    assert_eq!(verify("0", ang(0, 1), ang(1, 1)).outcome, Outcome::Nonnegative);
    assert_eq!(verify("sin(x)^2 + cos(x)^2 - 1", ang(0, 1), ang(2, 1)).outcome, Outcome::Nonnegative);
}

#[test]
fn pi_conjunct_catches_the_missing_point() {
    // negative only near x = pi
    let v = verify("cos(x) + 99/100", ang(0, 1), ang(2, 1));
    assert_eq!(v.outcome, Outcome::Violated);
    let v = verify_form_with(
        &normalize(&parse("cos(x) + 99/100 + 0*sin(x)").unwrap()).unwrap(),
        &ang(0, 1),
        &ang(2, 1),
        Pipeline::HalfAngle,
    )
    .unwrap();
    assert_eq!(v.outcome, Outcome::Violated);
    // 1 + cos(x) has its only zero at pi
    let m = normalize(&parse("1 + cos(x)").unwrap()).unwrap();
    let v = verify_form_with(&m, &ang(0, 1), &ang(1, 1), Pipeline::HalfAngle).unwrap();
    assert_eq!(v.outcome, Outcome::Nonnegative);
    assert_eq!(v.certificate.pi_value, Some(int(0)));
    let m = normalize(&parse("cos(x)").unwrap()).unwrap();
    let v = verify_form_with(&m, &ang(1, 2), &ang(3, 2), Pipeline::HalfAngle).unwrap();
    assert_eq!(v.outcome, Outcome::Violated);
    assert_eq!(check_certificate(&v.certificate), Ok(()));
}

#[test]
fn inexact_endpoints_cosine_pipeline() {
    // cos(2x) vanishes at pi/4, where cos(x) = sqrt(2)/2 is irrational
    let m = normalize(&parse("cos(2*x)").unwrap()).unwrap();
    let cases = [
        ((1, 5), Outcome::Nonnegative),
        ((1, 4), Outcome::InconclusiveBoundary),
        ((1, 3), Outcome::Violated),
    ];
    for ((n, d), want) in cases {
        let v = verify_form(&m, &ang(0, 1), &ang(n, d)).unwrap();
        assert_eq!(v.certificate.pipeline, Pipeline::Cosine);
        assert_eq!(v.outcome, want, "[0, {n}/{d} pi]");
        assert_eq!(check_certificate(&v.certificate), Ok(()));
        assert_eq!(v.witness.is_some(), want != Outcome::Nonnegative);
    }
}

#[test]
fn inexact_endpoints_half_angle_pipeline() {
    // cos x - sin x = (1 - 2T - T^2) / (1 + T^2) vanishes at T = tan(pi/8)
    let m = normalize(&parse("cos(x) - sin(x)").unwrap()).unwrap();
    let cases = [
        ((1, 5), Outcome::Nonnegative),
        ((1, 4), Outcome::InconclusiveBoundary),
        ((1, 3), Outcome::Violated),
    ];
    for ((n, d), want) in cases {
        let v = verify_form(&m, &ang(0, 1), &ang(n, d)).unwrap();
        assert_eq!(v.certificate.pipeline, Pipeline::HalfAngle);
        assert_eq!(v.outcome, want, "[0, {n}/{d} pi]");
        assert_eq!(check_certificate(&v.certificate), Ok(()));
    }
    // an exact T interval settles the boundary case for the cosine form
    let v = verify_form(&normalize(&parse("cos(x) + 1/2").unwrap()).unwrap(), &ang(0, 1), &ang(2, 3)).unwrap();
    assert_eq!(v.outcome, Outcome::Nonnegative);
}

#[test]
fn inconclusive_certificate_rejects_wrong_rounding() {
    let m = normalize(&parse("cos(2*x)").unwrap()).unwrap();
    let v = verify_form(&m, &ang(0, 1), &ang(1, 4)).unwrap();
    let mut c = v.certificate.clone();
    c.outcome = Outcome::Violated;
    assert!(check_certificate(&c).is_err());
}

#[test]
fn t_interval_mode() {
    let m = normalize(&parse(EXAMPLE1).unwrap()).unwrap();
    let iv = TInterval::new(Some(int(0)), None, true, false).unwrap();
    let v = verify_t_interval(&m, &iv).unwrap();
    assert_eq!(v.outcome, Outcome::Nonnegative);
    assert_eq!(check_certificate(&v.certificate), Ok(()));
    let v = verify_t_interval(&m, &TInterval::whole_line()).unwrap();
    assert_eq!(v.outcome, Outcome::Violated);
    assert_eq!(check_certificate(&v.certificate), Ok(()));
}

#[test]
fn errors() {
    let e = parse("alpha + cos(x)").unwrap();
    assert!(matches!(verify_nonneg(&e, &ang(0, 1), &ang(1, 1)), Err(Error::Parametric(_))));
    let e = parse("cos(x)").unwrap();
    assert!(matches!(verify_nonneg(&e, &ang(1, 1), &ang(0, 1)), Err(Error::InvalidInterval(_))));
}

#[test]
fn tampered_certificates_fail() {
    let v = verify(EXAMPLE1, ang(0, 1), ang(1, 1));
    let mut c = v.certificate.clone();
    c.pieces[0].sign = -1;
    assert!(check_certificate(&c).is_err());

    let mut c = v.certificate.clone();
    c.pieces[0].chain.pop();
    assert!(check_certificate(&c).is_err());

    let mut c = v.certificate.clone();
    c.outcome = Outcome::Violated;
    assert!(check_certificate(&c).is_err());

    let mut c = v.certificate.clone();
    c.pi_value = Some(rat(-1, 10));
    assert!(check_certificate(&c).is_err());

    let mut c = v.certificate.clone();
    if let Some((_, val)) = &mut c.pieces[0].sample {
        *val = -val.clone();
    }
    assert!(check_certificate(&c).is_err());

    let mut c = v.certificate.clone();
    c.pieces[0].interior_roots = 1;
    assert!(check_certificate(&c).is_err());

    let mut c = v.certificate.clone();
    c.p1 = Poly::from_ints(&[1]);
    assert!(check_certificate(&c).is_err());

    let bad = verify("-1 + sin(x)", ang(0, 1), ang(1, 1));
    let mut c = bad.certificate.clone();
    if let Some(w) = &mut c.witness {
        w.value = int(1);
    }
    assert!(check_certificate(&c).is_err());
    let mut c = bad.certificate.clone();
    c.outcome = Outcome::Nonnegative;
    assert!(check_certificate(&c).is_err());
}

#[test]
fn periodic_reduction_is_consistent() {
    for text in ["cos(x) + 1/2", "sin(x) + 1/2", EXAMPLE1, "sin(x)"] {
        let base = verify(text, ang(0, 1), ang(1, 1)).outcome;
        assert_eq!(verify(text, ang(2, 1), ang(3, 1)).outcome, base, "{text}");
        assert_eq!(verify(text, ang(-4, 1), ang(-3, 1)).outcome, base, "{text}");
    }
    let wide = verify("cos(x) + 1/2", ang(0, 1), ang(7, 1));
    assert_eq!(wide.outcome, Outcome::Violated);
}
