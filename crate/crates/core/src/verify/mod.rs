//! End-to-end nonnegativity decisions with re-checkable certificates.
//!
//! A polynomial `N` is nonnegative on an interval iff its odd part (the
//! product of its odd-multiplicity square-free factors) has no root in the
//! interior, its values at the endpoints are nonnegative, and it is
//! positive at one sample point (or identically zero). Even-multiplicity
//! touching zeros are therefore allowed.

mod certificate;
mod check;
mod plan;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{int, rat, squarefree_decompose, rational_to_f64, Poly, Rational};
use crate::reduce::{
    eval_at_pi, to_cosine_poly, to_sine_form, weierstrass, AngleSpec, Rounding, TInterval,
};
use crate::sturm::{build_chain, default_isolation_width, isolate_with_chain, IsolatingInterval};
use crate::trigexpr::{classify, normalize, Classification, MixedForm, TrigExpr};

pub use certificate::{
    CertWitness, Certificate, Domain, EndpointEval, Outcome, PieceCert, Pipeline, Reduced,
    WitnessPoint, CERT_SCHEMA,
};
pub use check::check_certificate;

use plan::{plan, PiecePlan};

/// Outcome plus certificate; `witness` is present unless the outcome is
/// `Nonnegative`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub certificate: Certificate,
    pub witness: Option<Witness>,
}

/// A point where the expression is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: WitnessPoint,
    /// The angle in the requested interval, to 12 decimals.
    pub x_approx: String,
    /// Exact value with the sign of the expression at the point. For the
    /// half-angle and cosine pipelines it is the expression value itself;
    /// for the sine pipeline it is `+-P(X)`, which drops the `|sin x|` factor.
    pub value: Rational,
}

/// Preferred pipeline for a mixed form: the `X = cos x` reductions for pure
/// inputs (half the degree), the half-angle substitution otherwise.
pub fn dispatch(m: &MixedForm) -> Pipeline {
    match classify(m) {
        Classification::PureCosine => Pipeline::Cosine,
        Classification::PureSine => Pipeline::Sine,
        Classification::General => Pipeline::HalfAngle,
    }
}

/// Decides `e(x) >= 0` for all `x` in `[a pi, b pi]`.
pub fn verify_nonneg(e: &TrigExpr, a: &AngleSpec, b: &AngleSpec) -> Result<Verdict> {
    verify_form(&normalize(e)?, a, b)
}

pub fn verify_form(m: &MixedForm, a: &AngleSpec, b: &AngleSpec) -> Result<Verdict> {
    verify_form_with(m, a, b, dispatch(m))
}

/// Like [`verify_form`] but with a forced pipeline.
pub fn verify_form_with(m: &MixedForm, a: &AngleSpec, b: &AngleSpec, pipeline: Pipeline) -> Result<Verdict> {
    if let Some(name) = m.param_name() {
        return Err(Error::Parametric(name.into()));
    }
    if a.q >= b.q {
        return Err(Error::InvalidInterval(format!("{a} >= {b}")));
    }
    let domain = Domain::Angles {
        a: a.clone(),
        b: b.clone(),
    };
    let outer = run(m, pipeline, &domain, Rounding::Outward)?;
    let exact = outer.certificate.pieces.iter().all(|p| p.interval.exact);
    if exact || outer.outcome == Outcome::Nonnegative {
        return Ok(outer);
    }
    let inner = run(m, pipeline, &domain, Rounding::Inward)?;
    if inner.outcome == Outcome::Violated {
        return Ok(inner);
    }
    let mut v = outer;
    v.outcome = Outcome::InconclusiveBoundary;
    v.certificate.outcome = Outcome::InconclusiveBoundary;
    Ok(v)
}

/// Pure-sine pipeline on `[a pi, b pi]`, which must lie within `[0, 2 pi]`.
pub fn verify_sine_path(m: &MixedForm, a: &AngleSpec, b: &AngleSpec) -> Result<Verdict> {
    if m.param.is_some() || classify(m) != Classification::PureSine {
        return Err(Error::NotSine);
    }
    if a.q.is_negative() || b.q > int(2) {
        return Err(Error::InvalidInterval(format!(
            "the sine pipeline needs an interval within [0, 2*pi], got [{a}, {b}]"
        )));
    }
    verify_form_with(m, a, b, Pipeline::Sine)
}

/// Half-angle check directly on a `T` interval (no `x = pi` point).
pub fn verify_t_interval(m: &MixedForm, iv: &TInterval) -> Result<Verdict> {
    if let Some(name) = m.param_name() {
        return Err(Error::Parametric(name.into()));
    }
    run(m, Pipeline::HalfAngle, &Domain::T(iv.clone()), Rounding::Outward)
}

pub(crate) fn reduce_for(m: &MixedForm, pipeline: Pipeline) -> Result<Reduced> {
    Ok(match pipeline {
        Pipeline::Cosine => Reduced::Cosine(to_cosine_poly(m)?),
        Pipeline::Sine => Reduced::Sine(to_sine_form(m)?),
        Pipeline::HalfAngle => Reduced::HalfAngle(weierstrass(m)?),
    })
}

fn run(m: &MixedForm, pipeline: Pipeline, domain: &Domain, rounding: Rounding) -> Result<Verdict> {
    let reduced = reduce_for(m, pipeline)?;
    let (plans, includes_pi) = plan(pipeline, domain, rounding)?;
    let mut pieces = Vec::with_capacity(plans.len());
    for pl in &plans {
        let checked = reduced.poly().scale(&int(pl.sign as i64));
        pieces.push(check_piece(&checked, &pl.interval, pl.sign)?);
    }
    let pi_value = (pipeline == Pipeline::HalfAngle && includes_pi).then(|| eval_at_pi(m));
    let pi_ok = pi_value.as_ref().is_none_or(|v| !v.is_negative());
    let ok = pi_ok && pieces.iter().all(|p| p.passed);

    let (outcome, cert_witness) = if ok {
        (Outcome::Nonnegative, None)
    } else {
        (Outcome::Violated, Some(find_witness(&reduced, &pieces, pi_value.as_ref())?))
    };
    let witness = cert_witness
        .as_ref()
        .map(|w| describe_witness(w, &plans, domain, pipeline));
    let certificate = Certificate {
        pipeline,
        p1: m.p1.clone(),
        p2: m.p2.clone(),
        domain: domain.clone(),
        rounding,
        reduced,
        pieces,
        pi_value,
        outcome,
        witness: cert_witness,
    };
    Ok(Verdict {
        outcome,
        certificate,
        witness,
    })
}

/// Sign analysis of one polynomial on one interval.
pub fn check_piece(checked: &Poly, iv: &TInterval, sign: i8) -> Result<PieceCert> {
    let endpoint = |at: &Option<Rational>, inf_sign: i8| match at {
        Some(r) => EndpointEval::Value {
            at: r.clone(),
            value: checked.eval(r),
        },
        None => EndpointEval::Limit { sign: inf_sign },
    };
    let lo = endpoint(&iv.lo, checked.sign_at_neg_inf());
    let hi = endpoint(&iv.hi, checked.sign_at_pos_inf());
    if checked.is_zero() {
        return Ok(PieceCert {
            interval: iv.clone(),
            sign,
            checked: Poly::zero(),
            squarefree: None,
            odd_part: Poly::zero(),
            chain: Vec::new(),
            interior_roots: 0,
            lo,
            hi,
            sample: None,
            passed: true,
        });
    }
    let dec = squarefree_decompose(checked)?;
    let odd = dec.odd_part();
    let chain = build_chain(&odd)?;
    let interior_roots = chain.count_in(&iv.interior());
    let s = sample_point(checked, iv);
    let sv = checked.eval(&s);
    let passed = interior_roots == 0 && lo.nonnegative() && hi.nonnegative() && sv.is_positive();
    Ok(PieceCert {
        interval: iv.clone(),
        sign,
        checked: checked.clone(),
        squarefree: Some(dec),
        odd_part: odd,
        chain: chain.polys().to_vec(),
        interior_roots,
        lo,
        hi,
        sample: Some((s, sv)),
        passed,
    })
}

/// A point strictly inside `iv` that is not a root of `p`: the midpoint when
/// both ends are finite, one unit in from a single finite end, else zero,
/// perturbed as needed.
pub(crate) fn sample_point(p: &Poly, iv: &TInterval) -> Rational {
    let candidate = |k: i64| -> Rational {
        match (&iv.lo, &iv.hi) {
            (Some(a), Some(b)) => {
                // 1/2, 1/3, 2/3, 1/4, 3/4, ...
                if k == 0 {
                    (a + b) / int(2)
                } else {
                    let den = k / 2 + 3;
                    let num = if k % 2 == 0 { 1 } else { den - 1 };
                    a + (b - a) * rat(num, den)
                }
            }
            (Some(a), None) => a + int(k + 1),
            (None, Some(b)) => b - int(k + 1),
            (None, None) => int(k),
        }
    };
    (0..)
        .map(candidate)
        .find(|c| !p.eval(c).is_zero())
        .expect("finitely many roots")
}

fn find_witness(reduced: &Reduced, pieces: &[PieceCert], pi_value: Option<&Rational>) -> Result<CertWitness> {
    for (i, piece) in pieces.iter().enumerate() {
        if piece.passed {
            continue;
        }
        let endpoints_count = !matches!(reduced, Reduced::Sine(_));
        if let Some(t) = negative_point(piece, endpoints_count) {
            let value = witness_value(reduced, piece, &t);
            return Ok(CertWitness {
                piece: Some(i),
                point: reduced.point(t),
                value,
            });
        }
    }
    match pi_value {
        Some(v) if v.is_negative() => Ok(CertWitness {
            piece: None,
            point: WitnessPoint::Pi,
            value: v.clone(),
        }),
        _ => Err(Error::Internal("failed piece without a negative point".into())),
    }
}

/// Value at a piece-local point with the sign of the expression there.
pub(crate) fn witness_value(reduced: &Reduced, piece: &PieceCert, t: &Rational) -> Rational {
    match reduced {
        Reduced::HalfAngle(rf) => rf.eval(t),
        Reduced::Cosine(_) | Reduced::Sine(_) => piece.checked.eval(t),
    }
}

/// Some point of the interval where the checked polynomial is negative.
/// On the sine pipeline the endpoints `X = +-1` are zeros of `sin x`, so
/// witnesses there are excluded.
fn negative_point(piece: &PieceCert, endpoints_count: bool) -> Option<Rational> {
    let q = &piece.checked;
    let iv = &piece.interval;
    let is_neg = |t: &Rational| q.eval(t).is_negative();
    if let Some((s, v)) = &piece.sample {
        if v.is_negative() {
            return Some(s.clone());
        }
    }
    for (ev, closed) in [(&piece.lo, iv.lo_closed), (&piece.hi, iv.hi_closed)] {
        if let EndpointEval::Value { at, value } = ev {
            if endpoints_count && closed && value.is_negative() {
                return Some(at.clone());
            }
        }
    }
    // Sign changes inside: probe the gaps between isolated odd roots,
    // refining until an isolating endpoint falls into a negative region.
    let chain = build_chain(&piece.odd_part).ok()?;
    let interior = iv.interior();
    let mut roots = isolate_with_chain(&chain, &interior, &default_isolation_width());
    for _ in 0..64 {
        let mut probes: Vec<Rational> = Vec::new();
        let mut prev: Option<Rational> = iv.lo.clone();
        let mut left_open = iv.lo.is_none();
        for r in &roots {
            probes.push(gap_probe(q, prev.as_ref(), Some(&r.lo), left_open));
            probes.push(r.lo.clone());
            probes.push(r.hi.clone());
            prev = Some(r.hi.clone());
            left_open = false;
        }
        probes.push(gap_probe(q, prev.as_ref(), iv.hi.as_ref(), left_open));
        let usable = |t: &Rational| interior.contains(t) || (endpoints_count && iv.contains(t));
        if let Some(t) = probes.into_iter().find(|t| usable(t) && is_neg(t)) {
            return Some(t);
        }
        roots = roots
            .iter()
            .map(|r| refine_by(&chain, r))
            .collect();
    }
    None
}

fn refine_by(chain: &crate::sturm::SturmChain, r: &IsolatingInterval) -> IsolatingInterval {
    let w = r.width() / int(1024);
    crate::sturm::refine(chain, r, &w)
}

fn gap_probe(q: &Poly, lo: Option<&Rational>, hi: Option<&Rational>, _unbounded_left: bool) -> Rational {
    let iv = TInterval {
        lo: lo.cloned(),
        hi: hi.cloned(),
        lo_closed: false,
        hi_closed: false,
        exact: true,
    };
    match (lo, hi) {
        (Some(a), Some(b)) if a >= b => a.clone(),
        _ => sample_point(q, &iv),
    }
}

fn describe_witness(w: &CertWitness, plans: &[PiecePlan], domain: &Domain, pipeline: Pipeline) -> Witness {
    let start = match domain {
        Domain::Angles { a, .. } => Some(a.to_f64()),
        Domain::T(_) => None,
    };
    let x0 = match (&w.point, w.piece) {
        (WitnessPoint::T(t), _) => 2.0 * libm::atan(rational_to_f64(t)),
        (WitnessPoint::X(x), Some(i)) => {
            let base = crate::reduce::acos_f64(x);
            if plans[i].upper || pipeline == Pipeline::HalfAngle {
                base
            } else {
                core::f64::consts::TAU - base
            }
        }
        (WitnessPoint::X(x), None) => crate::reduce::acos_f64(x),
        (WitnessPoint::Pi, _) => core::f64::consts::PI,
    };
    let x = start.map_or(x0, |s| crate::reduce::shift_into(x0, s));
    Witness {
        point: w.point.clone(),
        x_approx: format!("{x:.12}"),
        value: w.value.clone(),
    }
}

#[cfg(test)]
mod tests;
