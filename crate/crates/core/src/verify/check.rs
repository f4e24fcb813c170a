//! Independent re-checking of certificates.
//!
//! Everything in a certificate is recomputed from its inputs `(P1, P2)`,
//! the domain and the rounding mode, except the Sturm chain and the
//! square-free factors, which are validated through their defining
//! identities. Sign variations are recounted here rather than through the
//! solver's chain type.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::certificate::*;
use super::plan::plan;
use super::reduce_for;
use crate::ratpoly::{int, poly_gcd, Poly, Rational};
use crate::reduce::{Rounding, TInterval};
use crate::trigexpr::MixedForm;

/// `Ok(())` iff every claim in the certificate re-checks; otherwise the
/// list of failed claims.
pub fn check_certificate(c: &Certificate) -> Result<(), Vec<String>> {
    let mut errs = Vec::new();
    check_into(c, &mut errs);
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

fn check_into(c: &Certificate, errs: &mut Vec<String>) {
    let form = MixedForm::new(c.p1.clone(), c.p2.clone());
    match reduce_for(&form, c.pipeline) {
        Ok(r) if r == c.reduced => {}
        Ok(_) => errs.push("reduced polynomial does not match the input".into()),
        Err(e) => {
            errs.push(format!("input does not fit the {} pipeline: {e}", c.pipeline.name()));
            return;
        }
    }
    let (plans, includes_pi) = match plan(c.pipeline, &c.domain, c.rounding) {
        Ok(p) => p,
        Err(e) => {
            errs.push(format!("domain: {e}"));
            return;
        }
    };
    if plans.len() != c.pieces.len() {
        errs.push(format!("expected {} pieces, found {}", plans.len(), c.pieces.len()));
        return;
    }
    let mut all_passed = true;
    for (i, (pl, piece)) in plans.iter().zip(&c.pieces).enumerate() {
        if pl.interval != piece.interval || pl.sign != piece.sign {
            errs.push(format!("piece {i}: interval or sign differs from the transported domain"));
            continue;
        }
        let expected = c.reduced.poly().scale(&int(piece.sign as i64));
        if expected != piece.checked {
            errs.push(format!("piece {i}: checked polynomial is not sign * reduced"));
            continue;
        }
        match check_piece(piece) {
            Ok(passed) => {
                if passed != piece.passed {
                    errs.push(format!("piece {i}: pass flag should be {passed}"));
                }
                all_passed &= passed;
            }
            Err(msg) => {
                errs.push(format!("piece {i}: {msg}"));
                all_passed = false;
            }
        }
    }

    let expected_pi = (c.pipeline == Pipeline::HalfAngle && includes_pi).then(|| form.value_at_pi());
    if expected_pi != c.pi_value {
        errs.push("value at pi is missing, superfluous or wrong".into());
    }
    let pi_ok = expected_pi.as_ref().is_none_or(|v| !v.is_negative());
    let holds = all_passed && pi_ok;
    let exact = c.pieces.iter().all(|p| p.interval.exact);

    match c.outcome {
        Outcome::Nonnegative => {
            if !holds {
                errs.push("outcome nonnegative but some check fails".into());
            }
            if c.rounding != Rounding::Outward {
                errs.push("nonnegativity must be certified on the outward-rounded domain".into());
            }
            if c.witness.is_some() {
                errs.push("nonnegative outcome carries a witness".into());
            }
        }
        Outcome::Violated | Outcome::InconclusiveBoundary => {
            if holds {
                errs.push(format!("outcome {} but every check passes", c.outcome.name()));
            }
            let rounding_ok = match c.outcome {
                Outcome::Violated => c.rounding == Rounding::Inward || exact,
                _ => c.rounding == Rounding::Outward && !exact,
            };
            if !rounding_ok {
                errs.push(format!("rounding mode inconsistent with outcome {}", c.outcome.name()));
            }
            match &c.witness {
                None => errs.push("missing witness".into()),
                Some(w) => check_witness(c, w, errs),
            }
        }
    }
}

fn check_witness(c: &Certificate, w: &CertWitness, errs: &mut Vec<String>) {
    if !w.value.is_negative() {
        errs.push("witness value is not negative".into());
    }
    let (t, i) = match (&w.point, w.piece, &c.reduced) {
        (WitnessPoint::Pi, None, Reduced::HalfAngle(_)) => {
            if c.pi_value.as_ref() != Some(&w.value) {
                errs.push("witness value differs from the value at pi".into());
            }
            return;
        }
        (WitnessPoint::T(t), Some(i), Reduced::HalfAngle(_))
        | (WitnessPoint::X(t), Some(i), Reduced::Cosine(_) | Reduced::Sine(_)) => (t, i),
        _ => {
            errs.push("witness kind does not match the pipeline".into());
            return;
        }
    };
    let Some(piece) = c.pieces.get(i) else {
        errs.push("witness refers to a missing piece".into());
        return;
    };
    if !piece.interval.contains(t) {
        errs.push("witness lies outside its piece".into());
    }
    if matches!(c.reduced, Reduced::Sine(_)) && t.abs() >= int(1) {
        errs.push("sine witness at X = +-1, where sin x vanishes".into());
    }
    let value = match &c.reduced {
        Reduced::HalfAngle(rf) => rf.eval(t),
        _ => piece.checked.eval(t),
    };
    if value != w.value {
        errs.push("witness value does not re-evaluate".into());
    }
}

/// Validates one piece and returns whether it proves nonnegativity.
fn check_piece(p: &PieceCert) -> Result<bool, String> {
    let iv = &p.interval;
    check_endpoint(&p.checked, iv.lo.as_ref(), &p.lo, false)?;
    check_endpoint(&p.checked, iv.hi.as_ref(), &p.hi, true)?;
    if p.checked.is_zero() {
        if p.squarefree.is_some() || !p.odd_part.is_zero() || !p.chain.is_empty() || p.sample.is_some() {
            return Err("zero polynomial with nontrivial evidence".into());
        }
        if p.interior_roots != 0 {
            return Err("zero polynomial with a root count".into());
        }
        return Ok(true);
    }

    let dec = p.squarefree.as_ref().ok_or("missing square-free decomposition")?;
    let mut product = Poly::constant(dec.unit.clone());
    let mut odd = Poly::one();
    for (idx, (f, k)) in dec.factors.iter().enumerate() {
        if f.degree().unwrap_or(0) == 0 || !f.leading_coeff().is_some_and(|c| *c == int(1)) {
            return Err(format!("factor {idx} is not monic of positive degree"));
        }
        if *k == 0 {
            return Err(format!("factor {idx} has multiplicity zero"));
        }
        if !is_one(&poly_gcd(f, &f.derivative())) {
            return Err(format!("factor {idx} is not square-free"));
        }
        for g in &dec.factors[..idx] {
            if !is_one(&poly_gcd(f, &g.0)) {
                return Err(format!("factor {idx} shares a root with an earlier factor"));
            }
        }
        product = &product * &f.pow(*k);
        if k % 2 == 1 {
            odd = &odd * f;
        }
    }
    if product != p.checked {
        return Err("square-free factors do not multiply back to the polynomial".into());
    }
    if odd != p.odd_part {
        return Err("odd part is not the product of odd-multiplicity factors".into());
    }

    check_chain(&p.chain, &p.odd_part)?;
    let count = interior_count(&p.chain, &p.odd_part, iv);
    if count != p.interior_roots {
        return Err(format!("root count {} should be {count}", p.interior_roots));
    }

    let (s, v) = p.sample.as_ref().ok_or("missing sample point")?;
    if !iv.interior().contains(s) {
        return Err("sample point is not interior".into());
    }
    if p.checked.eval(s) != *v {
        return Err("sample value does not re-evaluate".into());
    }
    if v.is_zero() {
        return Err("sample point is a root".into());
    }
    Ok(count == 0 && p.lo.nonnegative() && p.hi.nonnegative() && v.is_positive())
}

fn is_one(g: &Result<Poly, crate::Error>) -> bool {
    matches!(g, Ok(g) if *g == Poly::one())
}

fn check_endpoint(q: &Poly, at: Option<&Rational>, ev: &EndpointEval, upper: bool) -> Result<(), String> {
    match (at, ev) {
        (Some(a), EndpointEval::Value { at: b, value }) if a == b => {
            if q.eval(a) != *value {
                return Err("endpoint value does not re-evaluate".into());
            }
            Ok(())
        }
        (None, EndpointEval::Limit { sign }) => {
            let expected = limit_sign(q, upper);
            if expected != *sign {
                return Err("sign at infinity is wrong".into());
            }
            Ok(())
        }
        _ => Err("endpoint evaluation does not match the interval".into()),
    }
}

fn limit_sign(q: &Poly, upper: bool) -> i8 {
    let Some(d) = q.degree() else { return 0 };
    let lc = q.leading_coeff().map_or(0, sign_of);
    if !upper && d % 2 == 1 {
        -lc
    } else {
        lc
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// The chain must start with a positive multiple of `odd` and of its
/// derivative, continue with positive multiples of negated remainders, and
/// end in a nonzero constant.
fn check_chain(chain: &[Poly], odd: &Poly) -> Result<(), String> {
    let first = chain.first().ok_or("empty Sturm chain")?;
    if !first.is_positive_multiple_of(odd) {
        return Err("chain does not start with the odd part".into());
    }
    if let Some(second) = chain.get(1) {
        if !second.is_positive_multiple_of(&first.derivative()) {
            return Err("second chain element is not the derivative".into());
        }
    } else if !first.is_constant() {
        return Err("chain is truncated".into());
    }
    for i in 2..chain.len() {
        let r = chain[i - 2].rem(&chain[i - 1]).map_err(|e| format!("{e}"))?;
        if !chain[i].is_positive_multiple_of(&-r) {
            return Err(format!("chain element {i} is not the negated remainder"));
        }
    }
    let last = chain.last().expect("nonempty");
    if last.is_zero() || !last.is_constant() {
        return Err("chain does not end in a nonzero constant".into());
    }
    Ok(())
}

fn variations(chain: &[Poly], at: Option<&Rational>, upper: bool) -> usize {
    let mut prev = 0i8;
    let mut n = 0;
    for p in chain {
        let s = match at {
            Some(a) => sign_of(&p.eval(a)),
            None => limit_sign(p, upper),
        };
        if s != 0 {
            if prev != 0 && s != prev {
                n += 1;
            }
            prev = s;
        }
    }
    n
}

/// Number of distinct roots of `odd` in the open interval.
fn interior_count(chain: &[Poly], odd: &Poly, iv: &TInterval) -> usize {
    let v_lo = variations(chain, iv.lo.as_ref(), false);
    let v_hi = variations(chain, iv.hi.as_ref(), true);
    // V(a) - V(b) counts roots in (a, b]
    let half_open = v_lo.saturating_sub(v_hi);
    let hi_root = iv.hi.as_ref().is_some_and(|h| odd.eval(h).is_zero());
    half_open - usize::from(hi_root)
}
