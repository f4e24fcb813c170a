//! Certified minimization: the least `alpha` with `alpha * c + f(x) >= 0`
//! on an interval, enclosed between two exact rationals whose verdicts are
//! certified (violated below, nonnegative above).
//!
//! At the optimum the half-angle numerator `p(T; alpha)` either touches
//! zero at an interior double root (so the discriminant in `T` vanishes),
//! touches at a finite endpoint, loses degree, or (through the point
//! `x = pi`) has `f(pi) + c alpha = 0`. Those values are collected as
//! candidates to speed up the search; correctness rests only on the
//! monotone feasibility predicate evaluated by [`verify_form`].

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ratpoly::{discriminant_param, int, ParamPoly, Poly, Rational};
use crate::reduce::{denominator_lcm, half_angle_bracket, half_angle_power, map_x_interval, AngleSpec, Rounding, TInterval};
use crate::sturm::{build_chain, isolate_with_chain, refine, IsolatingInterval};
use crate::trigexpr::{coefficient_mass, normalize, MixedForm, TrigExpr};
use crate::verify::{verify_form, Outcome, Verdict};

/// `p(T; alpha) / (d (1+T^2)^m)`, the half-angle image of a parametric form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricNumerator {
    pub poly: ParamPoly,
    pub denom_scalar: BigInt,
    pub denom_power: u32,
}

/// Half-angle substitution applied to both the parameter-free part and the
/// parameter's coefficient, with a common power `m` and the least integer
/// `d` clearing all denominators.
pub fn parametric_numerator(m: &MixedForm) -> Result<ParametricNumerator> {
    let pp = m.param.as_ref().ok_or(Error::NotParametric)?;
    let power = half_angle_power(&m.p1, &m.p2).max(half_angle_power(&pp.p1, &pp.p2));
    let base = half_angle_bracket(&m.p1, &m.p2, power);
    let slope = half_angle_bracket(&pp.p1, &pp.p2, power);
    let all: Vec<Rational> = base.coeffs().iter().chain(slope.coeffs()).cloned().collect();
    let d = denominator_lcm(&all);
    let dr = Rational::from_integer(d.clone());
    Ok(ParametricNumerator {
        poly: ParamPoly::affine(&base.scale(&dr), &slope.scale(&dr)),
        denom_scalar: d,
        denom_power: power,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CandidateKind {
    /// `p(t0; alpha) = 0` at a finite closed endpoint `t0`.
    Endpoint,
    /// The leading `T`-coefficient vanishes.
    LeadingCoefficient,
    /// `f(pi) + c alpha = 0`.
    Pi,
}

impl CandidateKind {
    pub fn name(self) -> &'static str {
        match self {
            CandidateKind::Endpoint => "endpoint",
            CandidateKind::LeadingCoefficient => "leading-coefficient",
            CandidateKind::Pi => "pi",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Candidates {
    /// Isolating intervals of the real roots of the discriminant.
    pub discriminant_roots: Vec<IsolatingInterval>,
    pub exact: Vec<(Rational, CandidateKind)>,
}

/// Candidate values of `alpha` for a parametric numerator on the given
/// `T` intervals. Discriminant roots are refined to width at most `width`.
pub fn candidate_alphas(p: &ParamPoly, pieces: &[TInterval], width: &Rational) -> Result<(Candidates, Option<Poly>)> {
    let deg = p.degree_t().unwrap_or(0);
    if deg < 2 {
        return Err(Error::DegreeTooLow { needed: 2, got: deg });
    }
    let mut out = Candidates::default();
    let disc = discriminant_param(p)?;
    if !disc.is_zero() && !disc.is_constant() {
        let chain = build_chain(&disc)?;
        let coarse = isolate_with_chain(&chain, &TInterval::whole_line(), &int(1));
        out.discriminant_roots = coarse.iter().map(|r| refine(&chain, r, width)).collect();
    }
    for iv in pieces {
        let ends = [(iv.lo.as_ref(), iv.lo_closed), (iv.hi.as_ref(), iv.hi_closed)];
        for (t, closed) in ends {
            if let (Some(t), true) = (t, closed) {
                if let Some(r) = linear_root(&p.at_t(t)) {
                    push_exact(&mut out.exact, r, CandidateKind::Endpoint);
                }
            }
        }
    }
    if let Some(r) = p.leading_coeff().and_then(linear_root) {
        push_exact(&mut out.exact, r, CandidateKind::LeadingCoefficient);
    }
    let disc = (!disc.is_zero()).then_some(disc);
    Ok((out, disc))
}

fn push_exact(v: &mut Vec<(Rational, CandidateKind)>, r: Rational, kind: CandidateKind) {
    if !v.iter().any(|(q, k)| *q == r && *k == kind) {
        v.push((r, kind));
    }
}

/// Root of a polynomial of degree exactly one.
fn linear_root(p: &Poly) -> Option<Rational> {
    (p.degree() == Some(1)).then(|| -p.coeff(0) / p.coeff(1))
}

/// Certified enclosure `[lo, hi]` of the least feasible `alpha`.
#[derive(Clone, Debug)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
    /// Verdict at `lo`: violated (or inconclusive on inexact endpoints).
    pub lo_verdict: Verdict,
    /// Verdict at `hi`: nonnegative.
    pub hi_verdict: Verdict,
    /// The constant `c` multiplying the parameter.
    pub alpha_coeff: Rational,
    pub numerator: ParametricNumerator,
    pub discriminant: Option<Poly>,
    pub candidates: Candidates,
    /// Number of verifications performed.
    pub probes: usize,
}

impl Enclosure {
    /// Enclosure `[-c hi, -c lo]` of `min f`.
    pub fn min_f(&self) -> (Rational, Rational) {
        (-&self.alpha_coeff * &self.hi, -&self.alpha_coeff * &self.lo)
    }
}

pub fn min_alpha(e: &TrigExpr, a: &AngleSpec, b: &AngleSpec, tol: &Rational) -> Result<Enclosure> {
    min_alpha_form(&normalize(e)?, a, b, tol)
}

/// Least `alpha` with `f(x) + c alpha >= 0` on `[a pi, b pi]`, to within `tol`.
///
/// The parameter must enter as `c * alpha` with a positive constant `c`, so
/// that feasibility is monotone in `alpha`. The search starts from the
/// bracket `[-M/c - 1, M/c]`, with `M` the coefficient mass bounding `|f|`,
/// binary-searches the sorted candidates, then bisects.
pub fn min_alpha_form(m: &MixedForm, a: &AngleSpec, b: &AngleSpec, tol: &Rational) -> Result<Enclosure> {
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let pp = m.param.as_ref().ok_or(Error::NotParametric)?;
    let c = match (pp.p1.degree(), pp.p2.is_zero()) {
        (Some(0), true) if pp.p1.coeff(0).is_positive() => pp.p1.coeff(0),
        _ => return Err(Error::BadParameterCoefficient),
    };
    if a.q >= b.q {
        return Err(Error::InvalidInterval(format!("{a} >= {b}")));
    }
    let numerator = parametric_numerator(m)?;
    let image = map_x_interval(a, b, Rounding::Outward)?;
    let width = tol / int(4);
    let (mut candidates, discriminant) = match candidate_alphas(&numerator.poly, &image.pieces, &width) {
        Ok(x) => x,
        Err(Error::DegreeTooLow { .. }) => {
            let mut cands = Candidates::default();
            if let Some(r) = numerator.poly.leading_coeff().and_then(linear_root) {
                cands.exact.push((r, CandidateKind::LeadingCoefficient));
            }
            (cands, None)
        }
        Err(e) => return Err(e),
    };
    if image.includes_pi {
        let q = pp.p1.eval(&-Rational::one());
        push_exact(&mut candidates.exact, -m.value_at_pi() / q, CandidateKind::Pi);
    }

    let mut search = Search {
        form: m,
        a,
        b,
        log: Vec::new(),
    };
    let mass = coefficient_mass(&m.base());
    let mut lo = -(&mass / &c) - int(1);
    let mut hi = &mass / &c;
    let mut lo_v = search.probe(&lo)?;
    let mut hi_v = search.probe(&hi)?;
    if lo_v.outcome == Outcome::Nonnegative || hi_v.outcome != Outcome::Nonnegative {
        return Err(Error::Internal("initial bracket is not infeasible/feasible".into()));
    }

    let mut points: Vec<Rational> = candidates
        .discriminant_roots
        .iter()
        .flat_map(|r| [r.lo.clone(), r.hi.clone()])
        .chain(candidates.exact.iter().map(|(r, _)| r.clone()))
        .filter(|r| *r > lo && *r < hi)
        .collect();
    points.sort();
    points.dedup();
    let exact_points: Vec<Rational> = candidates.exact.iter().map(|(r, _)| r.clone()).collect();

    // binary search over the candidate points
    let (mut i, mut j) = (0usize, points.len());
    while i < j {
        let mid = (i + j) / 2;
        let v = search.probe(&points[mid])?;
        if v.outcome == Outcome::Nonnegative {
            hi = points[mid].clone();
            hi_v = v;
            j = mid;
        } else {
            lo = points[mid].clone();
            lo_v = v;
            i = mid + 1;
        }
    }

    // bisection; an exact candidate at `hi` may be the optimum itself
    while &hi - &lo > *tol {
        let probe = if exact_points.contains(&hi) && &hi - tol / int(2) > lo {
            &hi - tol / int(2)
        } else {
            (&lo + &hi) / int(2)
        };
        let v = search.probe(&probe)?;
        if v.outcome == Outcome::Nonnegative {
            hi = probe;
            hi_v = v;
        } else {
            lo = probe;
            lo_v = v;
        }
    }
    search.assert_monotone()?;
    if lo_v.outcome != Outcome::Violated {
        return Err(Error::UncertifiedLowerBound(alloc::format!("{lo}")));
    }
    Ok(Enclosure {
        lo,
        hi,
        lo_verdict: lo_v,
        hi_verdict: hi_v,
        alpha_coeff: c,
        numerator,
        discriminant,
        candidates,
        probes: search.log.len(),
    })
}

struct Search<'a> {
    form: &'a MixedForm,
    a: &'a AngleSpec,
    b: &'a AngleSpec,
    log: Vec<(Rational, bool)>,
}

impl Search<'_> {
    fn probe(&mut self, alpha: &Rational) -> Result<Verdict> {
        let v = verify_form(&self.form.specialize(alpha), self.a, self.b)?;
        self.log.push((alpha.clone(), v.outcome == Outcome::Nonnegative));
        Ok(v)
    }

    /// Feasibility must never switch off as `alpha` grows.
    fn assert_monotone(&self) -> Result<()> {
        let mut sorted = self.log.clone();
        sorted.sort_by(|x, y| x.0.cmp(&y.0));
        let mut seen_feasible: Option<&Rational> = None;
        for (alpha, feasible) in &sorted {
            match (feasible, seen_feasible) {
                (true, None) => seen_feasible = Some(alpha),
                (false, Some(f)) => {
                    return Err(Error::Internal(format!(
                        "feasibility is not monotone: feasible at {f} but not at {alpha}"
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }
}
