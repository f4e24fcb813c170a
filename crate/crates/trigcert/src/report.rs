//! Report objects (schema `trigcert-v1`), one JSON object per line.

use serde::Serialize;

use trigcert_core::minimize::Enclosure;
use trigcert_core::ratpoly::text::format_param_poly;
use trigcert_core::verify::{Outcome, Verdict, WitnessPoint};
use trigcert_core::{Poly, Rational};

use crate::certfile::CertFile;

pub const REPORT_SCHEMA: &str = "trigcert-v1";

#[derive(Debug, Serialize)]
pub struct Report<R: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input: Input,
    pub result: R,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl<R: Serialize> Report<R> {
    pub fn new(command: &'static str, input: Input, result: R) -> Self {
        Report {
            schema_version: REPORT_SCHEMA,
            command,
            input,
            result,
            certificate: None,
            timings: None,
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Input {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub total_us: u64,
}

#[derive(Debug, Serialize)]
pub struct ReduceResult {
    pub p1: String,
    pub p2: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<ParameterPart>,
    #[serde(flatten)]
    pub reduction: Reduction,
}

#[derive(Debug, Serialize)]
pub struct ParameterPart {
    pub name: String,
    pub q1: String,
    pub q2: String,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Reduction {
    HalfAngle { numerator: String, d: String, m: u32 },
    Cosine { poly: String },
    Sine { poly: String },
}

#[derive(Debug, Serialize)]
pub struct SturmResult {
    pub poly: String,
    pub interval: String,
    pub roots: usize,
}

#[derive(Debug, Serialize)]
pub struct VerifyResult {
    pub outcome: &'static str,
    pub pipeline: &'static str,
    pub pieces: Vec<PieceSummary>,
    pub pi_value: Option<String>,
    pub witness: Option<WitnessSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct PieceSummary {
    pub variable: &'static str,
    pub interval: String,
    pub sign: i8,
    pub checked: String,
    pub interior_roots: usize,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct WitnessSummary {
    pub kind: &'static str,
    pub at: Option<String>,
    pub x_approx: String,
    pub value: String,
}

pub const INCONCLUSIVE_NOTE: &str = "the answer depends on the exact position of an irrational interval endpoint; \
     supply a T interval (e.g. \"T=0,T=1\") to decide it exactly";

impl VerifyResult {
    pub fn from_verdict(v: &Verdict) -> Self {
        let c = &v.certificate;
        let var = match c.pipeline {
            trigcert_core::verify::Pipeline::HalfAngle => "T",
            _ => "X",
        };
        VerifyResult {
            outcome: v.outcome.name(),
            pipeline: c.pipeline.name(),
            pieces: c
                .pieces
                .iter()
                .map(|p| PieceSummary {
                    variable: var,
                    interval: p.interval.to_string(),
                    sign: p.sign,
                    checked: p.checked.display(var).to_string(),
                    interior_roots: p.interior_roots,
                    passed: p.passed,
                })
                .collect(),
            pi_value: c.pi_value.as_ref().map(ToString::to_string),
            witness: v.witness.as_ref().map(|w| {
                let (kind, at) = match &w.point {
                    WitnessPoint::T(t) => ("T", Some(t.to_string())),
                    WitnessPoint::X(x) => ("X", Some(x.to_string())),
                    WitnessPoint::Pi => ("pi", None),
                };
                WitnessSummary {
                    kind,
                    at,
                    x_approx: w.x_approx.clone(),
                    value: w.value.to_string(),
                }
            }),
            note: (v.outcome == Outcome::InconclusiveBoundary).then_some(INCONCLUSIVE_NOTE),
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("outcome: {}\npipeline: {}\n", self.outcome, self.pipeline);
        for p in &self.pieces {
            let sign = if p.sign < 0 { "-" } else { "" };
            s += &format!(
                "piece {} in {}: {}({}), odd-multiplicity roots inside: {}, {}\n",
                p.variable,
                p.interval,
                sign,
                p.checked,
                p.interior_roots,
                if p.passed { "passed" } else { "failed" }
            );
        }
        if let Some(v) = &self.pi_value {
            s += &format!("value at x = pi: {v}\n");
        }
        if let Some(w) = &self.witness {
            let at = w.at.as_ref().map(|a| format!("{} = {a}, ", w.kind)).unwrap_or_default();
            s += &format!("witness: {at}x ~ {}, value {}\n", w.x_approx, w.value);
        }
        if let Some(n) = self.note {
            s += &format!("note: {n}\n");
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct Bounds {
    pub lo: String,
    pub hi: String,
    pub lo_decimal: String,
    pub hi_decimal: String,
}

impl Bounds {
    pub fn new(lo: &Rational, hi: &Rational) -> Self {
        Bounds {
            lo: lo.to_string(),
            hi: hi.to_string(),
            lo_decimal: decimal(lo, 12, false),
            hi_decimal: decimal(hi, 12, true),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MinimizeResult {
    pub parameter: String,
    pub alpha: Bounds,
    pub min_f: Bounds,
    pub alpha_coeff: String,
    pub numerator: String,
    pub d: String,
    pub m: u32,
    pub discriminant: Option<String>,
    pub discriminant_roots: Vec<Bounds>,
    pub exact_candidates: Vec<ExactCandidate>,
    pub lo_outcome: &'static str,
    pub hi_outcome: &'static str,
    pub probes: usize,
}

#[derive(Debug, Serialize)]
pub struct ExactCandidate {
    pub value: String,
    pub kind: &'static str,
}

impl MinimizeResult {
    pub fn from_enclosure(e: &Enclosure, param: &str) -> Self {
        let (flo, fhi) = e.min_f();
        MinimizeResult {
            parameter: param.to_string(),
            alpha: Bounds::new(&e.lo, &e.hi),
            min_f: Bounds::new(&flo, &fhi),
            alpha_coeff: e.alpha_coeff.to_string(),
            numerator: format_param_poly(&e.numerator.poly, "T", param),
            d: e.numerator.denom_scalar.to_string(),
            m: e.numerator.denom_power,
            discriminant: e.discriminant.as_ref().map(|p: &Poly| p.display(param).to_string()),
            discriminant_roots: e
                .candidates
                .discriminant_roots
                .iter()
                .map(|r| Bounds::new(&r.lo, &r.hi))
                .collect(),
            exact_candidates: e
                .candidates
                .exact
                .iter()
                .map(|(v, k)| ExactCandidate {
                    value: v.to_string(),
                    kind: k.name(),
                })
                .collect(),
            lo_outcome: e.lo_verdict.outcome.name(),
            hi_outcome: e.hi_verdict.outcome.name(),
            probes: e.probes,
        }
    }

    pub fn render_text(&self) -> String {
        let p = &self.parameter;
        let mut s = format!(
            "least {p}: [{}, {}]\n  ~ [{}, {}]\nmin f: [{}, {}]\n  ~ [{}, {}]\n",
            self.alpha.lo,
            self.alpha.hi,
            self.alpha.lo_decimal,
            self.alpha.hi_decimal,
            self.min_f.lo,
            self.min_f.hi,
            self.min_f.lo_decimal,
            self.min_f.hi_decimal
        );
        s += &format!("numerator: {}\nd = {}\nm = {}\n", self.numerator, self.d, self.m);
        match &self.discriminant {
            Some(d) => s += &format!("discriminant (primitive): {d}\n"),
            None => s += "discriminant: none\n",
        }
        for r in &self.discriminant_roots {
            s += &format!("  root in [{}, {}]\n", r.lo_decimal, r.hi_decimal);
        }
        for c in &self.exact_candidates {
            s += &format!("candidate {p} = {} ({})\n", c.value, c.kind);
        }
        s += &format!(
            "verdicts: {} at lower bound, {} at upper bound ({} probes)\n",
            self.lo_outcome, self.hi_outcome, self.probes
        );
        s
    }
}

/// Decimal expansion of `r` with `digits` fractional digits, rounded down
/// (or up when `up` is set), so that bounds stay valid.
pub fn decimal(r: &Rational, digits: u32, up: bool) -> String {
    let scale = Rational::from_integer(10.into()).pow(digits as i32);
    let scaled = r * &scale;
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = n < 0.into();
    let mut s = if neg { -n } else { n }.to_string();
    let width = digits as usize + 1;
    if s.len() < width {
        s = "0".repeat(width - s.len()) + &s;
    }
    let (int_part, frac) = s.split_at(s.len() - digits as usize);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}
