//! JSON encoding of certificates (schema `trigcert-cert-v1`).
//!
//! Rationals are decimal strings `"p"` or `"p/q"`; polynomials are arrays of
//! such strings in ascending powers. Small counts, signs and multiplicities
//! are JSON integers. No floating-point values appear anywhere.

use std::str::FromStr;

use anyhow::{anyhow, bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};

use trigcert_core::ratpoly::SquarefreeDecomposition;
use trigcert_core::reduce::{AngleSpec, RationalForm, Rounding, TInterval};
use trigcert_core::verify::{
    CertWitness, Certificate, Domain, EndpointEval, Outcome, PieceCert, Pipeline, Reduced, WitnessPoint,
    CERT_SCHEMA,
};
use trigcert_core::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertFile {
    pub schema: String,
    pub pipeline: String,
    pub p1: Vec<String>,
    pub p2: Vec<String>,
    pub domain: DomainDto,
    pub rounding: String,
    pub reduced: ReducedDto,
    pub pieces: Vec<PieceDto>,
    pub pi_value: Option<String>,
    pub outcome: String,
    pub witness: Option<WitnessDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DomainDto {
    /// `[a pi, b pi]`, stored as the rational multipliers `a` and `b`.
    Angles { a: String, b: String },
    T { interval: IntervalDto },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalDto {
    /// `null` is `-inf`.
    pub lo: Option<String>,
    /// `null` is `+inf`.
    pub hi: Option<String>,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ReducedDto {
    Cosine { poly: Vec<String> },
    Sine { poly: Vec<String> },
    HalfAngle { numerator: Vec<String>, d: String, m: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDto {
    pub interval: IntervalDto,
    pub sign: i8,
    pub checked: Vec<String>,
    pub squarefree: Option<SquarefreeDto>,
    pub odd_part: Vec<String>,
    pub chain: Vec<Vec<String>>,
    pub interior_roots: usize,
    pub lo: EndpointDto,
    pub hi: EndpointDto,
    pub sample: Option<PointValueDto>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquarefreeDto {
    pub unit: String,
    pub factors: Vec<FactorDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDto {
    pub poly: Vec<String>,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EndpointDto {
    Value { at: String, value: String },
    Limit { limit_sign: i8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointValueDto {
    pub at: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDto {
    pub piece: Option<usize>,
    /// `"T"`, `"X"` or `"pi"`.
    pub kind: String,
    pub at: Option<String>,
    pub value: String,
}

/// Parses `"p"` or `"p/q"` (optional leading `-`, `q > 0`).
pub fn parse_exact(s: &str) -> Result<Rational> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let digits = num.strip_prefix('-').unwrap_or(num);
    ensure!(
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()),
        "`{s}` is not an exact rational"
    );
    ensure!(
        !den.is_empty() && den.bytes().all(|b| b.is_ascii_digit()),
        "`{s}` is not an exact rational"
    );
    ensure!(den.bytes().any(|b| b != b'0'), "`{s}` has a zero denominator");
    Rational::from_str(s).map_err(|_| anyhow!("`{s}` is not an exact rational"))
}

fn poly_out(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn poly_in(v: &[String]) -> Result<Poly> {
    Ok(Poly::from_coeffs(v.iter().map(|s| parse_exact(s)).collect::<Result<_>>()?))
}

fn opt_in(v: &Option<String>) -> Result<Option<Rational>> {
    v.as_deref().map(parse_exact).transpose()
}

pub fn interval_out(iv: &TInterval) -> IntervalDto {
    IntervalDto {
        lo: iv.lo.as_ref().map(ToString::to_string),
        hi: iv.hi.as_ref().map(ToString::to_string),
        lo_closed: iv.lo_closed,
        hi_closed: iv.hi_closed,
        exact: iv.exact,
    }
}

fn interval_in(d: &IntervalDto) -> Result<TInterval> {
    let lo = opt_in(&d.lo)?;
    let hi = opt_in(&d.hi)?;
    if let (Some(l), Some(h)) = (&lo, &hi) {
        ensure!(l < h, "interval [{l}, {h}] is empty");
    }
    ensure!(lo.is_some() || !d.lo_closed, "-inf cannot be a closed endpoint");
    ensure!(hi.is_some() || !d.hi_closed, "+inf cannot be a closed endpoint");
    Ok(TInterval {
        lo,
        hi,
        lo_closed: d.lo_closed,
        hi_closed: d.hi_closed,
        exact: d.exact,
    })
}

fn endpoint_out(e: &EndpointEval) -> EndpointDto {
    match e {
        EndpointEval::Value { at, value } => EndpointDto::Value {
            at: at.to_string(),
            value: value.to_string(),
        },
        EndpointEval::Limit { sign } => EndpointDto::Limit { limit_sign: *sign },
    }
}

fn endpoint_in(e: &EndpointDto) -> Result<EndpointEval> {
    Ok(match e {
        EndpointDto::Value { at, value } => EndpointEval::Value {
            at: parse_exact(at)?,
            value: parse_exact(value)?,
        },
        EndpointDto::Limit { limit_sign } => EndpointEval::Limit { sign: *limit_sign },
    })
}

fn rounding_name(r: Rounding) -> &'static str {
    match r {
        Rounding::Outward => "outward",
        Rounding::Inward => "inward",
    }
}

impl CertFile {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertFile {
            schema: CERT_SCHEMA.to_string(),
            pipeline: c.pipeline.name().to_string(),
            p1: poly_out(&c.p1),
            p2: poly_out(&c.p2),
            domain: match &c.domain {
                Domain::Angles { a, b } => DomainDto::Angles {
                    a: a.q.to_string(),
                    b: b.q.to_string(),
                },
                Domain::T(iv) => DomainDto::T {
                    interval: interval_out(iv),
                },
            },
            rounding: rounding_name(c.rounding).to_string(),
            reduced: match &c.reduced {
                Reduced::Cosine(p) => ReducedDto::Cosine { poly: poly_out(p) },
                Reduced::Sine(p) => ReducedDto::Sine { poly: poly_out(p) },
                Reduced::HalfAngle(rf) => ReducedDto::HalfAngle {
                    numerator: poly_out(&rf.numerator),
                    d: rf.denom_scalar.to_string(),
                    m: rf.denom_power,
                },
            },
            pieces: c.pieces.iter().map(piece_out).collect(),
            pi_value: c.pi_value.as_ref().map(ToString::to_string),
            outcome: c.outcome.name().to_string(),
            witness: c.witness.as_ref().map(|w| {
                let (kind, at) = match &w.point {
                    WitnessPoint::T(t) => ("T", Some(t.to_string())),
                    WitnessPoint::X(x) => ("X", Some(x.to_string())),
                    WitnessPoint::Pi => ("pi", None),
                };
                WitnessDto {
                    piece: w.piece,
                    kind: kind.to_string(),
                    at,
                    value: w.value.to_string(),
                }
            }),
        }
    }

    /// Decodes into a core certificate. Fails only on malformed encodings;
    /// whether the claims hold is decided by `check_certificate`.
    pub fn to_certificate(&self) -> Result<Certificate> {
        ensure!(
            self.schema == CERT_SCHEMA,
            "unsupported schema `{}` (expected `{CERT_SCHEMA}`)",
            self.schema
        );
        let pipeline =
            Pipeline::from_name(&self.pipeline).ok_or_else(|| anyhow!("unknown pipeline `{}`", self.pipeline))?;
        let domain = match &self.domain {
            DomainDto::Angles { a, b } => Domain::Angles {
                a: AngleSpec::new(parse_exact(a)?),
                b: AngleSpec::new(parse_exact(b)?),
            },
            DomainDto::T { interval } => Domain::T(interval_in(interval)?),
        };
        let rounding = match self.rounding.as_str() {
            "outward" => Rounding::Outward,
            "inward" => Rounding::Inward,
            other => bail!("unknown rounding `{other}`"),
        };
        let reduced = match &self.reduced {
            ReducedDto::Cosine { poly } => Reduced::Cosine(poly_in(poly)?),
            ReducedDto::Sine { poly } => Reduced::Sine(poly_in(poly)?),
            ReducedDto::HalfAngle { numerator, d, m } => {
                let d = parse_exact(d)?;
                ensure!(d.is_integer() && d > Rational::from_integer(0.into()), "d must be a positive integer");
                Reduced::HalfAngle(RationalForm {
                    numerator: poly_in(numerator)?,
                    denom_scalar: d.to_integer(),
                    denom_power: *m,
                })
            }
        };
        let pieces = self
            .pieces
            .iter()
            .enumerate()
            .map(|(i, p)| piece_in(p).with_context(|| format!("piece {i}")))
            .collect::<Result<Vec<_>>>()?;
        let witness = match &self.witness {
            None => None,
            Some(w) => {
                let at = opt_in(&w.at)?;
                let point = match (w.kind.as_str(), at) {
                    ("T", Some(t)) => WitnessPoint::T(t),
                    ("X", Some(x)) => WitnessPoint::X(x),
                    ("pi", None) => WitnessPoint::Pi,
                    (k, _) => bail!("malformed witness of kind `{k}`"),
                };
                Some(CertWitness {
                    piece: w.piece,
                    point,
                    value: parse_exact(&w.value)?,
                })
            }
        };
        Ok(Certificate {
            pipeline,
            p1: poly_in(&self.p1)?,
            p2: poly_in(&self.p2)?,
            domain,
            rounding,
            reduced,
            pieces,
            pi_value: opt_in(&self.pi_value)?,
            outcome: Outcome::from_name(&self.outcome).ok_or_else(|| anyhow!("unknown outcome `{}`", self.outcome))?,
            witness,
        })
    }
}

fn piece_out(p: &PieceCert) -> PieceDto {
    PieceDto {
        interval: interval_out(&p.interval),
        sign: p.sign,
        checked: poly_out(&p.checked),
        squarefree: p.squarefree.as_ref().map(|d| SquarefreeDto {
            unit: d.unit.to_string(),
            factors: d
                .factors
                .iter()
                .map(|(f, k)| FactorDto {
                    poly: poly_out(f),
                    multiplicity: *k,
                })
                .collect(),
        }),
        odd_part: poly_out(&p.odd_part),
        chain: p.chain.iter().map(poly_out).collect(),
        interior_roots: p.interior_roots,
        lo: endpoint_out(&p.lo),
        hi: endpoint_out(&p.hi),
        sample: p.sample.as_ref().map(|(at, value)| PointValueDto {
            at: at.to_string(),
            value: value.to_string(),
        }),
        passed: p.passed,
    }
}

fn piece_in(p: &PieceDto) -> Result<PieceCert> {
    ensure!(p.sign == 1 || p.sign == -1, "sign must be 1 or -1");
    let squarefree = match &p.squarefree {
        None => None,
        Some(d) => Some(SquarefreeDecomposition {
            unit: parse_exact(&d.unit)?,
            factors: d
                .factors
                .iter()
                .map(|f| Ok((poly_in(&f.poly)?, f.multiplicity)))
                .collect::<Result<_>>()?,
        }),
    };
    Ok(PieceCert {
        interval: interval_in(&p.interval)?,
        sign: p.sign,
        checked: poly_in(&p.checked)?,
        squarefree,
        odd_part: poly_in(&p.odd_part)?,
        chain: p.chain.iter().map(|c| poly_in(c)).collect::<Result<_>>()?,
        interior_roots: p.interior_roots,
        lo: endpoint_in(&p.lo)?,
        hi: endpoint_in(&p.hi)?,
        sample: match &p.sample {
            None => None,
            Some(s) => Some((parse_exact(&s.at)?, parse_exact(&s.value)?)),
        },
        passed: p.passed,
    })
}

/// Extracts a certificate from a bare certificate document or from a report
/// that embeds one under `"certificate"`.
pub fn certificate_from_json(value: &serde_json::Value) -> Result<Certificate> {
    let doc = match value.get("certificate") {
        Some(inner) if value.get("schema").is_none() => inner,
        _ => value,
    };
    ensure!(!doc.is_null(), "the report carries no certificate (rerun with --cert)");
    let file: CertFile = serde_json::from_value(doc.clone()).context("malformed certificate")?;
    file.to_certificate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_rationals_only() {
        assert_eq!(parse_exact("-3/4").unwrap(), Rational::new((-3).into(), 4.into()));
        assert_eq!(parse_exact("12").unwrap(), Rational::from_integer(12.into()));
        for bad in ["0.5", "1e3", "1/0", "", "-", "+1", "1/-2", "nan", " 1"] {
            assert!(parse_exact(bad).is_err(), "{bad}");
        }
    }
}
