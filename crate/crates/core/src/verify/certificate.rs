use alloc::vec::Vec;

use num_traits::Signed;

use crate::ratpoly::{Poly, Rational, SquarefreeDecomposition};
use crate::reduce::{AngleSpec, RationalForm, Rounding, TInterval};

pub const CERT_SCHEMA: &str = "trigcert-cert-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pipeline {
    /// `f(x) = P(cos x)`.
    Cosine,
    /// `f(x) = sin(x) P(cos x)`.
    Sine,
    /// `T = tan(x/2)`.
    HalfAngle,
}

impl Pipeline {
    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Cosine => "cosine",
            Pipeline::Sine => "sine",
            Pipeline::HalfAngle => "half-angle",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Pipeline::Cosine, Pipeline::Sine, Pipeline::HalfAngle]
            .into_iter()
            .find(|p| p.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Nonnegative,
    Violated,
    /// Nonnegativity holds on the inward-rounded interval but fails on the
    /// outward-rounded one, so the answer hinges on irrational endpoints.
    InconclusiveBoundary,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Nonnegative => "nonnegative",
            Outcome::Violated => "violated",
            Outcome::InconclusiveBoundary => "inconclusive-boundary",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Outcome::Nonnegative, Outcome::Violated, Outcome::InconclusiveBoundary]
            .into_iter()
            .find(|p| p.name() == s)
    }
}

/// The set being checked: an angle range `[a pi, b pi]` or, for the
/// half-angle pipeline only, a raw `T` interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Angles { a: AngleSpec, b: AngleSpec },
    T(TInterval),
}

/// The reduced polynomial of each pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    Cosine(Poly),
    Sine(Poly),
    HalfAngle(RationalForm),
}

impl Reduced {
    /// The polynomial whose sign is analyzed (the numerator for half-angle).
    pub fn poly(&self) -> &Poly {
        match self {
            Reduced::Cosine(p) | Reduced::Sine(p) => p,
            Reduced::HalfAngle(rf) => &rf.numerator,
        }
    }

    pub fn pipeline(&self) -> Pipeline {
        match self {
            Reduced::Cosine(_) => Pipeline::Cosine,
            Reduced::Sine(_) => Pipeline::Sine,
            Reduced::HalfAngle(_) => Pipeline::HalfAngle,
        }
    }

    pub(crate) fn point(&self, t: Rational) -> WitnessPoint {
        match self {
            Reduced::HalfAngle(_) => WitnessPoint::T(t),
            _ => WitnessPoint::X(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndpointEval {
    /// Exact value at a finite endpoint.
    Value { at: Rational, value: Rational },
    /// Sign of the polynomial towards an infinite endpoint.
    Limit { sign: i8 },
}

impl EndpointEval {
    pub fn nonnegative(&self) -> bool {
        match self {
            EndpointEval::Value { value, .. } => !value.is_negative(),
            EndpointEval::Limit { sign } => *sign >= 0,
        }
    }
}

/// Evidence for one interval of the reduced variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceCert {
    pub interval: TInterval,
    /// `checked = sign * reduced`.
    pub sign: i8,
    pub checked: Poly,
    /// `None` iff `checked` is zero.
    pub squarefree: Option<SquarefreeDecomposition>,
    pub odd_part: Poly,
    /// Sturm chain of the odd part (empty iff `checked` is zero).
    pub chain: Vec<Poly>,
    /// Roots of the odd part in the open interval.
    pub interior_roots: usize,
    pub lo: EndpointEval,
    pub hi: EndpointEval,
    /// An interior non-root of `checked` and the value there.
    pub sample: Option<(Rational, Rational)>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessPoint {
    T(Rational),
    X(Rational),
    /// An odd multiple of `pi` (half-angle pipeline only).
    Pi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertWitness {
    /// Index of the piece containing the point (`None` for `Pi`).
    pub piece: Option<usize>,
    pub point: WitnessPoint,
    pub value: Rational,
}

/// Everything needed to re-check a verdict with exact arithmetic only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub pipeline: Pipeline,
    pub p1: Poly,
    pub p2: Poly,
    pub domain: Domain,
    pub rounding: Rounding,
    pub reduced: Reduced,
    pub pieces: Vec<PieceCert>,
    /// `f(pi)` when an odd multiple of `pi` lies in the domain of a
    /// half-angle check.
    pub pi_value: Option<Rational>,
    pub outcome: Outcome,
    pub witness: Option<CertWitness>,
}
