use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::{Domain, Pipeline};
use crate::error::{Error, Result};
use crate::ratpoly::{int, Rational};
use crate::reduce::{map_x_interval, map_x_interval_cosine, AngleSpec, Rounding, TInterval};

/// One interval of the reduced variable, with the sign that turns the
/// reduced polynomial into one whose sign matches the expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PiecePlan {
    pub interval: TInterval,
    pub sign: i8,
    /// For the `X = cos x` pipelines: whether the piece comes from the upper
    /// half `[0, pi]` of the circle, where `sin x >= 0`.
    pub upper: bool,
}

/// Pieces of the reduced variable covering the domain, and whether an odd
/// multiple of `pi` needs a separate check.
pub(crate) fn plan(pipeline: Pipeline, domain: &Domain, rounding: Rounding) -> Result<(Vec<PiecePlan>, bool)> {
    let (a, b) = match domain {
        Domain::T(iv) => {
            if pipeline != Pipeline::HalfAngle {
                return Err(Error::InvalidInterval(
                    "a T interval needs the half-angle pipeline".into(),
                ));
            }
            let p = PiecePlan {
                interval: iv.clone(),
                sign: 1,
                upper: true,
            };
            return Ok((vec![p], false));
        }
        Domain::Angles { a, b } => (a, b),
    };
    if a.q >= b.q {
        return Err(Error::InvalidInterval(alloc::format!("{a} >= {b}")));
    }
    if pipeline == Pipeline::HalfAngle {
        let img = map_x_interval(a, b, rounding)?;
        let pieces = img
            .pieces
            .into_iter()
            .map(|interval| PiecePlan {
                interval,
                sign: 1,
                upper: true,
            })
            .collect();
        return Ok((pieces, img.includes_pi));
    }

    // Reduce to at most two segments of [0, 2] (in units of pi), then split
    // each at 1: [s, 1] maps by X = cos x directly, [1, e] by reflection
    // x -> 2 pi - x, where sin x <= 0.
    let two = int(2);
    let one = Rational::one();
    let segments: Vec<(Rational, Rational)> = if &b.q - &a.q >= two {
        vec![(int(0), two.clone())]
    } else {
        let k = (&a.q / &two).floor() * &two;
        let s = &a.q - &k;
        let e = &b.q - &k;
        if e <= two {
            vec![(s, e)]
        } else {
            vec![(s, two.clone()), (int(0), e - &two)]
        }
    };
    let lower_sign = if pipeline == Pipeline::Sine { -1 } else { 1 };
    let mut pieces: Vec<PiecePlan> = Vec::new();
    for (s, e) in segments {
        let mut push = |from: Rational, to: Rational, upper: bool| -> Result<()> {
            match map_x_interval_cosine(&AngleSpec::new(from), &AngleSpec::new(to), rounding) {
                Ok(interval) => {
                    let p = PiecePlan {
                        interval,
                        sign: if upper { 1 } else { lower_sign },
                        upper,
                    };
                    if !pieces.iter().any(|q| q.interval == p.interval && q.sign == p.sign) {
                        pieces.push(p);
                    }
                    Ok(())
                }
                // Inward rounding may swallow a sliver entirely.
                Err(_) if rounding == Rounding::Inward => Ok(()),
                Err(e) => Err(e),
            }
        };
        if s < one {
            let to = if e < one { e.clone() } else { one.clone() };
            push(s.clone(), to, true)?;
        }
        if e > one {
            let from = if s > one { s.clone() } else { one.clone() };
            push(&two - &e, &two - from, false)?;
        }
    }
    Ok((pieces, false))
}
