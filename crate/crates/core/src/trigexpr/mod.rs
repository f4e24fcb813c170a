//! Trigonometric polynomial expressions: parsing and exact normalization to
//! the mixed form `P1(X) + sin(x) P2(X)` with `X = cos x`.

mod normalize;
mod parse;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ratpoly::{rational_to_f64, Rational};

pub use normalize::{classify, coefficient_mass, normalize, Classification, MixedForm, ParamPart};
pub use parse::{parse, parse_with, ParseOptions, DEFAULT_MAX_FREQUENCY};

/// Expression tree over a single angle variable `x` and at most one named
/// parameter. Trig atoms carry a positive integer frequency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrigExpr {
    Const(Rational),
    Param(String),
    Cos(u32),
    Sin(u32),
    Sum(Vec<TrigExpr>),
    Product(Vec<TrigExpr>),
    Pow(Box<TrigExpr>, u32),
    Neg(Box<TrigExpr>),
    /// Division by a nonzero rational constant.
    Div(Box<TrigExpr>, Rational),
}

impl TrigExpr {
    /// Floating evaluation at angle `x` with the parameter set to `param`.
    pub fn eval_f64(&self, x: f64, param: f64) -> f64 {
        match self {
            TrigExpr::Const(c) => rational_to_f64(c),
            TrigExpr::Param(_) => param,
            TrigExpr::Cos(k) => libm::cos(*k as f64 * x),
            TrigExpr::Sin(k) => libm::sin(*k as f64 * x),
            TrigExpr::Sum(ts) => ts.iter().map(|t| t.eval_f64(x, param)).sum(),
            TrigExpr::Product(fs) => fs.iter().map(|t| t.eval_f64(x, param)).product(),
            TrigExpr::Pow(b, k) => libm::pow(b.eval_f64(x, param), *k as f64),
            TrigExpr::Neg(e) => -e.eval_f64(x, param),
            TrigExpr::Div(e, d) => e.eval_f64(x, param) / rational_to_f64(d),
        }
    }

    /// Exact value when the expression involves neither trig atoms nor the parameter.
    pub fn const_value(&self) -> Option<Rational> {
        Some(match self {
            TrigExpr::Const(c) => c.clone(),
            TrigExpr::Param(_) | TrigExpr::Cos(_) | TrigExpr::Sin(_) => return None,
            TrigExpr::Sum(ts) => {
                let mut acc = Rational::from_integer(0.into());
                for t in ts {
                    acc += t.const_value()?;
                }
                acc
            }
            TrigExpr::Product(fs) => {
                let mut acc = Rational::from_integer(1.into());
                for f in fs {
                    acc *= f.const_value()?;
                }
                acc
            }
            TrigExpr::Pow(b, k) => num_traits::pow(b.const_value()?, *k as usize),
            TrigExpr::Neg(e) => -e.const_value()?,
            TrigExpr::Div(e, d) => e.const_value()? / d,
        })
    }

    /// Name of the parameter, if the expression mentions one.
    pub fn param_name(&self) -> Option<&str> {
        match self {
            TrigExpr::Param(name) => Some(name),
            TrigExpr::Const(_) | TrigExpr::Cos(_) | TrigExpr::Sin(_) => None,
            TrigExpr::Sum(ts) | TrigExpr::Product(ts) => ts.iter().find_map(TrigExpr::param_name),
            TrigExpr::Pow(e, _) | TrigExpr::Neg(e) | TrigExpr::Div(e, _) => e.param_name(),
        }
    }

    /// Largest trig frequency appearing anywhere (0 if none).
    pub fn max_frequency(&self) -> u32 {
        match self {
            TrigExpr::Const(_) | TrigExpr::Param(_) => 0,
            TrigExpr::Cos(k) | TrigExpr::Sin(k) => *k,
            TrigExpr::Sum(ts) | TrigExpr::Product(ts) => {
                ts.iter().map(TrigExpr::max_frequency).max().unwrap_or(0)
            }
            TrigExpr::Pow(e, _) | TrigExpr::Neg(e) | TrigExpr::Div(e, _) => e.max_frequency(),
        }
    }
}
