use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::TrigExpr;
use crate::error::{Error, Result};
use crate::ratpoly::{chebyshev_first, chebyshev_second, Poly, Rational};

/// `P1(cos x) + sin(x) P2(cos x)`, optionally plus `param * (Q1(cos x) + sin(x) Q2(cos x))`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MixedForm {
    pub p1: Poly,
    pub p2: Poly,
    pub param: Option<ParamPart>,
}

/// Coefficient of the parameter, in the same mixed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPart {
    pub name: String,
    pub p1: Poly,
    pub p2: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    PureCosine,
    PureSine,
    General,
}

impl MixedForm {
    pub fn new(p1: Poly, p2: Poly) -> Self {
        MixedForm { p1, p2, param: None }
    }

    pub fn is_zero(&self) -> bool {
        self.p1.is_zero() && self.p2.is_zero() && self.param.is_none()
    }

    pub fn param_name(&self) -> Option<&str> {
        self.param.as_ref().map(|p| p.name.as_str())
    }

    /// The parameter-free part `P1 + sin P2`.
    pub fn base(&self) -> MixedForm {
        MixedForm::new(self.p1.clone(), self.p2.clone())
    }

    /// Substitutes a value for the parameter.
    pub fn specialize(&self, value: &Rational) -> MixedForm {
        match &self.param {
            None => self.clone(),
            Some(pp) => MixedForm::new(
                &self.p1 + &pp.p1.scale(value),
                &self.p2 + &pp.p2.scale(value),
            ),
        }
    }

    pub fn eval_f64(&self, x: f64, param: f64) -> f64 {
        let (c, s) = (libm::cos(x), libm::sin(x));
        let base = self.p1.eval_f64(c) + s * self.p2.eval_f64(c);
        match &self.param {
            None => base,
            Some(pp) => base + param * (pp.p1.eval_f64(c) + s * pp.p2.eval_f64(c)),
        }
    }

    /// Exact value of the parameter-free part at `x = pi`: `P1(-1)`.
    pub fn value_at_pi(&self) -> Rational {
        self.p1.eval(&Rational::from_integer((-1).into()))
    }

    /// Exact sum of two parameter-free forms.
    pub fn add(&self, other: &MixedForm) -> MixedForm {
        MixedForm::new(&self.p1 + &other.p1, &self.p2 + &other.p2)
    }
}

/// `P1(cos x) + sin(x) P2(cos x)` per power of the parameter.
#[derive(Clone, Debug)]
struct Expansion {
    a: Vec<Poly>,
    b: Vec<Poly>,
}

impl Expansion {
    fn new(a: Vec<Poly>, b: Vec<Poly>) -> Self {
        let mut e = Expansion { a, b };
        e.trim();
        e
    }

    fn trim(&mut self) {
        let n = self.a.len().max(self.b.len());
        self.a.resize(n, Poly::zero());
        self.b.resize(n, Poly::zero());
        while self.a.last().is_some_and(Poly::is_zero) && self.b.last().is_some_and(Poly::is_zero) {
            self.a.pop();
            self.b.pop();
        }
    }

    fn constant(c: Rational) -> Self {
        Expansion::new(vec![Poly::constant(c)], vec![Poly::zero()])
    }

    fn param() -> Self {
        Expansion::new(vec![Poly::zero(), Poly::one()], vec![Poly::zero(), Poly::zero()])
    }

    fn get(v: &[Poly], i: usize) -> Poly {
        v.get(i).cloned().unwrap_or_default()
    }

    fn add(&self, o: &Expansion) -> Expansion {
        let n = self.a.len().max(o.a.len());
        Expansion::new(
            (0..n).map(|i| &Self::get(&self.a, i) + &Self::get(&o.a, i)).collect(),
            (0..n).map(|i| &Self::get(&self.b, i) + &Self::get(&o.b, i)).collect(),
        )
    }

    fn scale(&self, c: &Rational) -> Expansion {
        Expansion::new(
            self.a.iter().map(|p| p.scale(c)).collect(),
            self.b.iter().map(|p| p.scale(c)).collect(),
        )
    }

    /// `(A1 + s B1)(A2 + s B2) = A1 A2 + (1 - c^2) B1 B2 + s (A1 B2 + B1 A2)`.
    fn mul(&self, o: &Expansion) -> Expansion {
        if self.a.is_empty() || o.a.is_empty() {
            return Expansion::new(Vec::new(), Vec::new());
        }
        let n = self.a.len() + o.a.len() - 1;
        let one_minus_c2 = Poly::from_ints(&[1, 0, -1]);
        let mut a = vec![Poly::zero(); n];
        let mut b = vec![Poly::zero(); n];
        for i in 0..self.a.len() {
            for j in 0..o.a.len() {
                let bb = &self.b[i] * &o.b[j];
                a[i + j] = &(&a[i + j] + &(&self.a[i] * &o.a[j])) + &(&one_minus_c2 * &bb);
                b[i + j] = &(&b[i + j] + &(&self.a[i] * &o.b[j])) + &(&self.b[i] * &o.a[j]);
            }
        }
        Expansion::new(a, b)
    }

    fn pow(&self, k: u32) -> Expansion {
        (0..k).fold(Expansion::constant(Rational::from_integer(1.into())), |acc, _| acc.mul(self))
    }
}

fn expand(e: &TrigExpr) -> Expansion {
    match e {
        TrigExpr::Const(c) => Expansion::constant(c.clone()),
        TrigExpr::Param(_) => Expansion::param(),
        TrigExpr::Cos(k) => Expansion::new(vec![chebyshev_first(*k)], vec![Poly::zero()]),
        TrigExpr::Sin(k) => Expansion::new(vec![Poly::zero()], vec![chebyshev_second(k - 1)]),
        TrigExpr::Sum(ts) => ts
            .iter()
            .fold(Expansion::new(Vec::new(), Vec::new()), |acc, t| acc.add(&expand(t))),
        TrigExpr::Product(fs) => fs
            .iter()
            .fold(Expansion::constant(Rational::from_integer(1.into())), |acc, f| {
                acc.mul(&expand(f))
            }),
        TrigExpr::Pow(b, k) => expand(b).pow(*k),
        TrigExpr::Neg(inner) => expand(inner).scale(&Rational::from_integer((-1).into())),
        TrigExpr::Div(inner, d) => expand(inner).scale(&d.recip()),
    }
}

/// Exact rewrite into `P1(X) + sin(x) P2(X)`, `X = cos x`.
///
/// Atoms expand through `cos(kx) = T_k(c)` and `sin(kx) = s U_{k-1}(c)` in
/// commuting symbols `s = sin x`, `c = cos x`; products reduce `s^2` to
/// `1 - c^2` as they are formed, so `s` never appears beyond degree one.
/// A parameter may appear at most linearly after expansion.
pub fn normalize(e: &TrigExpr) -> Result<MixedForm> {
    let ex = expand(e);
    if ex.a.len() > 2 {
        return Err(Error::NonlinearParameter);
    }
    let mut form = MixedForm::new(Expansion::get(&ex.a, 0), Expansion::get(&ex.b, 0));
    if ex.a.len() == 2 {
        form.param = Some(ParamPart {
            name: e.param_name().unwrap_or("alpha").to_string(),
            p1: ex.a[1].clone(),
            p2: ex.b[1].clone(),
        });
    }
    Ok(form)
}

/// Pure cosine iff there is no `sin(x)` part; pure sine iff only the `sin(x)`
/// part is present. The zero expression counts as pure cosine.
pub fn classify(m: &MixedForm) -> Classification {
    let (q1, q2) = match &m.param {
        Some(pp) => (pp.p1.is_zero(), pp.p2.is_zero()),
        None => (true, true),
    };
    let p1_zero = m.p1.is_zero() && q1;
    let p2_zero = m.p2.is_zero() && q2;
    if p2_zero {
        Classification::PureCosine
    } else if p1_zero {
        Classification::PureSine
    } else {
        Classification::General
    }
}

/// Sum of absolute coefficients of `P1` and `P2`; bounds `|f(x)|` for every `x`.
pub fn coefficient_mass(m: &MixedForm) -> Rational {
    m.p1
        .coeffs()
        .iter()
        .chain(m.p2.coeffs())
        .fold(Rational::from_integer(0.into()), |acc, c| {
            acc + num_traits::Signed::abs(c)
        })
}
