//! Exact text forms: polynomial printing and parsing, rational literals, and
//! the small lexer shared with the trigonometric expression parser.
//!
//! Polynomials print in descending powers with explicit `*`, e.g.
//! `T^4 - 18*T^2 + 40*T + 21` or `-3/2*T + 1`.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use super::param::ParamPoly;
use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl Poly {
    /// Formats with the given variable name.
    pub fn display<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.poly.coeffs();
        if coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            f.write_str(self.var)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display("T").fmt(f)
    }
}

/// Formats a parametric polynomial as `(coeff)*T^k + ...`, coefficients
/// printed in the parameter variable.
pub fn format_param_poly(p: &ParamPoly, var: &str, param: &str) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let _ = write!(out, "({})", c.display(param));
        match k {
            0 => {}
            1 => {
                let _ = write!(out, "*{var}");
            }
            _ => {
                let _ = write!(out, "*{var}^{k}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses an exact rational literal: `-3`, `3/5`, `0.125`, `1e-9`, `2.5E3`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal(n.trim())?;
        let d = parse_decimal(d.trim())?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (neg, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let n: BigInt = digits.parse().ok()?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Rational::from_integer(n * Pow::pow(&ten, shift as u32))
    } else {
        Rational::new(n, Pow::pow(&ten, (-shift) as u32))
    };
    Some(if neg { -value } else { value })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    Unknown(char),
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub offset: usize,
}

pub(crate) fn lex(text: &str) -> Vec<Token> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i].parse().expect("ascii digits");
            out.push(Token { tok: Tok::Int(n), offset: start });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_owned()),
                offset: start,
            });
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            let tok = if "+-*/^(),=".contains(ch) {
                Tok::Sym(ch)
            } else {
                Tok::Unknown(ch)
            };
            out.push(Token { tok, offset: i });
            i += ch.len_utf8();
        }
    }
    out.push(Token {
        tok: Tok::End,
        offset: text.len(),
    });
    out
}

pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

pub(crate) fn describe(tok: &Tok) -> String {
    use alloc::format;
    match tok {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) | Tok::Unknown(c) => format!("`{c}`"),
        Tok::End => "end of input".to_owned(),
    }
}

/// Parses a univariate polynomial with rational coefficients, such as
/// `T^4 - 18*T^2 + 40*T + 21` or `(T-1)*(T+2)^2/3`. Any single identifier is
/// accepted as the variable. Returns the polynomial and the variable name,
/// if one appeared.
pub fn parse_poly(text: &str) -> Result<(Poly, Option<String>)> {
    let mut p = PolyParser {
        toks: lex(text),
        pos: 0,
        var: None,
    };
    let poly = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(t.offset, alloc::format!("unexpected {}", describe(&t.tok))));
    }
    Ok((poly, p.var))
}

struct PolyParser {
    toks: Vec<Token>,
    pos: usize,
    var: Option<String>,
}

impl PolyParser {
    fn peek(&self) -> Token {
        self.toks[self.pos].clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.peek();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek().tok == Tok::Sym('/') {
                let off = self.bump().offset;
                let d = self.unary()?;
                if !d.is_constant() {
                    return Err(syntax(off, "division by a non-constant"));
                }
                let c = d.leading_coeff().ok_or(Error::DivisionByZero)?;
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let t = self.bump();
            match t.tok {
                Tok::Int(n) => {
                    let k: u32 = n
                        .try_into()
                        .ok()
                        .filter(|&k: &u32| k <= 1024)
                        .ok_or_else(|| syntax(t.offset, "exponent too large"))?;
                    return Ok(base.pow(k));
                }
                other => {
                    return Err(syntax(
                        t.offset,
                        alloc::format!("expected integer exponent, found {}", describe(&other)),
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(Poly::constant(Rational::from_integer(n))),
            Tok::Ident(name) => {
                match &self.var {
                    Some(v) if *v != name => {
                        return Err(syntax(
                            t.offset,
                            alloc::format!("second variable `{name}` (already using `{v}`)"),
                        ))
                    }
                    Some(_) => {}
                    None => self.var = Some(name),
                }
                Ok(Poly::x())
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    let t = self.peek();
                    return Err(syntax(t.offset, "expected `)`"));
                }
                Ok(inner)
            }
            other => Err(syntax(
                t.offset,
                alloc::format!("unexpected {}", describe(&other)),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};
    use alloc::string::ToString;

    #[test]
    fn prints_descending_with_rationals() {
        assert_eq!(Poly::from_ints(&[21, 40, -18, 0, 1]).to_string(), "T^4 - 18*T^2 + 40*T + 21");
        let p = Poly::from_coeffs(alloc::vec![int(1), rat(-3, 2)]);
        assert_eq!(p.to_string(), "-3/2*T + 1");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::from_ints(&[0, 0, -1]).display("X").to_string(), "-X^2");
    }

    #[test]
    fn parses_paper_style_polynomials() {
        let (p, v) = parse_poly("T^4 - 18*T^2 + 40*T + 21").unwrap();
        assert_eq!(p, Poly::from_ints(&[21, 40, -18, 0, 1]));
        assert_eq!(v.as_deref(), Some("T"));
        let (q, _) = parse_poly("(T-1)*(T-2)*(T+5)").unwrap();
        assert_eq!(q, Poly::from_roots(&[int(1), int(2), int(-5)]));
        let (r, v) = parse_poly("-3/2").unwrap();
        assert_eq!(r, Poly::constant(rat(-3, 2)));
        assert!(v.is_none());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert!(matches!(parse_poly("T + X"), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(parse_poly("T / T"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("T +"), Err(Error::Syntax { offset: 3, .. })));
        assert_eq!(parse_poly("T/0"), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/5"), Some(rat(3, 5)));
        assert_eq!(parse_rational("-2"), Some(int(-2)));
        assert_eq!(parse_rational("1e-9"), Some(rat(1, 1_000_000_000)));
        assert_eq!(parse_rational("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_rational("2.5E3"), Some(int(2500)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("1/0"), None);
    }
}
