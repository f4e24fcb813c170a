use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::TrigExpr;
use crate::error::{Error, Result};
use crate::ratpoly::text::{describe, lex, syntax, Tok, Token};
use crate::ratpoly::Rational;

pub const DEFAULT_MAX_FREQUENCY: u32 = 64;

#[derive(Clone, Debug)]
pub struct ParseOptions {
    /// Largest accepted frequency `k` in `sin(k*x)` / `cos(k*x)`; also caps
    /// integer exponents.
    pub max_frequency: u32,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            max_frequency: DEFAULT_MAX_FREQUENCY,
        }
    }
}

pub fn parse(text: &str) -> Result<TrigExpr> {
    parse_with(text, &ParseOptions::default())
}

/// Parses `expr := term (("+"|"-") term)*`, `term := factor (("*"|"/") factor)*`,
/// `factor := base ("^" INT)? | "-" factor`, where a base is a rational
/// literal, the parameter name, `sin(k*x)`, `cos(k*x)` or a parenthesized
/// expression. Divisors must be constant.
pub fn parse_with(text: &str, opts: &ParseOptions) -> Result<TrigExpr> {
    let mut p = Parser {
        toks: lex(text),
        pos: 0,
        param: None,
        max: opts.max_frequency,
    };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(t.offset, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    param: Option<String>,
    max: u32,
}

impl Parser {
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

    fn expr(&mut self) -> Result<TrigExpr> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                terms.push(negate(self.term()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            TrigExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<TrigExpr> {
        let mut factors = vec![self.factor()?];
        loop {
            if self.eat('*') {
                factors.push(self.factor()?);
            } else if self.peek().tok == Tok::Sym('/') {
                let off = self.bump().offset;
                let divisor = self
                    .factor()?
                    .const_value()
                    .ok_or_else(|| syntax(off, "division is only allowed by constants"))?;
                if divisor.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let e = if factors.len() == 1 {
                    factors.pop().expect("one factor")
                } else {
                    TrigExpr::Product(core::mem::take(&mut factors))
                };
                factors.push(match e {
                    TrigExpr::Const(c) => TrigExpr::Const(c / divisor),
                    other => TrigExpr::Div(Box::new(other), divisor),
                });
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            TrigExpr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<TrigExpr> {
        if self.eat('-') {
            return Ok(negate(self.factor()?));
        }
        let base = self.base()?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let Tok::Int(n) = t.tok else {
            return Err(syntax(
                t.offset,
                format!("expected integer exponent, found {}", describe(&t.tok)),
            ));
        };
        let k = u32::try_from(&n)
            .ok()
            .filter(|&k| k <= self.max)
            .ok_or_else(|| syntax(t.offset, format!("exponent exceeds the maximum {}", self.max)))?;
        Ok(match base {
            TrigExpr::Const(c) => TrigExpr::Const(num_traits::pow(c, k as usize)),
            other => TrigExpr::Pow(Box::new(other), k),
        })
    }

    fn base(&mut self) -> Result<TrigExpr> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(TrigExpr::Const(Rational::from_integer(n))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    let t = self.peek();
                    return Err(syntax(
                        t.offset,
                        format!("expected `)`, found {}", describe(&t.tok)),
                    ));
                }
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "sin" | "cos" => {
                    let k = self.trig_argument(t.offset + name.len())?;
                    Ok(if name == "sin" {
                        TrigExpr::Sin(k)
                    } else {
                        TrigExpr::Cos(k)
                    })
                }
                "x" => Err(syntax(
                    t.offset,
                    "bare `x`: the angle may only appear inside sin(k*x) or cos(k*x)",
                )),
                "pi" => Err(syntax(
                    t.offset,
                    "`pi` is not an expression token (angles belong in the interval)",
                )),
                _ if self.peek().tok == Tok::Sym('(') => {
                    Err(syntax(t.offset, format!("unknown function `{name}`")))
                }
                _ => {
                    match &self.param {
                        Some(first) if *first != name => {
                            return Err(Error::MultipleParameters {
                                offset: t.offset,
                                first: first.clone(),
                                second: name,
                            })
                        }
                        Some(_) => {}
                        None => self.param = Some(name.clone()),
                    }
                    Ok(TrigExpr::Param(name))
                }
            },
            other => Err(syntax(t.offset, format!("unexpected {}", describe(&other)))),
        }
    }

    /// Parses `( INT? "*"? "x" )` after `sin` / `cos` and returns the frequency.
    fn trig_argument(&mut self, after_name: usize) -> Result<u32> {
        if !self.eat('(') {
            return Err(syntax(after_name, "expected `(` after sin/cos"));
        }
        let start = self.pos;
        let arg_offset = self.peek().offset;
        let mut k = None;
        if let Tok::Int(n) = self.peek().tok {
            self.bump();
            k = Some(n);
            self.eat('*');
        }
        let ok = self.peek().tok == Tok::Ident("x".into()) && {
            self.bump();
            self.eat(')')
        };
        if !ok {
            self.pos = start;
            self.skip_to_close_paren();
            return Err(Error::UnsupportedArgument { offset: arg_offset });
        }
        let k = match k {
            None => 1,
            Some(n) => {
                if n.is_zero() {
                    return Err(Error::UnsupportedArgument { offset: arg_offset });
                }
                match u32::try_from(&n) {
                    Ok(k) if k <= self.max => k,
                    _ => {
                        return Err(Error::FrequencyTooLarge {
                            offset: arg_offset,
                            k: u64::try_from(&n).unwrap_or(u64::MAX),
                            max: self.max,
                        })
                    }
                }
            }
        };
        Ok(k)
    }

    fn skip_to_close_paren(&mut self) {
        let mut depth = 1usize;
        loop {
            match self.bump().tok {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => {
                    depth -= 1;
                    if depth == 0 {
                        return;
                    }
                }
                Tok::End => return,
                _ => {}
            }
        }
    }
}

fn negate(e: TrigExpr) -> TrigExpr {
    match e {
        TrigExpr::Const(c) => TrigExpr::Const(-c),
        other => TrigExpr::Neg(Box::new(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    #[test]
    fn example1_has_five_summands() {
        let e = parse("3/5 + sin(x) + cos(x) + sin(2*x)/2 + cos(2*x)/2").unwrap();
        let TrigExpr::Sum(terms) = &e else {
            panic!("expected a sum, got {e:?}")
        };
        assert_eq!(terms.len(), 5);
        assert_eq!(terms[0], TrigExpr::Const(rat(3, 5)));
        assert_eq!(terms[1], TrigExpr::Sin(1));
        assert_eq!(terms[3], TrigExpr::Div(Box::new(TrigExpr::Sin(2)), int(2)));
    }

    #[test]
    fn zero_and_constants() {
        assert_eq!(parse("0").unwrap(), TrigExpr::Const(int(0)));
        assert_eq!(parse("-(2)^3").unwrap().const_value(), Some(int(-8)));
        assert_eq!(parse("(23/125)*4").unwrap().const_value(), Some(rat(92, 125)));
    }

    #[test]
    fn example4_sum_parses() {
        let e = parse("sin(x)/3 + sin(2*x)/2 + sin(3*x) + (23/125)*4").unwrap();
        assert_eq!(e.max_frequency(), 3);
        assert!(e.param_name().is_none());
        let v = e.eval_f64(0.4, 0.0);
        let expect = 0.4f64.sin() / 3.0 + 0.8f64.sin() / 2.0 + 1.2f64.sin() + 0.736;
        assert!((v - expect).abs() < 1e-14);
    }

    #[test]
    fn argument_forms() {
        assert_eq!(parse("sin(3x)").unwrap(), TrigExpr::Sin(3));
        assert_eq!(parse("cos( 2 * x )").unwrap(), TrigExpr::Cos(2));
        assert_eq!(parse("sin(x/2)"), Err(Error::UnsupportedArgument { offset: 4 }));
        assert_eq!(parse("1 + cos(0*x)"), Err(Error::UnsupportedArgument { offset: 8 }));
        assert_eq!(parse("sin(x+1)"), Err(Error::UnsupportedArgument { offset: 4 }));
        assert_eq!(parse("sin(2.5*x)"), Err(Error::UnsupportedArgument { offset: 4 }));
        assert!(matches!(parse("cos(65*x)"), Err(Error::FrequencyTooLarge { k: 65, max: 64, .. })));
        let opts = ParseOptions { max_frequency: 100 };
        assert_eq!(parse_with("cos(65*x)", &opts).unwrap(), TrigExpr::Cos(65));
    }

    #[test]
    fn parameters() {
        let e = parse("alpha + sin(x)").unwrap();
        assert_eq!(e.param_name(), Some("alpha"));
        assert_eq!(e.eval_f64(0.0, 2.5), 2.5);
        assert!(matches!(
            parse("a + b*cos(x)"),
            Err(Error::MultipleParameters { offset: 4, .. })
        ));
        assert!(matches!(parse("pi + 1"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse("x + 1"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse("tan(x)"), Err(Error::Syntax { offset: 0, .. })));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse("1 +"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse("(1 + cos(x)"), Err(Error::Syntax { offset: 11, .. })));
        assert!(matches!(parse("cos(x) / sin(x)"), Err(Error::Syntax { offset: 7, .. })));
        assert!(matches!(parse("cos(x) 2"), Err(Error::Syntax { offset: 7, .. })));
        assert_eq!(parse("cos(x)/(1-1)"), Err(Error::DivisionByZero));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let e = parse("-cos(x)^2").unwrap();
        assert!((e.eval_f64(0.3, 0.0) + 0.3f64.cos().powi(2)).abs() < 1e-15);
    }
}
