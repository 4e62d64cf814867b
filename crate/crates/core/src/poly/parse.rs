//! Text grammar shared by every file format and the CLI:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Division by a constant yields rational
//! coefficients; division by a non-constant yields a rational function.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Poly, RatFunc, Rational, VarTable};
use crate::error::{Error, Result};

pub fn parse_expr(text: &str, vars: &Arc<VarTable>) -> Result<RatFunc> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_ratfunc(text: &str, vars: &Arc<VarTable>) -> Result<RatFunc> {
    parse_expr(text, vars)
}

/// Parses a polynomial; a non-constant denominator is a parse error.
pub fn parse_poly(text: &str, vars: &Arc<VarTable>) -> Result<Poly> {
    let r = parse_expr(text, vars)?;
    r.to_poly().ok_or_else(|| Error::Parse { pos: 0, msg: format!("`{text}` is not a polynomial") })
}

/// Identifiers in order of first appearance.
pub fn scan_identifiers(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let id = &text[start..i];
            if !out.iter().any(|s| s == id) {
                out.push(id.to_string());
            }
        } else if b[i].is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
        } else {
            i += 1;
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<VarTable>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "division by zero".into() });
                    }
                    acc = &acc / &d;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                Ok(RatFunc::from_poly(Poly::constant(self.vars, Rational::from(n))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self.vars.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                Ok(RatFunc::from_poly(Poly::var(self.vars, i)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Arc<VarTable> {
        VarTable::coords_and_params(3, &["c", "alpha"])
    }

    #[test]
    fn precedence_and_unary_minus() {
        let a = parse_poly("-u1^2 + 2*u2*u3 - (u1 - 1)", &t()).unwrap();
        let b = parse_poly("1 - u1 - u1*u1 + u3*u2*2", &t()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rational_constants() {
        let a = parse_poly("3/4*u1 + 1/2", &t()).unwrap();
        assert_eq!(a.terms()[0].1, Rational::new(3, 4));
    }

    #[test]
    fn rational_function() {
        let r = parse_ratfunc("(u2^2 + 1)/(2*u1^2)", &t()).unwrap();
        assert!(r.to_poly().is_none());
        assert!(parse_poly("1/u1", &t()).is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("u9", &t()), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_poly("u1 +", &t()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("(u1", &t()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("u1/0", &t()), Err(Error::Parse { .. })));
    }

    #[test]
    fn identifiers_in_order() {
        assert_eq!(scan_identifiers("alpha*u2 + u1_x - 3*alpha"), vec!["alpha", "u2", "u1_x"]);
    }
}
