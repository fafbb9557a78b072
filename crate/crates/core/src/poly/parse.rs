//! Polynomial literals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, which is how rational
//! coefficients such as `3/2*x` are written.

use num_bigint::BigInt;
use num_traits::Zero;

use super::polynomial::Polynomial;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'e' || bytes[i] == b'E') {
                return Err(err(i, "only integer and rational coefficients are accepted"));
            }
            let n: BigInt = src[start..i].parse().expect("digits parse as an integer");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(err(i, &format!("unexpected character `{}`", src[i..].chars().next().unwrap())));
        }
    }
    Ok(out)
}

fn err(pos: usize, msg: &str) -> Error {
    Error::Parse { pos, msg: msg.to_string() }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
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

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.offset();
                self.pos += 1;
                let d = self.unary()?;
                if !d.is_constant() {
                    return Err(err(at, "division by a non-constant polynomial"));
                }
                let c = d.constant_term();
                if c.is_zero() {
                    return Err(err(at, "division by zero"));
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().map_err(|_| err(at, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(err(at, "exponent must be a non-negative integer literal")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.n(), Rational::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var(self.n(), i)),
                    None => Err(err(at, &format!("unknown variable `{name}`"))),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => Err(err(at, &format!("unexpected `{c}`"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

pub fn parse_polynomial(src: &str, vars: &[String]) -> Result<Polynomial> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(err(0, "empty polynomial literal"));
    }
    let mut p = Parser { toks, pos: 0, vars, end: src.len() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.offset(), "trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, Ring};

    fn ring() -> std::sync::Arc<Ring> {
        Ring::polynomial(&["x", "y"]).unwrap()
    }

    #[test]
    fn parses_and_canonicalizes() {
        let r = ring();
        let p = r.parse("(x + y)^2 - 2*x*y").unwrap();
        assert_eq!(r.format(&p), "x^2 + y^2");
        let q = r.parse("y^2 + x^2").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rational_coefficients() {
        let r = ring();
        let p = r.parse("3/2*x - 1/3").unwrap();
        assert_eq!(r.format(&p), "3/2*x - 1/3");
        assert_eq!(r.parse("x/2").unwrap(), r.parse("1/2*x").unwrap());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let r = ring();
        assert_eq!(r.format(&r.parse("-x^2").unwrap()), "-x^2");
        assert_eq!(r.format(&r.parse("(-x)^2").unwrap()), "x^2");
        assert_eq!(r.format(&r.parse("x - -y").unwrap()), "x + y");
    }

    #[test]
    fn rejects_bad_input() {
        let r = ring();
        for bad in ["x +", "z", "0.5*x", "x/y", "x/0", "x^y", "x^-1", "(x", "x)", "", "x $ y", "2x"] {
            assert!(r.parse(bad).is_err(), "accepted `{bad}`");
        }
        match r.parse("x + z") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn render_then_parse_is_identity() {
        let r = Ring::new(vec!["a".into(), "b".into(), "c".into()], vec![], MonomialOrder::Lex).unwrap();
        let p = r.parse("-7/3*a^3*b + a*c^2 - 5 + 1/11*b^4").unwrap();
        let back = r.parse(&r.format(&p)).unwrap();
        assert_eq!(p, back);
    }
}
