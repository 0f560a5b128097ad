//! Text form of quadratic elements: rationals, `√N` or `sqrt(N)`, `+ - * /`,
//! parentheses and juxtaposition such as `2√5`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::QuadElement;
use crate::error::{Error, Result};

/// Square part and squarefree part, `n = s² · d`.
fn split_square(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    (s, d * rest)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    disc: u64,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn err(&self, msg: &str) -> Error {
        Error::syntax(self.text, self.pos, msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected digits"));
        }
        let value = self.rest()[..len].parse().expect("ascii digits");
        self.pos += len;
        Ok(value)
    }

    fn rational(&self, r: BigRational) -> QuadElement {
        QuadElement::from_rational(r, self.disc).expect("field checked up front")
    }

    fn expr(&mut self) -> Result<QuadElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QuadElement> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                acc = acc.div(&rhs).map_err(|_| Error::syntax(self.text, at, "division by zero"))?;
            } else if matches!(self.peek(), Some('√') | Some('s') | Some('(')) {
                acc = acc.mul(&self.atom()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QuadElement> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<QuadElement> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some('√') => {
                self.pos += '√'.len_utf8();
                let n = self.radicand()?;
                self.surd(n)
            }
            Some('s') if self.rest().starts_with("sqrt") => {
                self.pos += 4;
                if !self.eat('(') {
                    return Err(self.err("expected '(' after sqrt"));
                }
                let n = self.radicand()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                self.surd(n)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                Ok(self.rational(BigRational::from_integer(n)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn radicand(&mut self) -> Result<u64> {
        let at = self.pos;
        let n = self.digits()?;
        u64::try_from(&n).map_err(|_| Error::syntax(self.text, at, "radicand too large"))
    }

    fn surd(&self, n: u64) -> Result<QuadElement> {
        let (s, d) = split_square(n);
        let s = BigRational::from_integer(BigInt::from(s));
        if d == 1 {
            return Ok(self.rational(s));
        }
        // the field was fixed by the pre-scan, so any other squarefree part is foreign
        if d != self.disc {
            return Err(self.err(&format!("√{n} does not lie in ℚ(√{})", self.disc)));
        }
        QuadElement::new(BigRational::zero(), s, d)
    }
}

/// Squarefree parts `> 1` of every radicand, in order of appearance.
fn scan_fields(text: &str) -> Vec<u64> {
    let mut found = Vec::new();
    let mut rest = text;
    while let Some(i) = rest.find(['√', 's']) {
        let after = &rest[i..];
        let tail = if let Some(t) = after.strip_prefix('√') {
            t
        } else if let Some(t) = after.strip_prefix("sqrt(") {
            t
        } else {
            rest = &after[1..];
            continue;
        };
        let tail = tail.trim_start();
        let len = tail.bytes().take_while(u8::is_ascii_digit).count();
        if let Ok(n) = tail[..len].parse::<u64>() {
            let (_, d) = split_square(n);
            if d > 1 {
                found.push(d);
            }
        }
        rest = &tail[len..];
    }
    found
}

/// Parses an element of `ℚ(√D)`. The field comes from the radicands in
/// the text; `disc` is required when the text is rational and must agree
/// with the radicands otherwise.
pub fn parse_quad(text: &str, disc: Option<u64>) -> Result<QuadElement> {
    let fields = scan_fields(text);
    let disc = match (fields.first(), disc) {
        (Some(&d), Some(given)) if d != given => {
            return Err(Error::InvalidArgument(format!("{text:?} lies in ℚ(√{d}), not ℚ(√{given})")));
        }
        (Some(&d), _) => d,
        (None, Some(given)) => given,
        (None, None) => {
            return Err(Error::InvalidArgument(format!("{text:?} names no quadratic field")));
        }
    };
    QuadElement::from_rational(BigRational::one(), disc)?;
    let mut parser = Parser { text, pos: 0, disc };
    let value = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.err("trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(u: i64, v: i64, w: i64, d: u64) -> QuadElement {
        QuadElement::from_ints(u, v, w, d).unwrap()
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_quad("1+√5", None).unwrap(), q(1, 1, 1, 5));
        assert_eq!(parse_quad("(1+√5)/2", None).unwrap(), q(1, 1, 2, 5));
        assert_eq!(parse_quad("-√5", None).unwrap(), q(0, -1, 1, 5));
        assert_eq!(parse_quad("1/2 + 3/2*sqrt(5)", None).unwrap(), q(1, 3, 2, 5));
        assert_eq!(parse_quad("2√5", None).unwrap(), q(0, 2, 1, 5));
        assert_eq!(parse_quad("√20", None).unwrap(), q(0, 2, 1, 5));
        assert_eq!(parse_quad("3 - √8", None).unwrap(), q(3, -2, 1, 2));
        assert_eq!(parse_quad("1/(1+√2)", None).unwrap(), q(-1, 1, 1, 2));
        assert_eq!(parse_quad("4/6", Some(5)).unwrap(), q(2, 0, 3, 5));
        assert_eq!(parse_quad("√4", Some(3)).unwrap(), q(2, 0, 1, 3));
    }

    #[test]
    fn rejected_forms() {
        assert!(parse_quad("3", None).is_err());
        assert!(parse_quad("√2+√3", None).is_err());
        assert!(parse_quad("1+√5", Some(2)).is_err());
        assert!(matches!(parse_quad("1+", Some(5)), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_quad("1/0", Some(5)), Err(Error::Syntax { position: 1, .. })));
        assert!(matches!(parse_quad("(1+√5", None), Err(Error::Syntax { .. })));
        assert!(parse_quad("1+√5 x", None).is_err());
    }

    #[test]
    fn squares() {
        assert_eq!(split_square(72), (6, 2));
        assert_eq!(split_square(5), (1, 5));
        assert_eq!(split_square(1), (1, 1));
    }
}
