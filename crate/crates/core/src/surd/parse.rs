//! Text form of surd cosets.
//!
//! ```text
//! expr     := factor ('*' factor)*
//! factor   := atom ('^' exponent)?
//! atom     := positive integer | '(' expr ')'
//! exponent := rational | '(' rational ')'
//! rational := ['-'] digits ['/' digits]
//! ```
//!
//! `2^3/2 * 3^-1` and `(2^1/2 * 3)^(-2/3)` are both accepted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::coset::{surd_from_rational, SurdCoset};
use crate::error::{Error, Result};

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.text.as_bytes().get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.text.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::syntax(self.text, self.pos, msg)
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.peek();
        let len = self.text.as_bytes()[self.pos..].iter().take_while(|b| b.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.err("expected digits"));
        }
        let value = self.text[self.pos..self.pos + len].parse().expect("ascii digits");
        self.pos += len;
        Ok(value)
    }

    fn expr(&mut self) -> Result<SurdCoset> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SurdCoset> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let r = if self.eat(b'(') {
            let r = self.rational()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            r
        } else {
            self.rational()?
        };
        base.pow(&r).map_err(|_| Error::syntax(self.text, at, "exponent must be nonzero"))
    }

    fn atom(&mut self) -> Result<SurdCoset> {
        if self.eat(b'(') {
            let inner = self.expr()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(inner);
        }
        let at = self.pos;
        let n = self.digits()?;
        if n.is_zero() {
            return Err(Error::syntax(self.text, at, "zero is not a surd"));
        }
        surd_from_rational(&BigRational::from_integer(n), 1)
    }

    fn rational(&mut self) -> Result<BigRational> {
        let negative = self.eat(b'-');
        let num = self.digits()?;
        let den = if self.eat(b'/') {
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(Error::syntax(self.text, at, "zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = BigRational::new(num, den);
        Ok(if negative { -r } else { r })
    }
}

/// Parses a surd product such as `2^3/2 * 3^-1`.
pub fn parse_surd(text: &str) -> Result<SurdCoset> {
    let mut p = Parser { text, pos: 0 };
    let value = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rational;

    #[test]
    fn canonical_round_trip() {
        let x = parse_surd("2^3/2 * 3^-1").unwrap();
        assert_eq!(x.exponent(2), rational(3, 2));
        assert_eq!(x.exponent(3), rational(-1, 1));
        assert_eq!(parse_surd(&x.to_string()).unwrap(), x);
        assert!(parse_surd("1").unwrap().is_identity());
    }

    #[test]
    fn composite_bases_and_operations() {
        let x = parse_surd("12^1/2").unwrap();
        assert_eq!(x.exponent(2), rational(1, 1));
        assert_eq!(x.exponent(3), rational(1, 2));
        let y = parse_surd("(2^1/2 * 3)^(-2/3)").unwrap();
        assert_eq!(y.exponent(2), rational(-1, 3));
        assert_eq!(y.exponent(3), rational(-2, 3));
        assert!(parse_surd("2 * 2^-1").unwrap().is_identity());
    }

    #[test]
    fn errors_name_positions() {
        assert!(matches!(parse_surd("2^"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_surd("0^1/2"), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse_surd("2^1/0"), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_surd("2^0"), Err(Error::Syntax { position: 2, .. })));
        assert!(parse_surd("(2").is_err());
        assert!(parse_surd("2 3").is_err());
        assert!(parse_surd("-2").is_err());
    }
}
