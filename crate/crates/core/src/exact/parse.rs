//! Text forms for integer polynomials.
//!
//! Two inputs are accepted: an expression in `x` such as
//! `"x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"` (terms `[sign][coef][*][x[^exp]]`,
//! whitespace ignored, duplicate exponents summed) or a comma list of
//! coefficients lowest degree first, `"c0,c1,...,cn"`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

pub fn parse_polynomial(text: &str) -> Result<IntPolynomial> {
    if text.trim().is_empty() {
        return Err(Error::syntax(text, 0, "empty polynomial"));
    }
    if text.contains(',') {
        parse_comma_list(text)
    } else {
        parse_expression(text)
    }
}

fn parse_comma_list(text: &str) -> Result<IntPolynomial> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for item in text.split(',') {
        let trimmed = item.trim();
        let pos = offset + item.find(|c: char| !c.is_whitespace()).unwrap_or(0);
        if trimmed.contains(['/', '.']) {
            return Err(Error::NonIntegerCoefficient { input: text.to_string(), position: pos });
        }
        let value: BigInt = trimmed
            .strip_prefix('+')
            .unwrap_or(trimmed)
            .parse()
            .map_err(|_| Error::syntax(text, pos, format!("expected an integer, found {trimmed:?}")))?;
        coeffs.push(value);
        offset += item.len() + 1;
    }
    IntPolynomial::new(coeffs)
}

struct Cursor<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Cursor { text, chars, at: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn position(&self) -> usize {
        self.chars.get(self.at).map_or(self.text.len(), |&(p, _)| p)
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }
}

fn parse_expression(text: &str) -> Result<IntPolynomial> {
    let mut cur = Cursor::new(text);
    let mut terms: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut first = true;
    while cur.peek().is_some() {
        let term_start = cur.position();
        let mut negative = false;
        match cur.peek() {
            Some('+') => cur.bump(),
            Some('-') => {
                negative = true;
                cur.bump();
            }
            _ if !first => return Err(Error::syntax(text, term_start, "expected '+' or '-'")),
            _ => {}
        }
        first = false;

        let coef_pos = cur.position();
        let coef = cur.digits();
        if matches!(cur.peek(), Some('/') | Some('.')) {
            return Err(Error::NonIntegerCoefficient { input: text.to_string(), position: coef_pos });
        }
        if coef.is_some() && cur.peek() == Some('*') {
            cur.bump();
            if cur.peek() != Some('x') {
                return Err(Error::syntax(text, cur.position(), "expected 'x' after '*'"));
            }
        }
        let mut exponent = 0usize;
        if cur.peek() == Some('x') {
            cur.bump();
            exponent = 1;
            if cur.peek() == Some('^') {
                cur.bump();
                let exp_pos = cur.position();
                let digits = cur
                    .digits()
                    .ok_or_else(|| Error::syntax(text, exp_pos, "expected an exponent"))?;
                exponent = digits
                    .parse()
                    .map_err(|_| Error::syntax(text, exp_pos, "exponent too large"))?;
            }
        } else if coef.is_none() {
            return Err(Error::syntax(text, cur.position(), "expected a coefficient or 'x'"));
        }
        let mut value: BigInt = match coef {
            Some(d) => d.parse().expect("digits"),
            None => BigInt::one(),
        };
        if negative {
            value = -value;
        }
        *terms.entry(exponent).or_insert_with(BigInt::zero) += value;
    }
    let degree = terms.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    for (e, c) in terms {
        coeffs[e] = c;
    }
    IntPolynomial::new(coeffs)
}

/// Highest degree first, no spaces: `x^2-2x-4`.
pub fn print_polynomial(f: &IntPolynomial) -> String {
    let mut out = String::new();
    for (e, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if e == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        match e {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{e}")),
        }
    }
    out
}
