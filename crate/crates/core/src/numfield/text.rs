//! Text form of field elements: `expr := term (('+'|'-') term)*` with
//! `term := rational ('*'? 'x' ('^' uint)?)? | 'x' ('^' uint)?`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldContext, FieldElement};
use super::qpoly::QPoly;
use crate::error::{Error, Result};

pub fn format_element(e: &FieldElement) -> String {
    format_qpoly(&e.to_qpoly())
}

/// Ascending-degree rendering without spaces, `0` for the zero polynomial.
pub fn format_qpoly(p: &QPoly) -> String {
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        if i == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {}", self.pos))
    }

    fn uint(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            BigInt::parse_bytes(&self.s[start..self.pos], 10).expect("digits")
        })
    }

    fn power(&mut self) -> Result<usize> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let e = self.uint().ok_or_else(|| self.err("expected exponent"))?;
        usize::try_from(e).ok().filter(|&e| e <= 4096).ok_or_else(|| self.err("exponent too large"))
    }

    /// A term without its leading sign; returns `(coefficient, degree)`.
    fn term(&mut self) -> Result<(BigRational, usize)> {
        if self.peek() == Some(b'x') {
            self.pos += 1;
            return Ok((BigRational::one(), self.power()?));
        }
        let num = self.uint().ok_or_else(|| self.err("expected a number or 'x'"))?;
        let mut coeff = BigRational::from_integer(num);
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.uint().ok_or_else(|| self.err("expected denominator"))?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            coeff /= BigRational::from_integer(d);
        }
        let star = self.peek() == Some(b'*');
        if star {
            self.pos += 1;
        }
        if self.peek() == Some(b'x') {
            self.pos += 1;
            return Ok((coeff, self.power()?));
        }
        if star {
            return Err(self.err("expected 'x' after '*'"));
        }
        Ok((coeff, 0))
    }
}

/// Parses a polynomial in `x` with rational coefficients (whitespace ignored).
pub fn parse_qpoly(text: &str) -> Result<QPoly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { s: compact.as_bytes(), pos: 0 };
    let mut acc = QPoly::zero();
    let mut first = true;
    while p.pos < p.s.len() {
        let mut neg = false;
        match p.peek() {
            Some(b'+') if !first => p.pos += 1,
            Some(b'-') => {
                neg = true;
                p.pos += 1;
            }
            _ if first => {}
            _ => return Err(p.err("expected '+' or '-'")),
        }
        first = false;
        let (c, k) = p.term()?;
        let c = if neg { -c } else { c };
        acc = &acc + &QPoly::monomial(c, k);
    }
    Ok(acc)
}

pub fn parse_element(ctx: &Arc<FieldContext>, text: &str) -> Result<FieldElement> {
    Ok(FieldElement::from_poly(ctx, &parse_qpoly(text)?))
}
