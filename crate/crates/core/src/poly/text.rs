//! Textual form of polynomials: `x12*y21 - x21*y12`, `3*x1^2*y3`.
//!
//! Parsing is whitespace-tolerant and accepts arbitrary integer
//! coefficients (reduced mod p, negatives allowed). Printing is canonical:
//! descending term order, coefficients as small signed representatives,
//! unit coefficients omitted.

use std::fmt::Write as _;

use thiserror::Error;

use super::monomial::Monomial;
use super::polynomial::{PolyRing, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {col}: {message}")]
pub struct PolyParseError {
    /// 1-based character position in the input.
    pub col: usize,
    pub message: String,
}

pub fn polynomial_to_string(ring: &PolyRing, f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let field = ring.field();
    let mut out = String::new();
    for (i, t) in f.terms().iter().enumerate() {
        let signed = field.signed(t.coeff);
        let mag = signed.unsigned_abs();
        if i == 0 {
            if signed < 0 {
                out.push('-');
            }
        } else if signed < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let has_vars = !t.monomial.is_one();
        if mag != 1 || !has_vars {
            let _ = write!(out, "{mag}");
            if has_vars {
                out.push('*');
            }
        }
        if has_vars {
            let mut first = true;
            for (v, &e) in t.monomial.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    out.push('*');
                }
                first = false;
                out.push_str(&ring.vars()[v]);
                if e > 1 {
                    let _ = write!(out, "^{e}");
                }
            }
        }
    }
    out
}

struct Scanner<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a PolyRing,
}

impl<'a> Scanner<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            col: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn integer(&mut self) -> Result<u64, PolyParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<u64>()
            .map_err(|_| PolyParseError {
                col: start + 1,
                message: format!("integer `{text}` out of range"),
            })
    }

    fn identifier(&mut self) -> Result<String, PolyParseError> {
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_') {
            return self.err("expected a variable name");
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    /// One term: optional coefficient, then `*`-separated variable powers.
    fn term(&mut self) -> Result<(u64, Monomial), PolyParseError> {
        let field = self.ring.field();
        let mut coeff = 1u64;
        let mut saw_coeff = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = field.from_u64(self.integer()?);
            saw_coeff = true;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
            } else {
                // A bare integer is a constant term.
                return Ok((coeff, Monomial::one(self.ring.nvars())));
            }
        }
        let mut mono = Monomial::one(self.ring.nvars());
        loop {
            let start = self.pos;
            let name = self.identifier()?;
            let Some(var) = self.ring.var_index(&name) else {
                return Err(PolyParseError {
                    col: start + 1,
                    message: format!("unknown variable `{name}`"),
                });
            };
            let mut power = 1u64;
            self.skip_ws();
            if self.peek() == Some('^') {
                self.bump();
                self.skip_ws();
                power = self.integer()?;
            }
            let mut step = vec![0u32; self.ring.nvars()];
            step[var] = u32::try_from(power).map_err(|_| PolyParseError {
                col: start + 1,
                message: format!("exponent {power} out of range"),
            })?;
            mono = mono.mul(&Monomial::from_exps(step));
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
            } else {
                break;
            }
        }
        let _ = saw_coeff;
        Ok((coeff, mono))
    }
}

pub fn parse_polynomial(ring: &PolyRing, input: &str) -> Result<Polynomial, PolyParseError> {
    let mut s = Scanner {
        chars: input.chars().collect(),
        pos: 0,
        ring,
    };
    let field = ring.field();
    let mut terms: Vec<(u64, Monomial)> = Vec::new();
    s.skip_ws();
    if s.peek().is_none() {
        return s.err("empty polynomial");
    }
    let mut negate = false;
    if matches!(s.peek(), Some('+') | Some('-')) {
        negate = s.bump() == Some('-');
        s.skip_ws();
    }
    loop {
        let (c, m) = s.term()?;
        let c = if negate { field.neg(c) } else { c };
        terms.push((c, m));
        s.skip_ws();
        match s.peek() {
            None => break,
            Some('+') => {
                negate = false;
                s.bump();
                s.skip_ws();
            }
            Some('-') => {
                negate = true;
                s.bump();
                s.skip_ws();
            }
            Some(c) => return s.err(format!("unexpected character `{c}`")),
        }
    }
    Ok(ring.polynomial(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::PrimeField;
    use crate::poly::order::OrderKind;

    fn ring() -> PolyRing {
        PolyRing::new(
            PrimeField::new(32003).unwrap(),
            vec!["x12".into(), "x21".into(), "y12".into(), "y21".into()],
            OrderKind::DegRevLex,
        )
        .unwrap()
    }

    #[test]
    fn parses_commutator_entry() {
        let r = ring();
        let f = parse_polynomial(&r, "x12*y21 - x21*y12").unwrap();
        assert_eq!(f.term_count(), 2);
        // Canonical output leads with the degrevlex-larger x21*y12.
        assert_eq!(polynomial_to_string(&r, &f), "-x21*y12 + x12*y21");
        assert_eq!(parse_polynomial(&r, "-x21*y12 + x12*y21").unwrap(), f);
    }

    #[test]
    fn parses_coefficients_and_powers() {
        let r = ring();
        let f = parse_polynomial(&r, "  3*x12^2*y12 +   x21 - 7 ").unwrap();
        assert_eq!(polynomial_to_string(&r, &f), "3*x12^2*y12 + x21 - 7");
        let g = parse_polynomial(&r, "-x12 + 32002*x21").unwrap();
        assert_eq!(polynomial_to_string(&r, &g), "-x12 - x21");
    }

    #[test]
    fn zero_forms() {
        let r = ring();
        assert!(parse_polynomial(&r, "0").unwrap().is_zero());
        assert!(parse_polynomial(&r, "x12 - x12").unwrap().is_zero());
        assert_eq!(polynomial_to_string(&r, &Polynomial::zero()), "0");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        let err = parse_polynomial(&r, "x12 + z*y12").unwrap_err();
        assert_eq!(err.col, 7);
        assert!(err.message.contains("unknown variable `z`"));
        assert!(parse_polynomial(&r, "").is_err());
        assert!(parse_polynomial(&r, "x12 +").is_err());
        assert!(parse_polynomial(&r, "3^2").is_err());
    }

    #[test]
    fn round_trips_canonical_output() {
        let r = ring();
        for text in ["x12*y21 - x21*y12", "2*x12^3 + 16001*y12*y21 - 5", "1"] {
            let f = parse_polynomial(&r, text).unwrap();
            let printed = polynomial_to_string(&r, &f);
            let g = parse_polynomial(&r, &printed).unwrap();
            assert_eq!(f, g);
            assert_eq!(polynomial_to_string(&r, &g), printed);
        }
    }
}
