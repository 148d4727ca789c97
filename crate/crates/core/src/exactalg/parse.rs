use super::fraction::PolyFraction;
use super::poly::MultiPoly;
use super::symbol::SymbolTable;
use super::Q;
use num::{BigInt, One, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent must be a nonnegative integer")]
    BadExponent,
    #[error("division by zero in expression")]
    DivisionByZero,
    #[error("expression has a non-constant denominator where a polynomial is required")]
    NonPolynomial,
}

/// Parses an expression over `+ - * / ^ ( )`, integer literals, and names
/// from the table, into a fraction of polynomials.
pub fn parse_fraction(table: &Arc<SymbolTable>, src: &str) -> Result<PolyFraction, ParseError> {
    let mut p = Parser {
        table,
        bytes: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(ParseError::UnexpectedChar(
            p.bytes[p.pos] as char,
            p.pos,
        ));
    }
    Ok(e)
}

/// Parses an expression that must denote a polynomial (constant denominators
/// are folded into the coefficients).
pub fn parse_poly(table: &Arc<SymbolTable>, src: &str) -> Result<MultiPoly, ParseError> {
    let f = parse_fraction(table, src)?;
    f.into_poly().ok_or(ParseError::NonPolynomial)
}

struct Parser<'a> {
    table: &'a Arc<SymbolTable>,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && (self.bytes[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.bytes.get(self.pos).map(|&b| b as char)
    }

    fn expr(&mut self) -> Result<PolyFraction, ParseError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyFraction, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.div(&d).ok_or(ParseError::DivisionByZero)?;
                }
                // implicit multiplication for `3x` or `x(...)` styles
                Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '_' => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<PolyFraction, ParseError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            if n.sign() == num::bigint::Sign::Minus {
                return Err(ParseError::BadExponent);
            }
            let e: u32 = n.try_into().map_err(|_| ParseError::BadExponent)?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<PolyFraction, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(ParseError::UnexpectedEnd);
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(PolyFraction::constant(
                    self.table,
                    Q::from(n),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.ident();
                match self.table.position(&name) {
                    Some(idx) => Ok(PolyFraction::from_poly(MultiPoly::var(self.table, idx))),
                    None => Err(ParseError::UnknownVariable(name)),
                }
            }
            Some(c) => Err(ParseError::UnexpectedChar(c, self.pos)),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && (self.bytes[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::UnexpectedEnd);
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos] as char;
            // jet coordinates like `lambda#1` and indexed names are one token
            if c.is_ascii_alphanumeric() || c == '_' || c == '#' || c == ',' && self.in_hash_suffix(start)
            {
                self.pos += 1;
            } else {
                break;
            }
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string()
    }

    fn in_hash_suffix(&self, start: usize) -> bool {
        self.bytes[start..self.pos].contains(&b'#')
    }
}

impl PolyFraction {
    fn into_poly(self) -> Option<MultiPoly> {
        let c = self.den().constant_value()?;
        if c.is_zero() {
            return None;
        }
        Some(self.num().scale(&(Q::one() / c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_polynomials() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let p = parse_poly(&t, "x^2 - y").unwrap();
        assert_eq!(p.to_string(), "x^2 - y");
        let p = parse_poly(&t, "(x + y)^2 - 2*x*y").unwrap();
        assert_eq!(p.to_string(), "x^2 + y^2");
        let p = parse_poly(&t, "3/4*x - 1/4").unwrap();
        assert_eq!(p.to_string(), "3/4*x - 1/4");
    }

    #[test]
    fn parses_fractions() {
        let t = SymbolTable::new(vec!["lambda"]);
        let f = parse_fraction(&t, "(2*lambda - 1)/(lambda*(1 - lambda))").unwrap();
        assert_eq!(f.num().to_string(), "2*lambda - 1");
        assert_eq!(f.den().to_string(), "-lambda^2 + lambda");
    }

    #[test]
    fn rejects_unknown_vars() {
        let t = SymbolTable::new(vec!["x"]);
        assert!(matches!(
            parse_poly(&t, "x + z"),
            Err(ParseError::UnknownVariable(_))
        ));
    }

    #[test]
    fn parses_jet_names() {
        let t = SymbolTable::new(vec!["x#0,1", "x#1,0"]);
        let p = parse_poly(&t, "x#0,1 + 2*x#1,0").unwrap();
        assert_eq!(p.support().len(), 2);
    }
}
