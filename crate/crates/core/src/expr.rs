//! Univariate polynomial expressions such as `x*(x^3-2)^2` or `3/5 - x`.

use crate::ratpoly::{Poly, Rational};
use num_bigint::BigInt;
use std::str::FromStr;
use thiserror::Error;

pub const MAX_EXPONENT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at column {position}: expected {expected}")]
pub struct ParseError {
    /// 1-based character column.
    pub position: usize,
    pub expected: String,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser { chars, at: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        match self.chars.get(self.at) {
            Some(&(i, _)) => i + 1,
            None => self.src.chars().count() + 1,
        }
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError { position: self.column(), expected: expected.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.at += 1;
        }
        (!s.is_empty()).then_some(s)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
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

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            // juxtaposition before '(' multiplies
            if self.eat('*') || self.peek() == Some('(') {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.base()?;
        if self.eat('^') {
            let col = self.column();
            let Some(e) = self.digits() else { return self.fail("a non-negative integer exponent") };
            match u32::from_str(&e) {
                Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                _ => Err(ParseError {
                    position: col,
                    expected: format!("an exponent at most {MAX_EXPONENT}"),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some('x') => {
                self.at += 1;
                Ok(Poly::x())
            }
            Some('(') => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.fail("')'");
                }
                Ok(inner)
            }
            Some('-') => self.factor(),
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().expect("peeked a digit");
                let den = if self.eat('/') {
                    match self.digits() {
                        Some(d) if d.bytes().any(|b| b != b'0') => d,
                        Some(_) => return self.fail("a nonzero denominator"),
                        None => return self.fail("a denominator"),
                    }
                } else {
                    "1".into()
                };
                let r = Rational::new(
                    BigInt::from_str(&num).expect("digits"),
                    BigInt::from_str(&den).expect("digits"),
                );
                Ok(Poly::constant(r))
            }
            _ => self.fail("a number, 'x', '-' or '('"),
        }
    }
}

/// Parses and expands an expression in `x` exactly.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser::new(text);
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.fail("an operator or end of input");
    }
    Ok(out)
}
