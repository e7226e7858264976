//! Recursive-descent parser for number expressions such as `(3-sqrt(5))/2`.
//!
//! Grammar:
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | atom
//! atom  := integer | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//! The argument of `sqrt` must evaluate to a non-negative rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{ExactError, SqrtBasisNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("in expression {expr:?} at position {position}: {message}")]
pub struct ExprError {
    pub expr: String,
    pub position: usize,
    pub message: String,
}

pub fn parse_expr(src: &str) -> Result<SqrtBasisNumber, ExprError> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error("expected an operator or end of input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError { expr: self.src.to_string(), position: self.pos, message: message.into() }
    }

    fn exact_error(&self, at: usize, e: ExactError) -> ExprError {
        ExprError { expr: self.src.to_string(), position: at, message: e.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<SqrtBasisNumber, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SqrtBasisNumber, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs).map_err(|e| self.exact_error(at, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<SqrtBasisNumber, ExprError> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<SqrtBasisNumber, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos].parse().expect("digits");
                Ok(SqrtBasisNumber::from_bigint(n))
            }
            Some(b's') if self.src[self.pos..].starts_with("sqrt") => {
                self.pos += 4;
                self.expect(b'(')?;
                let at = self.pos;
                let arg = self.expr()?;
                self.expect(b')')?;
                let q: BigRational = arg
                    .to_rational()
                    .ok_or_else(|| self.exact_error(at, ExactError::IrrationalSqrt))?;
                SqrtBasisNumber::sqrt_rational(&q).map_err(|e| self.exact_error(at, e))
            }
            Some(_) => Err(self.error("expected a number, 'sqrt(' or '('")),
            None => Err(self.error("unexpected end of input, expected a number, 'sqrt(' or '('")),
        }
    }
}
