//! Recursive-descent parser for GAP-style expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | 'E(' integer ')' | 'Sqrt(' integer ')' | 'i'
//!         | identifier | '(' expr ')'
//! ```
//!
//! The value type is generic so the same grammar reads scalars and
//! polynomials; identifiers other than `E`, `Sqrt` and `i` are resolved by the
//! value type (variables such as `x3`) or by a caller-supplied lookup.

use num_bigint::BigInt;

use super::{Cyclotomic, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at column {}: {msg}", .pos + 1)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

/// Values the expression grammar can produce.
pub trait ExprValue: Sized + Clone {
    fn from_cyclotomic(c: Cyclotomic) -> Self;
    /// Resolves identifiers the value type knows about (e.g. `x1`).
    fn variable(name: &str) -> Option<Self>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, other: &Self) -> Result<Self, String>;
    fn pow(&self, e: i64) -> Result<Self, String>;
}

impl ExprValue for Cyclotomic {
    fn from_cyclotomic(c: Cyclotomic) -> Self {
        c
    }
    fn variable(_name: &str) -> Option<Self> {
        None
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Result<Self, String> {
        other
            .inv()
            .map(|inv| self * &inv)
            .map_err(|e| e.to_string())
    }
    fn pow(&self, e: i64) -> Result<Self, String> {
        Cyclotomic::pow(self, e).map_err(|e| e.to_string())
    }
}

/// Parses `text` into a value. `lookup` resolves bound names before the
/// value type's own variables.
pub fn parse_expression<T: ExprValue>(
    text: &str,
    lookup: &dyn Fn(&str) -> Option<T>,
) -> Result<T, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        lookup,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(v)
}

struct Parser<'a, T> {
    src: &'a [u8],
    pos: usize,
    lookup: &'a dyn Fn(&str) -> Option<T>,
}

impl<T: ExprValue> Parser<'_, T> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.into(),
        }
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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<T, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<T, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs).map_err(|msg| ParseError { pos: at, msg })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<T, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<T, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.exponent()?;
            return base.pow(e).map_err(|msg| ParseError { pos: at, msg });
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.exponent()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.small_int()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.small_int()
            }
            _ => self.small_int(),
        }
    }

    fn digits(&mut self) -> Result<&str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        let at = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| ParseError {
            pos: at,
            msg: "integer too large".into(),
        })
    }

    fn atom(&mut self) -> Result<T, ParseError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let n: BigInt = d.parse().unwrap();
                let q = Rational::from_bigints(n, BigInt::from(1));
                Ok(T::from_cyclotomic(Cyclotomic::from_rational(q)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match name {
                    "E" => {
                        self.expect(b'(')?;
                        let at = self.pos;
                        let n = self.small_int()?;
                        self.expect(b')')?;
                        if !(1..=100_000).contains(&n) {
                            return Err(ParseError {
                                pos: at,
                                msg: format!("E({n}) needs 1 <= n <= 100000"),
                            });
                        }
                        Ok(T::from_cyclotomic(Cyclotomic::e(n as u32)))
                    }
                    "Sqrt" => {
                        self.expect(b'(')?;
                        let at = self.pos;
                        let neg = if self.peek() == Some(b'-') {
                            self.pos += 1;
                            true
                        } else {
                            false
                        };
                        let k = self.small_int()?;
                        self.expect(b')')?;
                        let k = if neg { -k } else { k };
                        Cyclotomic::sqrt(k)
                            .map(T::from_cyclotomic)
                            .map_err(|e| ParseError {
                                pos: at,
                                msg: e.to_string(),
                            })
                    }
                    "i" => Ok(T::from_cyclotomic(Cyclotomic::e(4))),
                    _ => (self.lookup)(name)
                        .or_else(|| T::variable(name))
                        .ok_or_else(|| ParseError {
                            pos: start,
                            msg: format!("unknown identifier `{name}`"),
                        }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
        }
    }
}
