//! Recursive-descent parser for rational expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' integer)?
//! base   := integer | ident | '(' expr ')' | '-' factor
//! ```
//!
//! `^` binds tighter than unary minus, so `-t^2` is `-(t^2)`; exponents may
//! be negative.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::arith::{Rat, RatFunc};
use crate::tower::{Tower, TowerElem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{msg} at offset {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Values an expression can evaluate to.
pub trait ParseTarget {
    type Value: Clone;
    fn constant(&self, c: Rat) -> Self::Value;
    fn ident(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    /// `None` on division by zero.
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Option<Self::Value>;
    fn pow(&self, a: &Self::Value, e: i64) -> Option<Self::Value>;
}

/// Expressions in ℚ(t).
pub struct RatFuncTarget;

impl ParseTarget for RatFuncTarget {
    type Value = RatFunc;
    fn constant(&self, c: Rat) -> RatFunc {
        RatFunc::from_rat(c)
    }
    fn ident(&self, name: &str) -> Option<RatFunc> {
        (name == "t").then(RatFunc::t)
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a + b
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a - b
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a * b
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        -a
    }
    fn div(&self, a: &RatFunc, b: &RatFunc) -> Option<RatFunc> {
        a.checked_div(b).ok()
    }
    fn pow(&self, a: &RatFunc, e: i64) -> Option<RatFunc> {
        a.pow(e).ok()
    }
}

/// Expressions over a tower, with its generator names as identifiers.
pub struct TowerTarget<'a>(pub &'a Arc<Tower>);

impl ParseTarget for TowerTarget<'_> {
    type Value = TowerElem;
    fn constant(&self, c: Rat) -> TowerElem {
        self.0.from_rat(c)
    }
    fn ident(&self, name: &str) -> Option<TowerElem> {
        if name == self.0.base().generator_name {
            return Some(self.0.t());
        }
        self.0.generator_by_name(name)
    }
    fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        a + b
    }
    fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        a - b
    }
    fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        a * b
    }
    fn neg(&self, a: &TowerElem) -> TowerElem {
        -a
    }
    fn div(&self, a: &TowerElem, b: &TowerElem) -> Option<TowerElem> {
        a.checked_div(b).ok()
    }
    fn pow(&self, a: &TowerElem, e: i64) -> Option<TowerElem> {
        a.pow(e).ok()
    }
}

/// Parse an element of ℚ(t).
pub fn parse_expr(s: &str) -> Result<RatFunc, ParseError> {
    parse_with(&RatFuncTarget, s)
}

/// Parse an element of `tower`.
pub fn parse_tower_expr(tower: &Arc<Tower>, s: &str) -> Result<TowerElem, ParseError> {
    parse_with(&TowerTarget(tower), s)
}

pub fn parse_with<T: ParseTarget>(target: &T, s: &str) -> Result<T::Value, ParseError> {
    let mut p = Parser { target, src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(v)
}

struct Parser<'a, T: ParseTarget> {
    target: &'a T,
    src: &'a [u8],
    pos: usize,
}

impl<T: ParseTarget> Parser<'_, T> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
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

    fn expr(&mut self) -> Result<T::Value, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { self.target.add(&acc, &rhs) } else { self.target.sub(&acc, &rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<T::Value, ParseError> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            acc = if c == b'*' {
                self.target.mul(&acc, &rhs)
            } else {
                self.target
                    .div(&acc, &rhs)
                    .ok_or(ParseError { pos: at, msg: "division by zero".into() })?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<T::Value, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let v = self.factor()?;
            return Ok(self.target.neg(&v));
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.exponent()?;
            return self
                .target
                .pow(&base, e)
                .ok_or(ParseError { pos: at, msg: "zero raised to a negative power".into() });
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.err("expected integer exponent"));
        }
        let e: i64 = digits.parse().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -e } else { e })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<T::Value, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits");
                Ok(self.target.constant(Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.target
                    .ident(name)
                    .ok_or(ParseError { pos: start, msg: format!("unknown identifier `{name}`") })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
