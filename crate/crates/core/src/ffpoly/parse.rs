//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)? | '(' poly ')' ('^' nat)?
//! ```
//!
//! Coefficients are decimal integers reduced mod p, whitespace is ignored and
//! a single leading sign is accepted.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::poly::{Poly, PolyRing};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn digits(&mut self) -> &'a [u8] {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn coefficient(&mut self) -> u32 {
        let field = self.ring.field();
        self.digits()
            .iter()
            .fold(0u32, |acc, d| field.reduce(acc as u64 * 10 + (d - b'0') as u64))
    }

    fn natural(&mut self) -> Result<u64> {
        let start = self.pos;
        let ds = self.digits();
        if ds.is_empty() {
            self.pos = start;
            return self.err("expected a natural number");
        }
        let mut n: u64 = 0;
        for d in ds {
            n = n
                .checked_mul(10)
                .and_then(|n| n.checked_add((d - b'0') as u64))
                .ok_or(Error::ExponentOverflow)?;
        }
        Ok(n)
    }

    fn optional_power(&mut self, base: Poly) -> Result<Poly> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.natural()?;
            base.pow(n)
        } else {
            Ok(base)
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                self.expect(b')')?;
                self.optional_power(inner)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric()
                        || self.src[self.pos] == b'_'
                        || self.src[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self.ring.var_index(name).ok_or_else(|| Error::UnknownVariable {
                    name: name.to_string(),
                    pos: start,
                })?;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let n = self.natural()?;
                    u32::try_from(n).map_err(|_| Error::ExponentOverflow)?
                } else {
                    1
                };
                Ok(Poly::monomial(
                    self.ring,
                    Monomial::var(self.ring.nvars(), idx, exp),
                    1,
                ))
            }
            Some(_) => self.err("expected a variable, coefficient or `(`"),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coefficient();
                Poly::monomial(self.ring, Monomial::one(self.ring.nvars()), c)
            }
            _ => self.factor()?,
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn poly(&mut self) -> Result<Poly> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
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
}

/// Parses `text` as a polynomial over `ring`, reducing coefficients mod p.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Poly> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let p = parser.poly()?;
    if parser.peek().is_some() {
        return parser.err("unexpected trailing input");
    }
    Ok(p)
}

/// Parses a comma-separated generator list. Empty input yields no generators.
pub fn parse_poly_list(text: &str, ring: &Arc<PolyRing>) -> Result<Vec<Poly>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let p = parse_poly(piece, ring).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax {
                pos: pos + offset,
                msg,
            },
            Error::UnknownVariable { name, pos } => Error::UnknownVariable {
                name,
                pos: pos + offset,
            },
            other => other,
        })?;
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}
