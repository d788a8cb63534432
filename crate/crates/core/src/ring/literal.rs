// Scalar literals: arithmetic expressions over integers and (for the
// polynomial rings) the indeterminate T, evaluated to a fraction.

use num_bigint::BigInt;

use super::base::Base;
use super::poly::Poly;
use super::{Result, RingError};

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
    poly: bool,
}

type Frac = (Base, Base);

impl<'a> Lexer<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(RingError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&self, n: BigInt) -> Base {
        if self.poly {
            Base::Poly(Poly::constant(n.into()))
        } else {
            Base::Int(n)
        }
    }

    fn one(&self) -> Base {
        self.int(BigInt::from(1))
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn expr(&mut self) -> Result<Frac> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let (mut n, mut d) = self.term()?;
        if neg {
            n = n.neg();
        }
        loop {
            let sign = if self.eat(b'+') {
                false
            } else if self.eat(b'-') {
                true
            } else {
                return Ok((n, d));
            };
            let (n2, d2) = self.term()?;
            let n2 = if sign { n2.neg() } else { n2 };
            n = n.mul(&d2).add(&n2.mul(&d));
            d = d.mul(&d2);
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let (mut n, mut d) = self.factor()?;
        loop {
            if self.eat(b'*') {
                let (n2, d2) = self.factor()?;
                n = n.mul(&n2);
                d = d.mul(&d2);
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let (n2, d2) = self.factor()?;
                if n2.is_zero() {
                    self.pos = at;
                    return self.err("division by zero");
                }
                n = n.mul(&d2);
                d = d.mul(&n2);
            } else {
                return Ok((n, d));
            }
        }
    }

    fn factor(&mut self) -> Result<Frac> {
        let (n, d) = self.atom()?;
        if self.eat(b'^') {
            let e = match self.digits() {
                Some(e) => e,
                None => return self.err("expected exponent"),
            };
            let e: u32 = match e.try_into() {
                Ok(e) if e <= 64 => e,
                _ => return self.err("exponent too large"),
            };
            return Ok((n.pow(e), d.pow(e)));
        }
        Ok((n, d))
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(b'T') if self.poly => {
                self.pos += 1;
                Ok((Base::Poly(Poly::t()), self.one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().expect("digit present");
                Ok((self.int(n), self.one()))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of literal"),
        }
    }
}

/// Parses `text` as a fraction of base-ring values.
pub(super) fn parse_fraction(text: &str, poly: bool) -> Result<(Base, Base)> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0, poly };
    let v = lx.expr()?;
    if lx.peek().is_some() {
        return lx.err("trailing input");
    }
    Ok(v)
}
