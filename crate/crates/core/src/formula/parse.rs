// Recursive-descent parser for the formula and sentence grammar.

use std::collections::BTreeSet;

use super::{Atom, BSentence, FormulaError, InvCondition, PPFormula, Rel, Term};
use crate::gamma::{self, GammaElem};
use crate::ring::{Backend, RingElem};

type Res<T> = Result<T, FormulaError>;

/// Result of [`parse`]: a pp formula or a sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Formula(PPFormula),
    Sentence(BSentence),
}

/// Blanks out `#` comment lines, keeping byte offsets intact.
pub fn strip_comments(text: &str) -> String {
    text.split_inclusive('\n')
        .map(|line| {
            if line.trim_start().starts_with('#') {
                line.chars().map(|c| if c == '\n' { '\n' } else { ' ' }).collect()
            } else {
                line.to_string()
            }
        })
        .collect()
}

struct Parser<'a> {
    s: &'a [u8],
    text: &'a str,
    pos: usize,
    b: &'a Backend,
}

impl<'a> Parser<'a> {
    fn syntax<T>(&self, msg: impl Into<String>) -> Res<T> {
        Err(FormulaError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn at(&mut self, lit: &str) -> bool {
        self.ws();
        self.s[self.pos..].starts_with(lit.as_bytes())
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.at(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Res<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.syntax(format!("expected '{lit}'"))
        }
    }

    fn end(&mut self) -> Res<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.syntax(format!("unexpected '{}'", c as char)),
        }
    }

    fn ident(&mut self) -> Res<String> {
        self.ws();
        let start = self.pos;
        match self.s.get(self.pos) {
            Some(c) if c.is_ascii_lowercase() => {}
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {
                let mut end = start;
                while end < self.s.len() && (self.s[end].is_ascii_alphanumeric() || self.s[end] == b'_') {
                    end += 1;
                }
                return Err(FormulaError::VariableClass { pos: start, name: self.text[start..end].to_string() });
            }
            _ => return self.syntax("expected a variable"),
        }
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_lowercase() || self.s[self.pos].is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos < self.s.len() && (self.s[self.pos].is_ascii_uppercase() || self.s[self.pos] == b'_') {
            let mut end = self.pos;
            while end < self.s.len() && (self.s[end].is_ascii_alphanumeric() || self.s[end] == b'_') {
                end += 1;
            }
            return Err(FormulaError::VariableClass { pos: start, name: self.text[start..end].to_string() });
        }
        Ok(self.text[start..self.pos].to_string())
    }

    /// Index just past the parenthesis matching the one at `open`.
    fn matching(&self, open: usize) -> Res<usize> {
        let mut depth = 0usize;
        for (i, &c) in self.s.iter().enumerate().skip(open) {
            match c {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(i + 1);
                    }
                }
                _ => {}
            }
        }
        Err(FormulaError::Syntax { pos: open, msg: "unbalanced '('".into() })
    }

    fn elem(&self, pos: usize, text: &str) -> Res<RingElem> {
        self.b.parse_elem(text).map_err(|source| FormulaError::Scalar { pos, text: text.trim().to_string(), source })
    }

    fn starts_scalar(&mut self) -> bool {
        matches!(self.peek(), Some(b'(') | Some(b'T')) || self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    /// `( … )`, `digits [/ digits]`, or `T [^ digits]`.
    fn scalar(&mut self) -> Res<RingElem> {
        self.ws();
        let start = self.pos;
        let digits = |p: &mut Parser| {
            while p.pos < p.s.len() && p.s[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        match self.s.get(self.pos) {
            Some(b'(') => self.pos = self.matching(start)?,
            Some(b'T') => {
                self.pos += 1;
                if self.eat("^") {
                    self.ws();
                    digits(self);
                }
            }
            Some(c) if c.is_ascii_digit() => {
                digits(self);
                if self.s.get(self.pos) == Some(&b'/') && self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                    digits(self);
                }
            }
            _ => return self.syntax("expected a scalar"),
        }
        self.elem(start, &self.text[start..self.pos])
    }

    fn mono(&mut self) -> Res<Term> {
        if self.peek().is_some_and(|c| c.is_ascii_lowercase()) {
            let x = self.ident()?;
            let c = if self.eat("*") { self.scalar()? } else { self.b.one() };
            return Ok(Term::mono(&x, c));
        }
        if self.starts_scalar() {
            let at = self.pos;
            let c = self.scalar()?;
            if self.eat("*") {
                let x = self.ident()?;
                return Ok(Term::mono(&x, c));
            }
            if c.is_zero() {
                return Ok(Term::zero());
            }
            self.pos = at;
            return self.syntax("constant terms are not allowed; expected scalar '*' variable");
        }
        if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.ident()?;
        }
        self.syntax("expected a variable or scalar")
    }

    fn term(&mut self) -> Res<Term> {
        let neg = self.eat("-");
        let mut t = self.mono()?;
        if neg {
            t = t.neg(self.b);
        }
        loop {
            if self.eat("+") {
                let m = self.mono()?;
                t = t.add(self.b, &m);
            } else if self.eat("-") {
                let m = self.mono()?;
                t = t.sub(self.b, &m);
            } else {
                return Ok(t);
            }
        }
    }

    fn gamma_factor(&mut self) -> Res<GammaElem> {
        let at = self.pos;
        if !self.at("v(") {
            return self.syntax("expected 'v('");
        }
        self.ws();
        let open = self.pos + 1;
        let close = self.matching(open)?;
        let e = self.elem(open + 1, &self.text[open + 1..close - 1])?;
        self.pos = close;
        if e.is_zero() {
            return Err(FormulaError::Syntax { pos: at, msg: "index v(0) is not allowed".into() });
        }
        Ok(gamma::v(self.b, &e))
    }

    fn gamma(&mut self) -> Res<GammaElem> {
        let mut g = self.gamma_factor()?;
        loop {
            if self.eat("*") {
                let h = self.gamma_factor()?;
                g = gamma::mul(self.b, &g, &h);
            } else if self.eat("/") {
                let h = self.gamma_factor()?;
                g = gamma::div(self.b, &g, &h).expect("finite index");
            } else {
                return Ok(g);
            }
        }
    }

    fn atom(&mut self) -> Res<Atom> {
        if self.eat("V[") {
            let d = self.gamma()?;
            self.expect("]")?;
            self.expect("(")?;
            let t = self.term()?;
            self.expect(")")?;
            return Ok(Atom::Vp(d, t));
        }
        let lhs = self.term()?;
        self.expect("=")?;
        let rhs = self.term()?;
        Ok(Atom::Eq(lhs.sub(self.b, &rhs)))
    }

    fn pp(&mut self) -> Res<PPFormula> {
        let mut bound = Vec::new();
        if self.at("E") && self.s.get(self.pos + 1).is_none_or(|c| !c.is_ascii_alphanumeric()) {
            self.pos += 1;
            let mut seen = BTreeSet::new();
            loop {
                if self.eat(".") {
                    break;
                }
                let at = self.pos;
                let x = self.ident()?;
                if !seen.insert(x.clone()) {
                    return Err(FormulaError::Syntax { pos: at, msg: format!("variable '{x}' bound twice") });
                }
                bound.push(x);
            }
            if bound.is_empty() {
                return self.syntax("expected a bound variable");
            }
        }
        let mut atoms = vec![self.atom()?];
        while self.eat("&") {
            atoms.push(self.atom()?);
        }
        Ok(PPFormula { bound, atoms }.normalize(self.b))
    }

    fn primary(&mut self) -> Res<BSentence> {
        if self.eat("Inv(") {
            let phi = self.pp()?;
            self.expect("|")?;
            let psi = self.pp()?;
            self.expect(")")?;
            let rel = if self.eat(">1") {
                Rel::Gt1
            } else if self.eat("=1") {
                Rel::Eq1
            } else {
                return self.syntax("expected '>1' or '=1'");
            };
            return Ok(BSentence::Inv(InvCondition::new(self.b, phi, psi, rel)?));
        }
        if self.eat("{") {
            let f = self.pp()?;
            self.expect("}")?;
            return Ok(BSentence::Closed(f));
        }
        if self.eat("(") {
            let s = self.sentence()?;
            self.expect(")")?;
            return Ok(s);
        }
        self.syntax("expected 'Inv(', '{', '(' or '!'")
    }

    fn unary(&mut self) -> Res<BSentence> {
        if self.eat("!") {
            return Ok(BSentence::not(self.unary()?));
        }
        self.primary()
    }

    fn conj(&mut self) -> Res<BSentence> {
        let mut s = self.unary()?;
        while self.eat("&") {
            s = BSentence::and(s, self.unary()?);
        }
        Ok(s)
    }

    fn sentence(&mut self) -> Res<BSentence> {
        let mut s = self.conj()?;
        while self.eat("|") {
            s = BSentence::or(s, self.conj()?);
        }
        Ok(s)
    }
}

fn run<T>(text: &str, b: &Backend, f: impl FnOnce(&mut Parser) -> Res<T>) -> Res<T> {
    let text = strip_comments(text);
    let mut p = Parser { s: text.as_bytes(), text: &text, pos: 0, b };
    let v = f(&mut p)?;
    p.end()?;
    Ok(v)
}

/// Parses a pp formula; the result is normalized.
pub fn parse_pp(text: &str, b: &Backend) -> Res<PPFormula> {
    run(text, b, |p| p.pp())
}

/// Parses a Boolean sentence; all pp formulas in it are normalized.
pub fn parse_sentence(text: &str, b: &Backend) -> Res<BSentence> {
    run(text, b, |p| p.sentence())
}

/// Parses either form. On failure reports the error that got furthest.
pub fn parse(text: &str, b: &Backend) -> Res<Parsed> {
    let e1 = match parse_pp(text, b) {
        Ok(f) => return Ok(Parsed::Formula(f)),
        Err(e) => e,
    };
    match parse_sentence(text, b) {
        Ok(s) => Ok(Parsed::Sentence(s)),
        Err(e2) => Err(if e2.pos() > e1.pos() { e2 } else { e1 }),
    }
}
