//! Constructible subsets of the maximal spectrum of a global backend.
//!
//! With good factorization every Boolean combination of basic closed sets
//! collapses to a single basic closed or basic open set, so the normalized
//! form has four shapes.

use std::fmt;

use serde::Serialize;

use crate::ring::{Backend, RingElem, RingError};

/// A normalized constructible set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConstructibleSet {
    Empty,
    Whole,
    /// `V(e) = {M : e ∈ M}`, `e` a nonzero non-unit, canonical.
    Closed(RingElem),
    /// The complement of `V(e)`, `e` a nonzero non-unit, canonical.
    Open(RingElem),
}

use ConstructibleSet::*;

impl ConstructibleSet {
    pub fn closed(b: &Backend, e: &RingElem) -> ConstructibleSet {
        if e.is_zero() {
            Whole
        } else if b.is_unit(e) {
            Empty
        } else {
            Closed(b.canonical(e))
        }
    }

    pub fn open(b: &Backend, e: &RingElem) -> ConstructibleSet {
        complement(&ConstructibleSet::closed(b, e))
    }

    /// Whether the shape invariant holds (nonzero non-unit canonical `e`).
    pub fn is_normalized(&self, b: &Backend) -> bool {
        match self {
            Empty | Whole => true,
            Closed(e) | Open(e) => !e.is_zero() && !b.is_unit(e) && b.canonical(e) == *e,
        }
    }

    /// Membership of the maximal ideal generated by the irreducible `p`.
    pub fn contains(&self, b: &Backend, p: &RingElem) -> bool {
        match self {
            Empty => false,
            Whole => true,
            Closed(e) => b.divides(p, e),
            Open(e) => !b.divides(p, e),
        }
    }

    /// Kind tag used in JSON output.
    pub fn kind(&self) -> &'static str {
        match self {
            Empty => "empty",
            Whole => "whole",
            Closed(_) => "closed",
            Open(_) => "open",
        }
    }

    pub fn elem(&self) -> Option<&RingElem> {
        match self {
            Closed(e) | Open(e) => Some(e),
            _ => None,
        }
    }
}

pub fn complement(s: &ConstructibleSet) -> ConstructibleSet {
    match s {
        Empty => Whole,
        Whole => Empty,
        Closed(e) => Open(e.clone()),
        Open(e) => Closed(e.clone()),
    }
}

/// `V(a) ∖ V(b) = V(c)` for the good factorization `a = c·d` relative to `b`.
fn difference_closed(b: &Backend, a: &RingElem, c: &RingElem) -> ConstructibleSet {
    let (keep, _) = b.good_factorization(a, c).expect("nonzero arguments");
    ConstructibleSet::closed(b, &keep)
}

pub fn intersect(b: &Backend, s: &ConstructibleSet, t: &ConstructibleSet) -> ConstructibleSet {
    match (s, t) {
        (Empty, _) | (_, Empty) => Empty,
        (Whole, o) | (o, Whole) => o.clone(),
        (Closed(x), Closed(y)) => ConstructibleSet::closed(b, &b.gcd(x, y)),
        (Open(x), Open(y)) => ConstructibleSet::open(b, &b.mul(x, y)),
        (Closed(x), Open(y)) | (Open(y), Closed(x)) => difference_closed(b, x, y),
    }
}

pub fn union(b: &Backend, s: &ConstructibleSet, t: &ConstructibleSet) -> ConstructibleSet {
    complement(&intersect(b, &complement(s), &complement(t)))
}

/// Emptiness; `Open(e)` with `e ≠ 0` is nonempty because the Jacobson
/// radical of the shipped global backends is zero.
pub fn is_empty(s: &ConstructibleSet) -> bool {
    matches!(s, Empty)
}

pub fn subseteq(b: &Backend, s: &ConstructibleSet, t: &ConstructibleSet) -> bool {
    is_empty(&intersect(b, s, &complement(t)))
}

pub fn set_eq(b: &Backend, s: &ConstructibleSet, t: &ConstructibleSet) -> bool {
    subseteq(b, s, t) && subseteq(b, t, s)
}

impl fmt::Display for ConstructibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Empty => write!(f, "Empty"),
            Whole => write!(f, "Whole"),
            Closed(e) => write!(f, "V({e})"),
            Open(e) => write!(f, "!V({e})"),
        }
    }
}

#[derive(Serialize)]
struct CsJson<'a> {
    kind: &'a str,
    elem: Option<String>,
}

impl Serialize for ConstructibleSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CsJson { kind: self.kind(), elem: self.elem().map(|e| e.to_string()) }.serialize(s)
    }
}

/// Unnormalized Boolean combination of the literals `e ∈ M`, `e ∉ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CsExpr {
    InV(RingElem),
    NotInV(RingElem),
    Whole,
    Empty,
    Not(Box<CsExpr>),
    And(Vec<CsExpr>),
    Or(Vec<CsExpr>),
}

impl CsExpr {
    pub fn normalize(&self, b: &Backend) -> ConstructibleSet {
        match self {
            CsExpr::InV(e) => ConstructibleSet::closed(b, e),
            CsExpr::NotInV(e) => ConstructibleSet::open(b, e),
            CsExpr::Whole => Whole,
            CsExpr::Empty => Empty,
            CsExpr::Not(x) => complement(&x.normalize(b)),
            CsExpr::And(xs) => xs.iter().fold(Whole, |acc, x| intersect(b, &acc, &x.normalize(b))),
            CsExpr::Or(xs) => xs.iter().fold(Empty, |acc, x| union(b, &acc, &x.normalize(b))),
        }
    }

    /// Membership by direct evaluation of the literals.
    pub fn contains(&self, b: &Backend, p: &RingElem) -> bool {
        match self {
            CsExpr::InV(e) => b.divides(p, e),
            CsExpr::NotInV(e) => !b.divides(p, e),
            CsExpr::Whole => true,
            CsExpr::Empty => false,
            CsExpr::Not(x) => !x.contains(b, p),
            CsExpr::And(xs) => xs.iter().all(|x| x.contains(b, p)),
            CsExpr::Or(xs) => xs.iter().any(|x| x.contains(b, p)),
        }
    }
}

/// Parses `V(e)`, `Whole`, `Empty`, `!`, `&`, `|` and parentheses.
pub fn parse_cs(text: &str, b: &Backend) -> Result<CsExpr, RingError> {
    struct P<'a> {
        s: &'a str,
        pos: usize,
        b: &'a Backend,
    }
    impl P<'_> {
        fn err<T>(&self, msg: &str) -> Result<T, RingError> {
            Err(RingError::Parse { pos: self.pos, msg: msg.into() })
        }
        fn eat(&mut self, lit: &str) -> bool {
            let rest = &self.s[self.pos..];
            let trimmed = rest.trim_start();
            if trimmed.starts_with(lit) {
                self.pos += rest.len() - trimmed.len() + lit.len();
                true
            } else {
                false
            }
        }
        fn or(&mut self) -> Result<CsExpr, RingError> {
            let mut xs = vec![self.and()?];
            while self.eat("|") {
                xs.push(self.and()?);
            }
            Ok(if xs.len() == 1 { xs.pop().unwrap() } else { CsExpr::Or(xs) })
        }
        fn and(&mut self) -> Result<CsExpr, RingError> {
            let mut xs = vec![self.unary()?];
            while self.eat("&") {
                xs.push(self.unary()?);
            }
            Ok(if xs.len() == 1 { xs.pop().unwrap() } else { CsExpr::And(xs) })
        }
        fn unary(&mut self) -> Result<CsExpr, RingError> {
            if self.eat("!") {
                return Ok(CsExpr::Not(Box::new(self.unary()?)));
            }
            if self.eat("Whole") {
                return Ok(CsExpr::Whole);
            }
            if self.eat("Empty") {
                return Ok(CsExpr::Empty);
            }
            if self.eat("V(") {
                let start = self.pos;
                let mut depth = 1;
                for (i, c) in self.s[start..].char_indices() {
                    match c {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                let e = self.b.parse_elem(&self.s[start..start + i]).map_err(|e| match e {
                                    RingError::Parse { pos, msg } => RingError::Parse { pos: pos + start, msg },
                                    e => e,
                                })?;
                                self.pos = start + i + 1;
                                return Ok(CsExpr::InV(e));
                            }
                        }
                        _ => {}
                    }
                }
                return self.err("unbalanced 'V('");
            }
            if self.eat("(") {
                let x = self.or()?;
                if !self.eat(")") {
                    return self.err("expected ')'");
                }
                return Ok(x);
            }
            self.err("expected V(…), Whole, Empty, '!' or '('")
        }
    }
    let mut p = P { s: text, pos: 0, b };
    let x = p.or()?;
    if !p.s[p.pos..].trim().is_empty() {
        return p.err("trailing input");
    }
    Ok(x)
}
