//! Positive-primitive formulas, invariant conditions and Boolean sentences.

mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::gamma::{self, GammaElem};
use crate::ring::{Backend, RingElem, RingError};

pub use parse::{parse, parse_pp, parse_sentence, strip_comments, Parsed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable class '{name}' at offset {pos} (variables are lowercase [a-z][a-z0-9]*)")]
    VariableClass { pos: usize, name: String },
    #[error("scalar '{text}' at offset {pos}: {source}")]
    Scalar { pos: usize, text: String, source: RingError },
    #[error("invariant condition needs at most one shared free variable, found {0:?}")]
    InvArity(Vec<String>),
}

impl FormulaError {
    pub fn pos(&self) -> Option<usize> {
        match self {
            FormulaError::Syntax { pos, .. }
            | FormulaError::VariableClass { pos, .. }
            | FormulaError::Scalar { pos, .. } => Some(*pos),
            FormulaError::InvArity(_) => None,
        }
    }
}

/// A linear combination of module variables with ring coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(BTreeMap<String, RingElem>);

impl Term {
    pub fn zero() -> Term {
        Term::default()
    }

    /// `c * x`.
    pub fn mono(x: &str, c: RingElem) -> Term {
        let mut t = Term::zero();
        if !c.is_zero() {
            t.0.insert(x.to_string(), c);
        }
        t
    }

    pub fn var(b: &Backend, x: &str) -> Term {
        Term::mono(x, b.one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, x: &str) -> Option<&RingElem> {
        self.0.get(x)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.0.contains_key(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &RingElem)> {
        self.0.iter()
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, b: &Backend, o: &Term) -> Term {
        let mut out = self.0.clone();
        for (x, c) in &o.0 {
            let s = match out.get(x) {
                Some(d) => b.add(d, c),
                None => c.clone(),
            };
            if s.is_zero() {
                out.remove(x);
            } else {
                out.insert(x.clone(), s);
            }
        }
        Term(out)
    }

    pub fn scale(&self, b: &Backend, c: &RingElem) -> Term {
        if c.is_zero() {
            return Term::zero();
        }
        Term(self.0.iter().map(|(x, d)| (x.clone(), b.mul(d, c))).collect())
    }

    pub fn neg(&self, b: &Backend) -> Term {
        Term(self.0.iter().map(|(x, d)| (x.clone(), b.neg(d))).collect())
    }

    pub fn sub(&self, b: &Backend, o: &Term) -> Term {
        self.add(b, &o.neg(b))
    }

    /// The term with `x` removed, and the coefficient of `x`.
    pub fn split(&self, b: &Backend, x: &str) -> (RingElem, Term) {
        let mut rest = self.0.clone();
        let c = rest.remove(x).unwrap_or_else(|| b.zero());
        (c, Term(rest))
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Term {
        Term(self.0.iter().map(|(x, c)| (map.get(x).cloned().unwrap_or_else(|| x.clone()), c.clone())).collect())
    }

    /// Replaces every variable by a term.
    pub fn substitute(&self, b: &Backend, env: &BTreeMap<String, Term>) -> Term {
        self.0.iter().fold(Term::zero(), |acc, (x, c)| {
            let t = env.get(x).cloned().unwrap_or_else(|| Term::var(b, x));
            acc.add(b, &t.scale(b, c))
        })
    }

    /// Scales by the global unit that makes the first coefficient canonical.
    fn unit_normalized(&self, b: &Backend) -> Term {
        match self.0.iter().next() {
            None => self.clone(),
            // A local unit factor of a monomial's coefficient never changes
            // the atom, so the coefficient becomes its associate `p^k`.
            Some((x, c)) if self.0.len() == 1 && b.is_valuation() => Term::mono(x, b.canonical(c)),
            Some((_, c)) => {
                let (_, u) = c.num().canonical_split();
                if u.is_one() {
                    self.clone()
                } else {
                    self.scale(b, &RingElem::from_base(u.unit_inverse()))
                }
            }
        }
    }
}

impl FromIterator<(String, RingElem)> for Term {
    fn from_iter<I: IntoIterator<Item = (String, RingElem)>>(it: I) -> Term {
        Term(it.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

/// `t = 0` or `V_δ(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Eq(Term),
    Vp(GammaElem, Term),
}

impl Atom {
    pub fn term(&self) -> &Term {
        match self {
            Atom::Eq(t) | Atom::Vp(_, t) => t,
        }
    }

    fn map_term(&self, f: impl FnOnce(&Term) -> Term) -> Atom {
        match self {
            Atom::Eq(t) => Atom::Eq(f(t)),
            Atom::Vp(d, t) => Atom::Vp(d.clone(), f(t)),
        }
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Atom {
        self.map_term(|t| t.rename(map))
    }

    /// `None` when the atom holds everywhere and can be dropped.
    pub fn normalize(&self, b: &Backend) -> Option<Atom> {
        match self {
            Atom::Eq(t) if t.is_zero() => None,
            Atom::Vp(_, t) if t.is_zero() => None,
            Atom::Vp(d, _) if gamma::leq(b, d, &GammaElem::one(b)) => None,
            a => Some(a.map_term(|t| t.unit_normalized(b))),
        }
    }
}

/// `∃ bound . atom₁ ∧ … ∧ atomₙ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PPFormula {
    pub bound: Vec<String>,
    pub atoms: Vec<Atom>,
}

impl PPFormula {
    pub fn new(bound: Vec<String>, atoms: Vec<Atom>) -> PPFormula {
        PPFormula { bound, atoms }
    }

    /// The quantifier-free formula `0 = 0`.
    pub fn truth() -> PPFormula {
        PPFormula::default()
    }

    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut vs: BTreeSet<String> = self.atoms.iter().flat_map(|a| a.term().vars().cloned()).collect();
        vs.extend(self.bound.iter().cloned());
        vs
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        self.atoms.iter().flat_map(|a| a.term().vars()).filter(|x| !self.bound.contains(x)).cloned().collect()
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.bound.is_empty()
    }

    pub fn normalize(&self, b: &Backend) -> PPFormula {
        let mut atoms: Vec<Atom> = Vec::new();
        for a in self.atoms.iter().filter_map(|a| a.normalize(b)) {
            if !atoms.contains(&a) {
                atoms.push(a);
            }
        }
        let used: BTreeSet<&String> = atoms.iter().flat_map(|a| a.term().vars()).collect();
        let bound = self.bound.iter().filter(|x| used.contains(x)).cloned().collect();
        PPFormula { bound, atoms }
    }

    /// Conjunction `self ∧ other`, renaming the bound variables of `other`
    /// apart. When `other` already embeds into `self` (bound variables mapped
    /// injectively, free variables fixed) the result is `self`, so the
    /// operation is idempotent.
    pub fn conj(&self, b: &Backend, other: &PPFormula) -> PPFormula {
        let me = self.normalize(b);
        let other = other.normalize(b);
        if embeds(b, &other, &me) {
            return me;
        }
        let mut taken = me.all_vars();
        taken.extend(other.free_vars());
        let mut map = BTreeMap::new();
        for x in &other.bound {
            let fresh = if taken.contains(x) { fresh_name(x, &taken) } else { x.clone() };
            taken.insert(fresh.clone());
            map.insert(x.clone(), fresh);
        }
        let mut bound = me.bound.clone();
        bound.extend(other.bound.iter().map(|x| map[x].clone()));
        let mut atoms = me.atoms.clone();
        atoms.extend(other.atoms.iter().map(|a| a.rename(&map)));
        PPFormula { bound, atoms }.normalize(b)
    }
}

/// `x1`, `x2`, … : the first name derived from `x` not in `taken`.
pub fn fresh_name(x: &str, taken: &BTreeSet<String>) -> String {
    let stem = x.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "x" } else { stem };
    (1..).map(|k| format!("{stem}{k}")).find(|n| !taken.contains(n)).unwrap()
}

/// Whether every atom of `small` occurs in `big` under some injective map
/// of `small`'s bound variables to `big`'s bound variables. Both normalized.
fn embeds(b: &Backend, small: &PPFormula, big: &PPFormula) -> bool {
    if small.free_vars().iter().any(|x| big.bound.contains(x)) {
        return false;
    }
    fn go(b: &Backend, i: usize, small: &PPFormula, big: &PPFormula, map: &mut BTreeMap<String, String>) -> bool {
        if i == small.bound.len() {
            return small.atoms.iter().all(|a| a.rename(map).normalize(b).is_none_or(|a| big.atoms.contains(&a)));
        }
        for y in &big.bound {
            if map.values().any(|v| v == y) {
                continue;
            }
            map.insert(small.bound[i].clone(), y.clone());
            if go(b, i + 1, small, big, map) {
                return true;
            }
            map.remove(&small.bound[i]);
        }
        false
    }
    small.bound.len() <= big.bound.len() && go(b, 0, small, big, &mut BTreeMap::new())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Rel {
    /// Index greater than one: `ψ(M) ⊊ φ(M)`.
    Gt1,
    /// Index one: `ψ(M) = φ(M)`.
    Eq1,
}

/// `(φ/ψ) > 1` or `(φ/ψ) = 1`; `psi` is stored as `ψ ∧ φ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvCondition {
    pub phi: PPFormula,
    pub psi: PPFormula,
    pub rel: Rel,
}

impl InvCondition {
    /// Builds the condition, conjoining `phi` into `psi`.
    pub fn new(b: &Backend, phi: PPFormula, psi: PPFormula, rel: Rel) -> Result<InvCondition, FormulaError> {
        let mut fv = phi.free_vars();
        fv.extend(psi.free_vars());
        if fv.len() > 1 {
            return Err(FormulaError::InvArity(fv.into_iter().collect()));
        }
        let phi = phi.normalize(b);
        let psi = psi.conj(b, &phi);
        Ok(InvCondition { phi, psi, rel })
    }

    /// The shared free variable, if any atom mentions one.
    pub fn variable(&self) -> Option<String> {
        self.phi.free_vars().into_iter().chain(self.psi.free_vars()).next()
    }

    pub fn negated(&self) -> InvCondition {
        InvCondition {
            rel: match self.rel {
                Rel::Gt1 => Rel::Eq1,
                Rel::Eq1 => Rel::Gt1,
            },
            ..self.clone()
        }
    }
}

/// Boolean combination of invariant conditions and closed pp formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BSentence {
    Inv(InvCondition),
    Closed(PPFormula),
    Not(Box<BSentence>),
    And(Box<BSentence>, Box<BSentence>),
    Or(Box<BSentence>, Box<BSentence>),
}

impl BSentence {
    #[allow(clippy::should_implement_trait)]
    pub fn not(s: BSentence) -> BSentence {
        BSentence::Not(Box::new(s))
    }

    pub fn and(a: BSentence, b: BSentence) -> BSentence {
        BSentence::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BSentence, b: BSentence) -> BSentence {
        BSentence::Or(Box::new(a), Box::new(b))
    }

    /// Number of leaves.
    pub fn literal_count(&self) -> usize {
        match self {
            BSentence::Inv(_) | BSentence::Closed(_) => 1,
            BSentence::Not(s) => s.literal_count(),
            BSentence::And(a, b) | BSentence::Or(a, b) => a.literal_count() + b.literal_count(),
        }
    }

    /// Normalizes every pp formula in the tree.
    pub fn normalize(&self, b: &Backend) -> BSentence {
        match self {
            BSentence::Inv(c) => {
                BSentence::Inv(InvCondition { phi: c.phi.normalize(b), psi: c.psi.normalize(b), rel: c.rel })
            }
            BSentence::Closed(f) => BSentence::Closed(f.normalize(b)),
            BSentence::Not(s) => BSentence::not(s.normalize(b)),
            BSentence::And(x, y) => BSentence::and(x.normalize(b), y.normalize(b)),
            BSentence::Or(x, y) => BSentence::or(x.normalize(b), y.normalize(b)),
        }
    }
}
