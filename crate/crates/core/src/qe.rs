//! Positive quantifier elimination for pp formulas over a valuation context.
//!
//! The engine never looks at a maximal ideal directly: every comparison of
//! local values goes through a [`ComparisonOracle`]. Concrete oracles answer
//! from a fixed localization; the symbolic oracle in `fv` answers from a
//! guard and reports a [`Cmp::Split`] when the guard does not decide.

use thiserror::Error;

use crate::formula::{Atom, PPFormula, Term};
use crate::gamma::{self, GammaElem};
use crate::ring::{Backend, LocalizedValue, RingElem};

/// Answer to "is v(r) ≤ v(s) at the current maximal ideal M?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cmp {
    Yes,
    No,
    /// Undecided: the answer is yes exactly on `Open(e)` (e ∉ M) and no on
    /// `Closed(e)`.
    Split(RingElem),
}

pub trait ComparisonOracle {
    /// Backend used for all coefficient arithmetic.
    fn backend(&self) -> &Backend;

    fn leq_v(&self, r: &RingElem, s: &RingElem) -> Cmp;

    /// `γ₁ ≤ γ₂`, reduced to `leq_v` by cross-multiplying.
    fn leq_gamma(&self, g1: &GammaElem, g2: &GammaElem) -> Cmp {
        let b = self.backend();
        match (g1.parts(), g2.parts()) {
            (_, None) => Cmp::Yes,
            (None, Some(_)) => Cmp::No,
            (Some((n1, d1)), Some((n2, d2))) => self.leq_v(&b.mul(n1, d2), &b.mul(n2, d1)),
        }
    }
}

/// A concrete valuation: the value of each ring element at a fixed M.
pub trait LocalValuation {
    fn backend(&self) -> &Backend;
    fn value(&self, e: &RingElem) -> LocalizedValue;
}

impl<T: LocalValuation> ComparisonOracle for T {
    fn backend(&self) -> &Backend {
        LocalValuation::backend(self)
    }

    fn leq_v(&self, r: &RingElem, s: &RingElem) -> Cmp {
        if self.value(r) <= self.value(s) {
            Cmp::Yes
        } else {
            Cmp::No
        }
    }
}

/// The valuation of a local backend (ℤ_(p), ℚ[T]_(p)).
#[derive(Clone, Debug)]
pub struct LocalOracle {
    backend: Backend,
}

impl LocalOracle {
    /// Panics when `backend` is not a valuation backend.
    pub fn new(backend: Backend) -> LocalOracle {
        assert!(backend.is_valuation(), "LocalOracle needs a valuation backend");
        LocalOracle { backend }
    }
}

impl LocalValuation for LocalOracle {
    fn backend(&self) -> &Backend {
        &self.backend
    }

    fn value(&self, e: &RingElem) -> LocalizedValue {
        self.backend.local_value(e)
    }
}

/// Global coefficients compared at the maximal ideal of an irreducible `p`.
#[derive(Clone, Debug)]
pub struct PointOracle {
    backend: Backend,
    prime: RingElem,
}

impl PointOracle {
    /// `backend` global, `prime` irreducible (not checked).
    pub fn new(backend: Backend, prime: RingElem) -> PointOracle {
        PointOracle { backend, prime }
    }
}

impl LocalValuation for PointOracle {
    fn backend(&self) -> &Backend {
        &self.backend
    }

    fn value(&self, e: &RingElem) -> LocalizedValue {
        self.backend.valuation_unchecked(&self.prime, e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QeError {
    #[error("comparison oracle could not decide; split on {0}")]
    Split(RingElem),
    #[error("infinite index in atom {0}")]
    InfiniteIndex(String),
    #[error("atom {0} is not of the form x*a = 0 or V[δ](x*b) in a single variable")]
    NotOneVariable(String),
}

/// `x·a = 0 ∧ V_δ(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm1 {
    pub a: RingElem,
    pub delta: GammaElem,
}

impl NormalForm1 {
    pub fn full(b: &Backend) -> NormalForm1 {
        NormalForm1 { a: b.zero(), delta: GammaElem::one(b) }
    }

    /// As a quantifier-free formula in `x`.
    pub fn to_pp(&self, b: &Backend, x: &str) -> PPFormula {
        let mut atoms = Vec::new();
        if !self.a.is_zero() {
            atoms.push(Atom::Eq(Term::mono(x, self.a.clone())));
        }
        if !self.delta.is_one() {
            atoms.push(Atom::Vp(self.delta.clone(), Term::var(b, x)));
        }
        PPFormula::new(vec![], atoms).normalize(b)
    }
}

fn lift(c: Cmp) -> Result<bool, QeError> {
    match c {
        Cmp::Yes => Ok(true),
        Cmp::No => Ok(false),
        Cmp::Split(e) => Err(QeError::Split(e)),
    }
}

/// An atom containing `x`, read as `x·r − t` (equation or congruence).
struct XAtom {
    idx: usize,
    delta: Option<GammaElem>,
    r: RingElem,
    t: Term,
}

fn x_atoms(b: &Backend, f: &PPFormula, x: &str) -> Vec<XAtom> {
    f.atoms
        .iter()
        .enumerate()
        .filter(|(_, a)| a.term().contains(x))
        .map(|(idx, a)| {
            let (r, rest) = a.term().split(b, x);
            let delta = match a {
                Atom::Eq(_) => None,
                Atom::Vp(d, _) => Some(d.clone()),
            };
            XAtom { idx, delta, r, t: rest.neg(b) }
        })
        .collect()
}

/// First index whose `r` has minimal value.
fn v_minimal(cmp: &dyn ComparisonOracle, xs: &[&XAtom]) -> Result<usize, QeError> {
    let mut best = 0;
    for i in 1..xs.len() {
        if !lift(cmp.leq_v(&xs[best].r, &xs[i].r))? {
            best = i;
        }
    }
    Ok(best)
}

/// One rewrite on the innermost bound variable. Returns `None` when no
/// bound variable is left.
fn step(f: &PPFormula, cmp: &dyn ComparisonOracle) -> Result<Option<PPFormula>, QeError> {
    let b = cmp.backend();
    let Some(x) = f.bound.last().cloned() else {
        return Ok(None);
    };
    let xs = x_atoms(b, f, &x);
    let mut out = f.clone();
    let eqs: Vec<&XAtom> = xs.iter().filter(|a| a.delta.is_none()).collect();
    let congs: Vec<&XAtom> = xs.iter().filter(|a| a.delta.is_some()).collect();

    if xs.is_empty() {
        out.bound.pop();
        return Ok(Some(out));
    }

    // t0·r1' − t1·r0' with r0 = g·r0', r1 = g·r1'.
    let cross = |e0: &XAtom, e1: &XAtom| {
        let (_, r0c, r1c) = b.cofactors(&e0.r, &e1.r);
        e0.t.scale(b, &r1c).sub(b, &e1.t.scale(b, &r0c))
    };

    if eqs.len() >= 2 {
        let k = v_minimal(cmp, &eqs)?;
        let e0 = eqs[k];
        let e1 = eqs.iter().copied().find(|e| e.idx != e0.idx).expect("two equations");
        out.atoms[e1.idx] = Atom::Eq(cross(e0, e1));
        return Ok(Some(out.normalize_keep_bound(b)));
    }

    if let Some(&e0) = eqs.first() {
        if let Some(&c1) = congs.first() {
            let d1 = c1.delta.as_ref().unwrap();
            out.atoms[c1.idx] = if lift(cmp.leq_v(&e0.r, &c1.r))? {
                Atom::Vp(d1.clone(), cross(e0, c1))
            } else {
                let (_, r0c, _) = b.cofactors(&e0.r, &c1.r);
                let idx = gamma::mul(b, d1, &gamma::v(b, &r0c));
                Atom::Vp(idx, cross(c1, e0))
            };
        } else {
            out.atoms[e0.idx] = Atom::Vp(gamma::v(b, &e0.r), e0.t.clone());
        }
        return Ok(Some(out.normalize_keep_bound(b)));
    }

    for c in &congs {
        let d = c.delta.as_ref().unwrap();
        if lift(cmp.leq_gamma(d, &gamma::v(b, &c.r)))? {
            out.atoms[c.idx] = Atom::Vp(d.clone(), c.t.clone());
            return Ok(Some(out.normalize_keep_bound(b)));
        }
    }
    let ratio = |c: &XAtom| gamma::div(b, c.delta.as_ref().unwrap(), &gamma::v(b, &c.r)).expect("nonzero r");
    let mut best = 0;
    for i in 1..congs.len() {
        if !lift(cmp.leq_gamma(&ratio(congs[i]), &ratio(congs[best])))? {
            best = i;
        }
    }
    let c = congs[best];
    out.atoms[c.idx] = Atom::Eq(f.atoms[c.idx].term().clone());
    Ok(Some(out.normalize_keep_bound(b)))
}

impl PPFormula {
    /// Normalization that keeps the bound list, so a rewrite never drops the
    /// variable being eliminated out from under the step counter.
    fn normalize_keep_bound(&self, b: &Backend) -> PPFormula {
        let mut n = self.normalize(b);
        n.bound = self.bound.clone();
        n
    }
}

fn check_indices(f: &PPFormula) -> Result<(), QeError> {
    for a in &f.atoms {
        if let Atom::Vp(GammaElem::Infinity, _) = a {
            return Err(QeError::InfiniteIndex(a.to_string()));
        }
    }
    Ok(())
}

/// Runs at most `budget` rewrite steps; returns the formula reached and the
/// number of steps taken.
pub fn eliminate_steps(
    f: &PPFormula,
    cmp: &dyn ComparisonOracle,
    budget: usize,
) -> Result<(PPFormula, usize), QeError> {
    check_indices(f)?;
    let b = cmp.backend();
    let mut cur = f.normalize_keep_bound(b);
    let mut n = 0;
    while n < budget {
        match step(&cur, cmp)? {
            None => break,
            Some(next) => {
                cur = next;
                n += 1;
            }
        }
    }
    let cur = cur.normalize(b);
    // Over a concrete valuation ring a finished one-variable result is
    // returned as `x·a = 0 ∧ V_δ(x)`.
    let fv = cur.free_vars();
    if b.is_valuation() && cur.bound.is_empty() && fv.len() == 1 {
        let x = fv.first().unwrap();
        return Ok((normal_form_1var(&cur, x, cmp)?.to_pp(b, x), n));
    }
    Ok((cur, n))
}

/// Eliminates every bound variable.
pub fn eliminate(f: &PPFormula, cmp: &dyn ComparisonOracle) -> Result<PPFormula, QeError> {
    Ok(eliminate_steps(f, cmp, usize::MAX)?.0)
}

/// Reads a quantifier-free formula in the single variable `x` as
/// `x·a = 0 ∧ V_δ(x)`.
pub fn normal_form_1var(f: &PPFormula, x: &str, cmp: &dyn ComparisonOracle) -> Result<NormalForm1, QeError> {
    let b = cmp.backend();
    let f = f.normalize(b);
    check_indices(&f)?;
    let mut a = b.zero();
    let mut delta: Option<GammaElem> = None;
    for atom in &f.atoms {
        let t = atom.term();
        let (c, rest) = t.split(b, x);
        if !rest.is_zero() || !f.bound.is_empty() {
            return Err(QeError::NotOneVariable(atom.to_string()));
        }
        match atom {
            Atom::Eq(_) => a = b.gcd(&a, &c),
            Atom::Vp(d, _) => {
                let vc = gamma::v(b, &c);
                if lift(cmp.leq_gamma(d, &vc))? {
                    continue;
                }
                let g = gamma::div(b, d, &vc).expect("nonzero coefficient");
                delta = Some(match delta {
                    None => g,
                    Some(cur) => {
                        if lift(cmp.leq_gamma(&g, &cur))? {
                            cur
                        } else {
                            g
                        }
                    }
                });
            }
        }
    }
    Ok(NormalForm1 { a, delta: delta.unwrap_or_else(|| GammaElem::one(b)) })
}
