//! Guarded decomposition: eliminate quantifiers uniformly on pieces of the
//! maximal spectrum, forking whenever a local comparison depends on M.

use serde::Serialize;

use super::cs::{self, ConstructibleSet};
use super::FvError;
use crate::formula::{Atom, PPFormula};
use crate::gamma::GammaElem;
use crate::qe::{self, Cmp, ComparisonOracle, QeError};
use crate::ring::{Backend, RingElem};

/// Upper bound on elimination runs per decomposition.
pub const FORK_CAP: usize = 4096;

/// Answers comparisons that hold on the whole guard, splits otherwise.
pub struct SymbolicOracle<'a> {
    backend: &'a Backend,
    guard: &'a ConstructibleSet,
}

impl<'a> SymbolicOracle<'a> {
    pub fn new(backend: &'a Backend, guard: &'a ConstructibleSet) -> Self {
        SymbolicOracle { backend, guard }
    }
}

impl ComparisonOracle for SymbolicOracle<'_> {
    fn backend(&self) -> &Backend {
        self.backend
    }

    /// `v(r) ≤ v(s)` at M iff `(r:s) ∉ M`.
    fn leq_v(&self, r: &RingElem, s: &RingElem) -> Cmp {
        let b = self.backend;
        if r.is_zero() && s.is_zero() {
            return Cmp::Yes;
        }
        let e = b.colon(r, s).expect("not both zero");
        if cs::subseteq(b, self.guard, &ConstructibleSet::open(b, &e)) {
            Cmp::Yes
        } else if cs::subseteq(b, self.guard, &ConstructibleSet::closed(b, &e)) {
            Cmp::No
        } else {
            Cmp::Split(e)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub guard: ConstructibleSet,
    #[serde(serialize_with = "as_text")]
    pub body: PPFormula,
}

fn as_text<S: serde::Serializer>(f: &PPFormula, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(f)
}

/// Pieces whose guards partition the spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GuardedFormula {
    pub pieces: Vec<Piece>,
}

impl GuardedFormula {
    /// Pairwise disjoint guards covering the whole spectrum.
    pub fn is_partition(&self, b: &Backend) -> bool {
        let n = self.pieces.len();
        let disjoint = (0..n)
            .all(|i| (i + 1..n).all(|j| cs::is_empty(&cs::intersect(b, &self.pieces[i].guard, &self.pieces[j].guard))));
        let cover = self.pieces.iter().fold(ConstructibleSet::Empty, |acc, p| cs::union(b, &acc, &p.guard));
        disjoint && cover == ConstructibleSet::Whole
    }

    /// The piece whose guard contains the ideal of `p`.
    pub fn piece_at(&self, b: &Backend, p: &RingElem) -> Option<&Piece> {
        self.pieces.iter().find(|pc| pc.guard.contains(b, p))
    }
}

/// Drops `V_{n/d}` atoms that are trivial on the whole guard, i.e. when
/// `n` is a unit at every M in it.
fn simplify_on(b: &Backend, guard: &ConstructibleSet, body: &PPFormula) -> PPFormula {
    let atoms = body
        .atoms
        .iter()
        .filter(|a| match a {
            Atom::Vp(GammaElem::Finite { num, .. }, _) => !cs::subseteq(b, guard, &ConstructibleSet::open(b, num)),
            _ => true,
        })
        .cloned()
        .collect();
    PPFormula::new(body.bound.clone(), atoms).normalize(b)
}

/// Runs `run` under the symbolic oracle, forking the guard on every split,
/// and returns the nonempty leaves in depth-first order (open side first).
pub fn split_cases<T>(
    b: &Backend,
    mut run: impl FnMut(&SymbolicOracle) -> Result<T, QeError>,
) -> Result<Vec<(ConstructibleSet, T)>, FvError> {
    if b.is_valuation() {
        return Err(FvError::ValuationBackend(b.name()));
    }
    let mut leaves = Vec::new();
    let mut stack = vec![ConstructibleSet::Whole];
    let mut runs = 0;
    while let Some(guard) = stack.pop() {
        runs += 1;
        if runs > FORK_CAP {
            return Err(FvError::ForkCap(FORK_CAP));
        }
        match run(&SymbolicOracle::new(b, &guard)) {
            Ok(t) => leaves.push((guard, t)),
            Err(QeError::Split(e)) => {
                let no = cs::intersect(b, &guard, &ConstructibleSet::closed(b, &e));
                let yes = cs::intersect(b, &guard, &ConstructibleSet::open(b, &e));
                for g in [no, yes] {
                    if !cs::is_empty(&g) {
                        stack.push(g);
                    }
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(leaves)
}

/// Splits the spectrum into pieces on which elimination is uniform.
pub fn decompose(b: &Backend, f: &PPFormula) -> Result<GuardedFormula, FvError> {
    let f = f.normalize(b);
    let leaves = split_cases(b, |cmp| qe::eliminate(&f, cmp))?
        .into_iter()
        .map(|(guard, body)| Piece { body: simplify_on(b, &guard, &body), guard });
    let mut pieces: Vec<Piece> = Vec::new();
    for leaf in leaves {
        match pieces.iter_mut().find(|p| p.body == leaf.body) {
            Some(p) => p.guard = cs::union(b, &p.guard, &leaf.guard),
            None => pieces.push(leaf),
        }
    }
    Ok(GuardedFormula { pieces })
}

/// Reads a quantifier-free body in the localization at the irreducible `p`.
pub fn localize_body(b: &Backend, body: &PPFormula, p: &RingElem) -> Result<(Backend, PPFormula), FvError> {
    let local = b.localize_at(p)?;
    let atoms = body
        .atoms
        .iter()
        .map(|a| match a {
            Atom::Eq(t) => Ok(Atom::Eq(t.clone())),
            Atom::Vp(GammaElem::Infinity, t) => Ok(Atom::Vp(GammaElem::Infinity, t.clone())),
            Atom::Vp(GammaElem::Finite { num, den }, t) => Ok(Atom::Vp(GammaElem::new(&local, num, den)?, t.clone())),
        })
        .collect::<Result<Vec<_>, FvError>>()?;
    let f = PPFormula::new(body.bound.clone(), atoms).normalize(&local);
    Ok((local, f))
}

/// As [`localize_body`], after checking that `p` lies in the piece's guard.
pub fn localize_piece(b: &Backend, piece: &Piece, p: &RingElem) -> Result<(Backend, PPFormula), FvError> {
    if !piece.guard.contains(b, p) {
        return Err(FvError::OutsideGuard(p.to_string(), piece.guard.to_string()));
    }
    localize_body(b, &piece.body, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_pp;

    const ZB: Backend = Backend::Integers;

    #[test]
    fn single_piece_for_divisibility() {
        let f = parse_pp("E x . x*6 = y", &ZB).unwrap();
        let g = decompose(&ZB, &f).unwrap();
        assert_eq!(g.pieces.len(), 1);
        assert_eq!(g.pieces[0].guard, ConstructibleSet::Whole);
        assert_eq!(g.pieces[0].body.to_string(), "V[v(6)](y)");
    }

    #[test]
    fn two_equations_merge_to_one_piece() {
        let f = parse_pp("E x . x*2 = y & x*3 = z", &ZB).unwrap();
        let g = decompose(&ZB, &f).unwrap();
        assert!(g.is_partition(&ZB));
        assert_eq!(g.pieces.len(), 1);
        assert_eq!(g.pieces[0].body.to_string(), "y*3 - z*2 = 0");
    }

    #[test]
    fn truth_decomposes_trivially() {
        let g = decompose(&ZB, &PPFormula::truth()).unwrap();
        assert_eq!(g.pieces, vec![Piece { guard: ConstructibleSet::Whole, body: PPFormula::truth() }]);
    }

    #[test]
    fn localizing_a_body() {
        let body = parse_pp("V[v(6)](y)", &ZB).unwrap();
        let (_, at2) = localize_body(&ZB, &body, &RingElem::int(2)).unwrap();
        assert_eq!(at2.to_string(), "V[v(2)](y)");
        let (_, at5) = localize_body(&ZB, &body, &RingElem::int(5)).unwrap();
        assert!(at5.atoms.is_empty());
        let piece = Piece { guard: ConstructibleSet::closed(&ZB, &RingElem::int(3)), body };
        assert!(localize_piece(&ZB, &piece, &RingElem::int(2)).is_err());
    }

    #[test]
    fn valuation_backend_is_refused() {
        let b = Backend::local_integers(2.into()).unwrap();
        assert!(matches!(decompose(&b, &PPFormula::truth()), Err(FvError::ValuationBackend(_))));
    }
}
