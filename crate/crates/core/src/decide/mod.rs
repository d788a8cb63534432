//! Decision of Boolean combinations of invariant conditions.
//!
//! Valuation backends are handled directly: each pair is reduced to one of
//! four local shapes and a catalog of witness modules is searched. Over a
//! global backend the pairs are first brought to normal form uniformly on
//! the pieces of a symbolic case split; inside a piece the local data only
//! depends on the exponents of a factor-free coprime base, so the search runs
//! over finitely many types of maximal ideals.

mod dnf;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{BSentence, FormulaError, InvCondition, PPFormula, Rel};
use crate::fv::{self, ConstructibleSet, FvError};
use crate::gamma::GammaElem;
use crate::oracle::{ModuleSpec, OneVarSubgroup};
use crate::qe::{self, ComparisonOracle, LocalOracle, LocalValuation, NormalForm1, PointOracle, QeError};
use crate::ring::{Backend, LocalizedValue, RingElem, RingError};

use dnf::{AtomTable, Conjunct};

/// Default cap on the number of leaves of a sentence.
pub const DEFAULT_LITERAL_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(
        "backend {0} has finite residue fields; deciding needs the hypothesis that the quotient B/M is infinite for every maximal ideal M"
    )]
    FiniteResidueField(String),
    #[error("sentence has {count} literals, above the cap of {cap}")]
    TooManyLiterals { count: usize, cap: usize },
    #[error("closed pp leaf {0} has free variables")]
    ClosedWithFreeVars(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Fv(#[from] FvError),
    #[error(transparent)]
    Qe(#[from] QeError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub type Result<T> = std::result::Result<T, DecideError>;

/// A local pair `[φ/ψ]` described by exponents of the maximal ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "shape")]
pub enum PairForm {
    /// `[x·p^a = 0 / x·p^c = 0]`, `c < a`.
    TorsionPair {
        a: i64,
        c: i64,
    },
    /// `[V_{p^delta}(x) / x·p^c = 0]`.
    DivTorsion {
        delta: i64,
        c: i64,
    },
    /// `[V_{p^d1}(x) / V_{p^d2}(x)]`, `d1 < d2`.
    DivDiv {
        d1: i64,
        d2: i64,
    },
    Trivial,
}

/// One side of a pair after torsion absorbs divisibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Tor(i64),
    Div(i64),
}

fn finite(v: LocalizedValue) -> i64 {
    v.finite().expect("nonzero element has finite value").max(0)
}

fn side(nf: &NormalForm1, val: &dyn LocalValuation) -> Side {
    if !nf.a.is_zero() {
        return Side::Tor(finite(val.value(&nf.a)));
    }
    match nf.delta.parts() {
        None => Side::Tor(0),
        Some((n, d)) => match val.value(n) - val.value(d) {
            LocalizedValue::Infinity => Side::Tor(0),
            LocalizedValue::Finite(e) => Side::Div(e.max(0)),
        },
    }
}

impl PairForm {
    /// Shape of the pair with normal forms `phi` and `psi ∧ phi` under `val`.
    pub fn from_normal_forms(phi: &NormalForm1, psi: &NormalForm1, val: &dyn LocalValuation) -> PairForm {
        match (side(phi, val), side(psi, val)) {
            (Side::Tor(a), Side::Tor(c)) if c < a => PairForm::TorsionPair { a, c },
            (Side::Div(delta), Side::Tor(c)) => PairForm::DivTorsion { delta, c },
            (Side::Div(d1), Side::Div(d2)) if d1 < d2 => PairForm::DivDiv { d1, d2 },
            _ => PairForm::Trivial,
        }
    }

    /// Largest exponent mentioned.
    pub fn bound(&self) -> i64 {
        match *self {
            PairForm::TorsionPair { a, c } => a.max(c),
            PairForm::DivTorsion { delta, c } => delta.max(c),
            PairForm::DivDiv { d1, d2 } => d1.max(d2),
            PairForm::Trivial => 0,
        }
    }

    /// Whether the pair has index greater than one in `m`.
    pub fn open_in(&self, m: &WitnessModule) -> bool {
        use WitnessModule::*;
        match (*self, *m) {
            (PairForm::Trivial, _) | (_, Zero) => false,
            (PairForm::TorsionPair { c, .. }, CyclicQuotient(k)) => k > c,
            (PairForm::TorsionPair { .. }, _) => false,
            (PairForm::DivTorsion { delta, c }, CyclicQuotient(k)) => k > c + delta,
            (PairForm::DivTorsion { .. }, _) => true,
            (PairForm::DivDiv { d1, .. }, CyclicQuotient(k)) => k > d1,
            (PairForm::DivDiv { .. }, FreeRankOne) => true,
            (PairForm::DivDiv { .. }, FractionField) => false,
        }
    }

    /// The two one-variable subgroups `(φ, ψ ∧ φ)` in the local backend `b`,
    /// as consumed by the oracle's index computation.
    pub fn subgroups(&self, b: &Backend) -> (OneVarSubgroup, OneVarSubgroup) {
        let p = b.prime().expect("valuation backend");
        let pw = |e: i64| b.pow(&p, e as u32);
        let tor = |e: i64| OneVarSubgroup { a: pw(e), delta: LocalizedValue::Finite(0) };
        let div = |e: i64| OneVarSubgroup { a: b.zero(), delta: LocalizedValue::Finite(e) };
        match *self {
            PairForm::TorsionPair { a, c } => (tor(a), tor(c)),
            PairForm::DivTorsion { delta, c } => (div(delta), tor(c)),
            PairForm::DivDiv { d1, d2 } => (div(d1), div(d2)),
            PairForm::Trivial => (div(0), div(0)),
        }
    }
}

impl fmt::Display for PairForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairForm::TorsionPair { a, c } => write!(f, "TorsionPair(p^{a}, p^{c})"),
            PairForm::DivTorsion { delta, c } => write!(f, "DivTorsion(v(p^{delta}), p^{c})"),
            PairForm::DivDiv { d1, d2 } => write!(f, "DivDiv(v(p^{d1}), v(p^{d2}))"),
            PairForm::Trivial => write!(f, "Trivial"),
        }
    }
}

/// Candidate models, searched in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessModule {
    /// Satisfies every constraint and opens nothing.
    Zero,
    FreeRankOne,
    FractionField,
    /// `A/p^k·A`.
    CyclicQuotient(i64),
}

impl WitnessModule {
    /// Catalog for exponent bound `n`: `A`, `K`, then `A/p^k` for
    /// `1 ≤ k ≤ 2n + 1`.
    pub fn catalog(n: i64) -> Vec<WitnessModule> {
        let mut out = vec![WitnessModule::FreeRankOne, WitnessModule::FractionField];
        out.extend((1..=2 * n + 1).map(WitnessModule::CyclicQuotient));
        out
    }

    /// The oracle's module descriptor over the local backend `b`.
    pub fn module_spec(&self, b: &Backend) -> Option<ModuleSpec> {
        Some(match *self {
            WitnessModule::Zero => return None,
            WitnessModule::FreeRankOne => ModuleSpec::FreeModule(1),
            WitnessModule::FractionField => ModuleSpec::FractionField,
            WitnessModule::CyclicQuotient(k) => ModuleSpec::CyclicQuotient(b.pow(&b.prime()?, k as u32)),
        })
    }
}

impl fmt::Display for WitnessModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessModule::Zero => write!(f, "zero"),
            WitnessModule::FreeRankOne => write!(f, "free:1"),
            WitnessModule::FractionField => write!(f, "field"),
            WitnessModule::CyclicQuotient(k) => write!(f, "cyclic:p^{k}"),
        }
    }
}

impl Serialize for WitnessModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// First catalog module opening `target` and closing every constraint.
pub fn satisfiable_conjunct(target: &PairForm, constraints: &[PairForm]) -> Option<WitnessModule> {
    let n = constraints.iter().map(PairForm::bound).fold(target.bound(), i64::max);
    WitnessModule::catalog(n).into_iter().find(|m| target.open_in(m) && constraints.iter().all(|c| !c.open_in(m)))
}

/// Normal forms of `φ` and `ψ ∧ φ` in the pair's variable.
fn pair_normal_forms(c: &InvCondition, cmp: &dyn ComparisonOracle) -> std::result::Result<[NormalForm1; 2], QeError> {
    let b = cmp.backend();
    let Some(x) = c.variable() else {
        return Ok([NormalForm1::full(b), NormalForm1::full(b)]);
    };
    let nf = |f: &PPFormula| qe::normal_form_1var(&qe::eliminate(f, cmp)?, &x, cmp);
    Ok([nf(&c.phi)?, nf(&c.psi)?])
}

/// Local shape of `[φ/ψ]` at the valuation `val`.
pub fn to_pair_form<V: LocalValuation>(phi: &PPFormula, psi: &PPFormula, val: &V) -> Result<PairForm> {
    let b = LocalValuation::backend(val);
    let c = InvCondition::new(b, phi.clone(), psi.clone(), Rel::Gt1)?;
    let [p, s] = pair_normal_forms(&c, val)?;
    Ok(PairForm::from_normal_forms(&p, &s, val))
}

/// Pairwise coprime squarefree non-units such that every nonzero element of
/// `elems` is, at each maximal ideal dividing a base element `q`, of value
/// equal to its exponent of `q`.
pub fn coprime_base(b: &Backend, elems: &[RingElem]) -> Result<Vec<RingElem>> {
    let mut set: Vec<RingElem> = Vec::new();
    for e in elems.iter().filter(|e| !e.is_zero()) {
        let mut cur = b.canonical(e);
        while !b.is_unit(&cur) {
            let q = b.squarefree_part(&cur)?;
            cur = b.div_exact(&cur, &q)?;
            set.push(q);
        }
    }
    set.sort();
    set.dedup();
    'refine: loop {
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                let (g, x, y) = b.cofactors(&set[i], &set[j]);
                if b.is_unit(&g) {
                    continue;
                }
                set.swap_remove(j);
                set.swap_remove(i);
                for e in [g, x, y] {
                    let e = b.canonical(&e);
                    if !b.is_unit(&e) && !set.contains(&e) {
                        set.push(e);
                    }
                }
                continue 'refine;
            }
        }
        break;
    }
    set.sort();
    Ok(set)
}

/// A class of maximal ideals with identical local data: those dividing a
/// base element, or those dividing no element at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointType {
    Divides(RingElem),
    Generic,
}

impl fmt::Display for PointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointType::Divides(q) => write!(f, "V({q})"),
            PointType::Generic => write!(f, "generic"),
        }
    }
}

/// Values at a maximal ideal dividing no element under consideration.
struct GenericPoint<'a>(&'a Backend);

impl LocalValuation for GenericPoint<'_> {
    fn backend(&self) -> &Backend {
        self.0
    }

    fn value(&self, e: &RingElem) -> LocalizedValue {
        if e.is_zero() {
            LocalizedValue::Infinity
        } else {
            LocalizedValue::Finite(0)
        }
    }
}

/// Whether every maximal ideal of type `t` lies in `guard`, through the
/// radical relation.
fn type_in_guard(b: &Backend, t: &PointType, guard: &ConstructibleSet) -> Result<bool> {
    Ok(match (guard, t) {
        (ConstructibleSet::Empty, _) => false,
        (ConstructibleSet::Whole, _) => true,
        (ConstructibleSet::Closed(_), PointType::Generic) => false,
        (ConstructibleSet::Open(_), PointType::Generic) => true,
        (ConstructibleSet::Closed(e), PointType::Divides(q)) => b.rad_member(e, q)?,
        (ConstructibleSet::Open(e), PointType::Divides(q)) => b.is_unit(&b.gcd(e, q)),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalPair {
    pub condition: String,
    pub form: PairForm,
    pub open: bool,
}

/// A model opening one target pair and closing the constraints.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub target: Option<String>,
    /// Piece of the spectrum (global backends).
    pub piece: Option<ConstructibleSet>,
    /// Class of maximal ideals inside the piece (global backends).
    #[serde(rename = "type", serialize_with = "display_opt")]
    pub point_type: Option<PointType>,
    /// A concrete maximal ideal of that class, when one could be named.
    #[serde(serialize_with = "display_opt")]
    pub prime: Option<RingElem>,
    pub module: WitnessModule,
    pub pairs: Vec<LocalPair>,
}

fn display_opt<T: fmt::Display, S: serde::Serializer>(x: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchTrace {
    pub disjunct: usize,
    pub target: String,
    pub pieces: usize,
    pub types: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Propositional tautology; no algebra was run.
    Tautology,
    /// Every disjunct of the negation has a target with no witness.
    Exhausted { trace: Vec<SearchTrace> },
    /// The negation holds in the direct sum of the components.
    Countermodel { disjunct: usize, components: Vec<Component> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Invalid,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub struct DecisionProblem {
    pub sentence: BSentence,
    pub backend: Backend,
    pub literal_cap: usize,
}

impl DecisionProblem {
    pub fn new(backend: Backend, sentence: BSentence) -> Result<DecisionProblem> {
        if !backend.residue_fields_infinite() {
            return Err(DecideError::FiniteResidueField(backend.name()));
        }
        Ok(DecisionProblem { sentence, backend, literal_cap: DEFAULT_LITERAL_CAP })
    }

    pub fn with_literal_cap(mut self, cap: usize) -> DecisionProblem {
        self.literal_cap = cap;
        self
    }
}

fn check_closed_leaves(s: &BSentence) -> Result<()> {
    match s {
        BSentence::Closed(f) if !f.free_vars().is_empty() => Err(DecideError::ClosedWithFreeVars(f.to_string())),
        BSentence::Closed(_) | BSentence::Inv(_) => Ok(()),
        BSentence::Not(x) => check_closed_leaves(x),
        BSentence::And(x, y) | BSentence::Or(x, y) => check_closed_leaves(x).and(check_closed_leaves(y)),
    }
}

/// Searches for a model opening `target` and closing `constraints`.
struct Search<'a> {
    b: &'a Backend,
    pairs: &'a [InvCondition],
    pieces: usize,
    types: usize,
}

fn pair_forms(nfs: &[[NormalForm1; 2]], val: &dyn LocalValuation) -> Vec<PairForm> {
    nfs.iter().map(|[p, s]| PairForm::from_normal_forms(p, s, val)).collect()
}

impl Search<'_> {
    fn component(
        &self,
        ids: &[usize],
        forms: &[PairForm],
        module: WitnessModule,
        piece: Option<ConstructibleSet>,
        point_type: Option<PointType>,
        prime: Option<RingElem>,
    ) -> Component {
        let pairs = ids
            .iter()
            .zip(forms)
            .map(|(&i, f)| LocalPair { condition: self.pairs[i].to_string(), form: *f, open: f.open_in(&module) })
            .collect();
        Component { target: Some(self.pairs[ids[0]].to_string()), piece, point_type, prime, module, pairs }
    }

    /// `ids[0]` is the target, the rest are constraints.
    fn run(&mut self, ids: &[usize]) -> Result<Option<Component>> {
        let b = self.b;
        let all_nfs = |cmp: &dyn ComparisonOracle| {
            ids.iter().map(|&i| pair_normal_forms(&self.pairs[i], cmp)).collect::<std::result::Result<Vec<_>, _>>()
        };
        if b.is_valuation() {
            let val = LocalOracle::new(b.clone());
            let nfs = all_nfs(&val)?;
            let forms = pair_forms(&nfs, &val);
            self.pieces += 1;
            self.types += 1;
            return Ok(satisfiable_conjunct(&forms[0], &forms[1..])
                .map(|m| self.component(ids, &forms, m, None, None, b.prime())));
        }
        for (guard, nfs) in fv::split_cases(b, |cmp| all_nfs(cmp))? {
            self.pieces += 1;
            let mut elems: Vec<RingElem> = guard.elem().into_iter().cloned().collect();
            for [p, s] in &nfs {
                for nf in [p, s] {
                    elems.push(nf.a.clone());
                    if let GammaElem::Finite { num, den } = &nf.delta {
                        elems.extend([num.clone(), den.clone()]);
                    }
                }
            }
            let base = coprime_base(b, &elems)?;
            let types = base.into_iter().map(PointType::Divides).chain([PointType::Generic]);
            for t in types {
                if !type_in_guard(b, &t, &guard)? {
                    continue;
                }
                self.types += 1;
                let forms = match &t {
                    PointType::Divides(q) => pair_forms(&nfs, &PointOracle::new(b.clone(), q.clone())),
                    PointType::Generic => pair_forms(&nfs, &GenericPoint(b)),
                };
                if let Some(m) = satisfiable_conjunct(&forms[0], &forms[1..]) {
                    let prime = match &t {
                        PointType::Divides(q) => irreducible_factor(b, q),
                        PointType::Generic => Some(b.fresh_irreducible(&elems)),
                    };
                    return Ok(Some(self.component(ids, &forms, m, Some(guard), Some(t), prime)));
                }
            }
        }
        Ok(None)
    }
}

/// Some irreducible factor of the squarefree `q`, if factoring succeeds.
fn irreducible_factor(b: &Backend, q: &RingElem) -> Option<RingElem> {
    match b.is_irreducible(q) {
        Ok(true) => Some(q.clone()),
        _ => b.factor(q).ok()?.into_iter().next().map(|(p, _)| p),
    }
}

/// Decides whether the sentence holds in every model.
pub fn decide(problem: &DecisionProblem) -> Result<Decision> {
    let b = &problem.backend;
    if !b.residue_fields_infinite() {
        return Err(DecideError::FiniteResidueField(b.name()));
    }
    let count = problem.sentence.literal_count();
    if count > problem.literal_cap {
        return Err(DecideError::TooManyLiterals { count, cap: problem.literal_cap });
    }
    check_closed_leaves(&problem.sentence)?;
    let sentence = problem.sentence.normalize(b);
    let mut table = AtomTable::default();
    let prop = dnf::skeleton(&sentence, &mut table);
    if dnf::is_tautology(&prop, table.pairs.len()) == Some(true) {
        return Ok(Decision { verdict: Verdict::Valid, certificate: Certificate::Tautology });
    }
    let mut search = Search { b, pairs: &table.pairs, pieces: 0, types: 0 };
    let mut trace = Vec::new();
    'disjuncts: for (d, Conjunct { open, closed }) in dnf::dnf(&prop, true).into_iter().enumerate() {
        let mut components = Vec::new();
        for &t in &open {
            let ids: Vec<usize> = [t].into_iter().chain(closed.iter().copied()).collect();
            (search.pieces, search.types) = (0, 0);
            match search.run(&ids)? {
                Some(c) => components.push(c),
                None => {
                    trace.push(SearchTrace {
                        disjunct: d,
                        target: table.pairs[t].to_string(),
                        pieces: search.pieces,
                        types: search.types,
                    });
                    continue 'disjuncts;
                }
            }
        }
        if components.is_empty() {
            components.push(Component {
                target: None,
                piece: None,
                point_type: None,
                prime: None,
                module: WitnessModule::Zero,
                pairs: closed
                    .iter()
                    .map(|&i| LocalPair { condition: table.pairs[i].to_string(), form: PairForm::Trivial, open: false })
                    .collect(),
            });
        }
        return Ok(Decision {
            verdict: Verdict::Invalid,
            certificate: Certificate::Countermodel { disjunct: d, components },
        });
    }
    Ok(Decision { verdict: Verdict::Valid, certificate: Certificate::Exhausted { trace } })
}
