//! Ground-truth evaluation of pp formulas in concrete modules.
//!
//! `V_δ` is read as divisibility: `V_δ(m)` iff `m ∈ a·M` for `v(a) = δ`.
//! Each formula becomes a linear system that is solved by diagonalization;
//! nothing here goes through the elimination engine.

mod snf;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::formula::{Atom, PPFormula};
use crate::ring::{Backend, LocalizedValue, RingElem, RingError};

pub use snf::{diagonalize, Diagonal, Matrix};

/// Systems with more unknowns are refused.
pub const MAX_UNKNOWNS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("variable '{0}' has no value")]
    Unassigned(String),
    #[error("index {0} is not realized by a ring element over a global backend")]
    FractionalIndex(String),
    #[error("system has {0} unknowns, above the cap of {1}")]
    TooLarge(usize, usize),
    #[error("value of '{0}' has {1} coordinates, module needs {2}")]
    Dimension(String, usize, usize),
    #[error("{0}")]
    Unsupported(String),
    #[error("bad module spec '{0}' (expected free:<rank>, cyclic:<elem>^<k>, cyclic:<elem> or field)")]
    BadSpec(String),
    #[error("witness failed verification")]
    WitnessMismatch,
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// A concrete module over a backend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    FreeModule(usize),
    /// `A / c·A` over a valuation backend.
    CyclicQuotient(RingElem),
    /// The fraction field of a valuation backend, as a module.
    FractionField,
}

impl ModuleSpec {
    /// Coordinates per module element.
    pub fn dim(&self) -> usize {
        match self {
            ModuleSpec::FreeModule(k) => *k,
            _ => 1,
        }
    }

    /// Parses `free:<rank>`, `cyclic:<elem>`, `cyclic:<elem>^<k>`, `field`.
    pub fn parse(text: &str, b: &Backend) -> Result<ModuleSpec> {
        let bad = || OracleError::BadSpec(text.to_string());
        let t = text.trim();
        if t == "field" {
            return Ok(ModuleSpec::FractionField);
        }
        if let Some(r) = t.strip_prefix("free:") {
            let k: usize = r.trim().parse().map_err(|_| bad())?;
            return if k >= 1 { Ok(ModuleSpec::FreeModule(k)) } else { Err(bad()) };
        }
        if let Some(c) = t.strip_prefix("cyclic:") {
            let c = b.parse_elem(c)?;
            if c.is_zero() || b.is_unit(&c) {
                return Err(bad());
            }
            return Ok(ModuleSpec::CyclicQuotient(c));
        }
        Err(bad())
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::FreeModule(k) => write!(f, "free:{k}"),
            ModuleSpec::CyclicQuotient(c) if c.is_atomic() => write!(f, "cyclic:{c}"),
            ModuleSpec::CyclicQuotient(c) => write!(f, "cyclic:({c})"),
            ModuleSpec::FractionField => write!(f, "field"),
        }
    }
}

/// A module element: one ring element per coordinate.
pub type Element = Vec<RingElem>;

/// Parameter assignment for free variables.
pub type Params = BTreeMap<String, Element>;

/// Parses `y=6,z=[1;2]` into parameters.
pub fn parse_params(text: &str, b: &Backend) -> Result<Params> {
    let mut out = Params::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut pieces = Vec::new();
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                pieces.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(&text[start..]);
    for p in pieces.into_iter().filter(|p| !p.trim().is_empty()) {
        let (name, val) =
            p.split_once('=').ok_or_else(|| OracleError::Unsupported(format!("parameter '{}' lacks '='", p.trim())))?;
        let val = val.trim();
        let coords = match val.strip_prefix('[').and_then(|v| v.strip_suffix(']')) {
            Some(inner) => inner.split(';').map(|s| b.parse_elem(s)).collect::<std::result::Result<Vec<_>, _>>()?,
            None => vec![b.parse_elem(val)?],
        };
        out.insert(name.trim().to_string(), coords);
    }
    Ok(out)
}

/// `ȳ·A = rhs`: one row per unknown, one column per condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub unknowns: Vec<String>,
    pub matrix: Matrix,
    pub rhs: Vec<Element>,
}

impl LinearSystem {
    pub fn conditions(&self) -> usize {
        self.rhs.len()
    }
}

/// Exponent `k` with `c = p^k·unit` in a valuation backend.
fn cyclic_exponent(b: &Backend, c: &RingElem) -> Result<i64> {
    if !b.is_valuation() {
        return Err(OracleError::Unsupported(format!("cyclic quotients need a valuation backend, not {}", b.name())));
    }
    match b.local_value(c) {
        LocalizedValue::Finite(k) if k > 0 => Ok(k),
        _ => Err(OracleError::BadSpec(c.to_string())),
    }
}

/// Ring element realizing the index of a V atom; `None` when the atom is
/// trivially true.
fn index_elem(b: &Backend, atom: &Atom) -> Result<Option<RingElem>> {
    let Atom::Vp(d, _) = atom else { unreachable!() };
    let Some((num, den)) = d.parts() else {
        return Ok(Some(b.zero()));
    };
    match b.prime() {
        Some(p) => {
            let k = b.local_value(num).finite().unwrap() - b.local_value(den).finite().unwrap();
            Ok((k > 0).then(|| b.pow(&p, k as u32)))
        }
        None => {
            if den.is_one() {
                Ok(Some(num.clone()))
            } else {
                Err(OracleError::FractionalIndex(d.to_string()))
            }
        }
    }
}

/// Builds the system for `f` at `params`: bound variables and one fresh
/// unknown per V atom are the unknowns.
pub fn to_linear_system(b: &Backend, f: &PPFormula, params: &Params, m: &ModuleSpec) -> Result<LinearSystem> {
    to_linear_system_capped(b, f, params, m, MAX_UNKNOWNS)
}

/// As [`to_linear_system`] with an explicit cap on the number of unknowns.
pub fn to_linear_system_capped(
    b: &Backend,
    f: &PPFormula,
    params: &Params,
    m: &ModuleSpec,
    cap: usize,
) -> Result<LinearSystem> {
    let dim = m.dim();
    let mut unknowns = f.bound.clone();
    let mut cols: Vec<(BTreeMap<usize, RingElem>, Element)> = Vec::new();
    for atom in &f.atoms {
        let mut col = BTreeMap::new();
        let mut rhs = vec![b.zero(); dim];
        for (x, c) in atom.term().iter() {
            if let Some(i) = unknowns.iter().position(|u| u == x) {
                col.insert(i, c.clone());
            } else {
                let val = params.get(x).ok_or_else(|| OracleError::Unassigned(x.clone()))?;
                if val.len() != dim {
                    return Err(OracleError::Dimension(x.clone(), val.len(), dim));
                }
                for (r, v) in rhs.iter_mut().zip(val) {
                    *r = b.sub(r, &b.mul(c, v));
                }
            }
        }
        if let Atom::Vp(..) = atom {
            let Some(a) = index_elem(b, atom)? else { continue };
            let z = format!("_z{}", unknowns.len());
            col.insert(unknowns.len(), b.neg(&a));
            unknowns.push(z);
        }
        cols.push((col, rhs));
    }
    if unknowns.len() > cap {
        return Err(OracleError::TooLarge(unknowns.len(), cap));
    }
    let matrix = (0..unknowns.len())
        .map(|i| cols.iter().map(|(c, _)| c.get(&i).cloned().unwrap_or_else(|| b.zero())).collect())
        .collect();
    let rhs = cols.into_iter().map(|(_, r)| r).collect();
    Ok(LinearSystem { unknowns, matrix, rhs })
}

/// Whether `e` is zero in the module (one coordinate).
fn is_zero_in(b: &Backend, e: &RingElem, k: Option<i64>) -> bool {
    match k {
        None => e.is_zero(),
        Some(k) => b.local_value(e) >= LocalizedValue::Finite(k),
    }
}

/// Solves `y·D = e` in one coordinate: `y = e/d`, or `None`.
fn solve_scalar(b: &Backend, d: &RingElem, e: &RingElem, k: Option<i64>) -> Option<RingElem> {
    if is_zero_in(b, e, k) {
        return Some(b.zero());
    }
    b.div_exact(e, d).ok()
}

/// Solves the system in `m`. Returns a witness (one element per unknown),
/// verified by substitution, or `None`.
pub fn solve(b: &Backend, sys: &LinearSystem, m: &ModuleSpec) -> Result<Option<Vec<Element>>> {
    let k = match m {
        ModuleSpec::FreeModule(_) => None,
        ModuleSpec::CyclicQuotient(c) => Some(cyclic_exponent(b, c)?),
        ModuleSpec::FractionField => {
            return Err(OracleError::Unsupported("evaluation in the fraction field".into()));
        }
    };
    let n = sys.unknowns.len();
    let cols = sys.conditions();
    let dim = m.dim();
    let dg = diagonalize(b, &sys.matrix, cols);
    let ds = dg.entries();
    let mut witness = vec![vec![b.zero(); dim]; n];
    for l in 0..dim {
        // e = rhs·Q in coordinate l.
        let e: Vec<RingElem> = (0..cols)
            .map(|j| (0..cols).fold(b.zero(), |acc, i| b.add(&acc, &b.mul(&sys.rhs[i][l], &dg.q[i][j]))))
            .collect();
        let mut z = vec![b.zero(); n];
        for (j, ej) in e.iter().enumerate() {
            let dj = ds.get(j).filter(|d| !d.is_zero());
            match dj {
                Some(d) => match solve_scalar(b, d, ej, k) {
                    Some(v) => z[j] = v,
                    None => return Ok(None),
                },
                None => {
                    if !is_zero_in(b, ej, k) {
                        return Ok(None);
                    }
                }
            }
        }
        for (i, w) in witness.iter_mut().enumerate() {
            w[l] = (0..n).fold(b.zero(), |acc, t| b.add(&acc, &b.mul(&z[t], &dg.p[t][i])));
        }
    }
    if !verify(b, sys, &witness, k) {
        return Err(OracleError::WitnessMismatch);
    }
    Ok(Some(witness))
}

/// Substitutes a candidate solution.
pub fn verify(b: &Backend, sys: &LinearSystem, y: &[Element], k: Option<i64>) -> bool {
    let dim = sys.rhs.first().map_or(0, |r| r.len());
    (0..sys.conditions()).all(|j| {
        (0..dim).all(|l| {
            let lhs = (0..sys.unknowns.len()).fold(b.zero(), |acc, i| b.add(&acc, &b.mul(&y[i][l], &sys.matrix[i][j])));
            is_zero_in(b, &b.sub(&lhs, &sys.rhs[j][l]), k)
        })
    })
}

pub fn solvable(b: &Backend, sys: &LinearSystem, m: &ModuleSpec) -> Result<bool> {
    Ok(solve(b, sys, m)?.is_some())
}

/// Truth of `f` at `params` in `m`.
pub fn eval_pp(b: &Backend, f: &PPFormula, params: &Params, m: &ModuleSpec) -> Result<bool> {
    eval_pp_capped(b, f, params, m, MAX_UNKNOWNS)
}

/// As [`eval_pp`] with an explicit cap on the number of unknowns.
pub fn eval_pp_capped(b: &Backend, f: &PPFormula, params: &Params, m: &ModuleSpec, cap: usize) -> Result<bool> {
    let sys = to_linear_system_capped(b, f, params, m, cap)?;
    solvable(b, &sys, m)
}

/// The subgroup `{x : x·a = 0} ∩ V_δ` with δ given by its local value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneVarSubgroup {
    pub a: RingElem,
    pub delta: LocalizedValue,
}

/// `p^e·M` with `e = None` for the zero subgroup; larger means smaller.
fn subgroup_exponent(b: &Backend, g: &OneVarSubgroup, m: &ModuleSpec) -> Result<Option<i64>> {
    let delta = match g.delta {
        LocalizedValue::Finite(d) => Some(d.max(0)),
        LocalizedValue::Infinity => None,
    };
    Ok(match m {
        ModuleSpec::CyclicQuotient(c) => {
            let k = cyclic_exponent(b, c)?;
            let ann = match b.local_value(&g.a) {
                LocalizedValue::Infinity => 0,
                LocalizedValue::Finite(va) => (k - va).clamp(0, k),
            };
            Some(ann.max(delta.unwrap_or(k).min(k)))
        }
        ModuleSpec::FreeModule(1) => {
            if g.a.is_zero() {
                delta
            } else {
                None
            }
        }
        ModuleSpec::FractionField => {
            if g.a.is_zero() && delta.is_some() {
                Some(0)
            } else {
                None
            }
        }
        ModuleSpec::FreeModule(_) => {
            return Err(OracleError::Unsupported("pair indices are computed in rank one".into()));
        }
    })
}

/// Whether `φ(M) ⊋ (ψ ∧ φ)(M)` in `m`, by closed-form valuation arithmetic.
pub fn pair_index_nontrivial(b: &Backend, phi: &OneVarSubgroup, psi: &OneVarSubgroup, m: &ModuleSpec) -> Result<bool> {
    if !b.is_valuation() {
        return Err(OracleError::Unsupported(format!("pair indices need a valuation backend, not {}", b.name())));
    }
    let ep = subgroup_exponent(b, phi, m)?;
    let es = subgroup_exponent(b, psi, m)?;
    let key = |e: Option<i64>| e.unwrap_or(i64::MAX);
    Ok(key(ep).max(key(es)) > key(ep))
}
