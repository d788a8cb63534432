//! Propositional layer: atoms, tautology check and disjunctive normal form.

use crate::formula::{BSentence, InvCondition, Rel};

/// Propositional skeleton; `Lit(i)` asserts that pair `i` has index > 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Prop {
    Const(bool),
    Lit(usize),
    Not(Box<Prop>),
    And(Vec<Prop>),
    Or(Vec<Prop>),
}

/// Distinct pairs `(φ, ψ)` in order of first appearance.
#[derive(Default)]
pub(crate) struct AtomTable {
    pub pairs: Vec<InvCondition>,
}

impl AtomTable {
    fn index(&mut self, c: &InvCondition) -> usize {
        let key = InvCondition { rel: Rel::Gt1, ..c.clone() };
        match self.pairs.iter().position(|p| *p == key) {
            Some(i) => i,
            None => {
                self.pairs.push(key);
                self.pairs.len() - 1
            }
        }
    }
}

/// Skeleton of `s`; closed pp leaves are true (zero satisfies every pp
/// formula), pairs without a free variable have index one.
pub(crate) fn skeleton(s: &BSentence, table: &mut AtomTable) -> Prop {
    match s {
        BSentence::Closed(_) => Prop::Const(true),
        BSentence::Inv(c) => {
            let gt = if c.variable().is_none() { Prop::Const(false) } else { Prop::Lit(table.index(c)) };
            match c.rel {
                Rel::Gt1 => gt,
                Rel::Eq1 => Prop::Not(Box::new(gt)),
            }
        }
        BSentence::Not(x) => Prop::Not(Box::new(skeleton(x, table))),
        BSentence::And(x, y) => Prop::And(vec![skeleton(x, table), skeleton(y, table)]),
        BSentence::Or(x, y) => Prop::Or(vec![skeleton(x, table), skeleton(y, table)]),
    }
}

impl Prop {
    pub fn eval(&self, assign: u64) -> bool {
        match self {
            Prop::Const(c) => *c,
            Prop::Lit(i) => assign >> i & 1 == 1,
            Prop::Not(x) => !x.eval(assign),
            Prop::And(xs) => xs.iter().all(|x| x.eval(assign)),
            Prop::Or(xs) => xs.iter().any(|x| x.eval(assign)),
        }
    }
}

/// Largest atom count for which the truth-table shortcut runs.
pub(crate) const TRUTH_TABLE_ATOMS: usize = 16;

/// `Some(true)` for a tautology, `Some(false)` otherwise, `None` when the
/// table would be too large.
pub(crate) fn is_tautology(p: &Prop, atoms: usize) -> Option<bool> {
    (atoms <= TRUTH_TABLE_ATOMS).then(|| (0..1u64 << atoms).all(|a| p.eval(a)))
}

/// A conjunction of literals: pairs forced open (`> 1`) and pairs forced
/// closed (`= 1`), both sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Conjunct {
    pub open: Vec<usize>,
    pub closed: Vec<usize>,
}

/// DNF of `p` (or of its negation), dropping contradictory and duplicate
/// conjuncts.
pub(crate) fn dnf(p: &Prop, negate: bool) -> Vec<Conjunct> {
    fn go(p: &Prop, neg: bool) -> Vec<(Vec<usize>, Vec<usize>)> {
        match (p, neg) {
            (Prop::Const(c), _) => {
                if *c != neg {
                    vec![(vec![], vec![])]
                } else {
                    vec![]
                }
            }
            (Prop::Lit(i), false) => vec![(vec![*i], vec![])],
            (Prop::Lit(i), true) => vec![(vec![], vec![*i])],
            (Prop::Not(x), _) => go(x, !neg),
            (Prop::And(xs), false) | (Prop::Or(xs), true) => xs.iter().fold(vec![(vec![], vec![])], |acc, x| {
                let rhs = go(x, neg);
                acc.iter()
                    .flat_map(|(o, c)| {
                        rhs.iter().map(move |(o2, c2)| ([o.as_slice(), o2].concat(), [c.as_slice(), c2].concat()))
                    })
                    .collect()
            }),
            (Prop::Or(xs), false) | (Prop::And(xs), true) => xs.iter().flat_map(|x| go(x, neg)).collect(),
        }
    }
    let mut out: Vec<Conjunct> = go(p, negate)
        .into_iter()
        .filter_map(|(mut open, mut closed)| {
            open.sort_unstable();
            open.dedup();
            closed.sort_unstable();
            closed.dedup();
            (!open.iter().any(|i| closed.binary_search(i).is_ok())).then_some(Conjunct { open, closed })
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    out.retain(|c| seen.insert(c.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(i: usize) -> Prop {
        Prop::Lit(i)
    }

    fn not(p: Prop) -> Prop {
        Prop::Not(Box::new(p))
    }

    #[test]
    fn excluded_middle_is_a_tautology() {
        let p = Prop::Or(vec![lit(0), not(lit(0))]);
        assert_eq!(is_tautology(&p, 1), Some(true));
        assert!(dnf(&p, true).is_empty());
        assert_eq!(is_tautology(&lit(0), 1), Some(false));
    }

    #[test]
    fn dnf_of_negated_conjunction() {
        let p = Prop::And(vec![lit(0), not(lit(1))]);
        let d = dnf(&p, true);
        assert_eq!(d, vec![Conjunct { open: vec![], closed: vec![0] }, Conjunct { open: vec![1], closed: vec![] }]);
        let d = dnf(&Prop::And(vec![Prop::Or(vec![lit(0), lit(1)]), lit(2)]), false);
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|c| c.open.contains(&2)));
    }

    #[test]
    fn dnf_agrees_with_truth_table() {
        let p = Prop::Or(vec![
            Prop::And(vec![lit(0), not(lit(1))]),
            not(Prop::Or(vec![lit(2), Prop::And(vec![lit(1), lit(0)])])),
        ]);
        let d = dnf(&p, false);
        for a in 0..8u64 {
            let holds =
                d.iter().any(|c| c.open.iter().all(|&i| a >> i & 1 == 1) && c.closed.iter().all(|&i| a >> i & 1 == 0));
            assert_eq!(holds, p.eval(a), "assignment {a:03b}");
        }
    }
}
