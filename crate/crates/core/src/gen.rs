//! Seeded random generators for test corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Atom, BSentence, InvCondition, PPFormula, Rel, Term};
use crate::gamma::GammaElem;
use crate::oracle::{Element, Params};
use crate::ring::{Backend, Poly, RingElem};

/// Shape limits for generated pp formulas.
#[derive(Clone, Debug)]
pub struct Shape {
    pub max_bound: usize,
    pub max_atoms: usize,
    /// Largest exponent of a factor in a coefficient.
    pub max_exp: u32,
    /// Allow `V[v(n)/v(d)]` indices.
    pub fractional: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { max_bound: 3, max_atoms: 4, max_exp: 5, fractional: false }
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
    b: Backend,
    factors: Vec<RingElem>,
}

/// Default irreducibles used to build coefficients.
pub fn default_factors(b: &Backend) -> Vec<RingElem> {
    if let Some(p) = b.prime() {
        return vec![p];
    }
    let g = b.global();
    let parse = |s: &str| g.parse_elem(s).expect("literal");
    if b.is_poly() {
        vec![parse("T"), parse("T - 1"), parse("T^2 + 1")]
    } else {
        vec![parse("2"), parse("3"), parse("5")]
    }
}

impl Gen {
    pub fn new(b: &Backend, seed: u64) -> Gen {
        Gen::with_factors(b, seed, default_factors(b))
    }

    pub fn with_factors(b: &Backend, seed: u64, factors: Vec<RingElem>) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), b: b.clone(), factors }
    }

    pub fn backend(&self) -> &Backend {
        &self.b
    }

    pub fn factors(&self) -> &[RingElem] {
        &self.factors
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A unit of the backend.
    pub fn unit(&mut self) -> RingElem {
        let b = self.b.clone();
        loop {
            let c = self.rng.gen_range(1..=7i64) * if self.rng.gen_bool(0.5) { -1 } else { 1 };
            let u = if b.is_poly() && b.is_valuation() && self.rng.gen_bool(0.3) {
                let t = self.rng.gen_range(-3..=3i64);
                RingElem::poly(Poly::from_ints(&[c, t]))
            } else if b.is_poly() {
                RingElem::poly(Poly::from_ints(&[c]))
            } else if b.is_valuation() {
                RingElem::int(c)
            } else {
                RingElem::int(c.signum())
            };
            if b.is_unit(&u) {
                return u;
            }
        }
    }

    /// A nonzero element: a unit times a product of factor powers, each
    /// exponent at most `max_exp`.
    pub fn nonzero(&mut self, max_exp: u32) -> RingElem {
        let b = self.b.clone();
        let mut e = self.unit();
        for f in self.factors.clone() {
            if self.rng.gen_bool(0.5) {
                let k = self.rng.gen_range(0..=max_exp);
                e = b.mul(&e, &b.pow(&f, k));
            }
        }
        e
    }

    /// Nonzero with probability 9/10.
    pub fn elem(&mut self, max_exp: u32) -> RingElem {
        if self.rng.gen_bool(0.1) {
            self.b.zero()
        } else {
            self.nonzero(max_exp)
        }
    }

    pub fn gamma(&mut self, shape: &Shape) -> GammaElem {
        let b = self.b.clone();
        let n = self.nonzero(shape.max_exp);
        let d = if shape.fractional && self.rng.gen_bool(0.3) { self.nonzero(2) } else { b.one() };
        GammaElem::new(&b, &n, &d).expect("nonzero parts")
    }

    fn term(&mut self, vars: &[String], must: &str, shape: &Shape) -> Term {
        let mut t = Term::mono(must, self.nonzero(shape.max_exp));
        for x in vars {
            if x != must && self.rng.gen_bool(0.4) {
                let c = self.nonzero(shape.max_exp);
                t = t.add(&self.b, &Term::mono(x, c));
            }
        }
        t
    }

    fn atom(&mut self, vars: &[String], must: &str, shape: &Shape) -> Atom {
        let t = self.term(vars, must, shape);
        if self.rng.gen_bool(0.5) {
            Atom::Eq(t)
        } else {
            Atom::Vp(self.gamma(shape), t)
        }
    }

    /// `∃ bound . atoms` over the free variables `free`; every bound variable
    /// occurs in some atom.
    pub fn pp(&mut self, free: &[&str], shape: &Shape) -> PPFormula {
        let nb = self.rng.gen_range(0..=shape.max_bound);
        let bound: Vec<String> =
            ["u", "w", "s", "x"].iter().filter(|n| !free.contains(n)).take(nb).map(|s| s.to_string()).collect();
        let vars: Vec<String> = bound.iter().cloned().chain(free.iter().map(|s| s.to_string())).collect();
        if vars.is_empty() {
            return PPFormula::truth();
        }
        let na = self.rng.gen_range(nb.max(1)..=shape.max_atoms.max(nb).max(1));
        let mut atoms = Vec::new();
        for i in 0..na {
            let must = if i < nb { vars[i].clone() } else { vars.choose(&mut self.rng).unwrap().clone() };
            atoms.push(self.atom(&vars, &must, shape));
        }
        PPFormula::new(bound, atoms).normalize(&self.b)
    }

    /// An element of `B^dim`.
    pub fn element(&mut self, dim: usize) -> Element {
        (0..dim).map(|_| self.elem(6)).collect()
    }

    pub fn params(&mut self, vars: &[&str], dim: usize) -> Params {
        vars.iter().map(|x| (x.to_string(), self.element(dim))).collect()
    }

    /// An invariant condition in the variable `x`.
    pub fn inv(&mut self, shape: &Shape) -> InvCondition {
        let phi = self.pp(&["x"], shape);
        let psi = self.pp(&["x"], shape);
        let rel = if self.rng.gen_bool(0.5) { Rel::Gt1 } else { Rel::Eq1 };
        InvCondition::new(&self.b, phi, psi, rel).expect("one free variable")
    }

    /// A Boolean combination of depth at most `depth`.
    pub fn sentence(&mut self, depth: u32, shape: &Shape) -> BSentence {
        let pick = if depth == 0 { 0 } else { self.rng.gen_range(0..5) };
        match pick {
            0 | 1 => {
                if self.rng.gen_bool(0.15) {
                    BSentence::Closed(self.pp(&[], shape))
                } else {
                    BSentence::Inv(self.inv(shape))
                }
            }
            2 => BSentence::not(self.sentence(depth - 1, shape)),
            3 => BSentence::and(self.sentence(depth - 1, shape), self.sentence(depth - 1, shape)),
            _ => BSentence::or(self.sentence(depth - 1, shape), self.sentence(depth - 1, shape)),
        }
    }
}
