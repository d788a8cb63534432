//! The group of divisibility Γ(B): nonzero fractions modulo units, ordered
//! by divisibility, plus a top element ∞ = v(0).

use std::fmt;

use serde::Serialize;

use crate::ring::{Backend, LocalizedValue, RingElem, RingError};

/// A coset `num/den · U`, with `num`, `den` canonical and coprime, or ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GammaElem {
    Finite { num: RingElem, den: RingElem },
    Infinity,
}

impl GammaElem {
    /// `v(n) / v(d)`, reduced. `n = 0` gives ∞.
    pub fn new(b: &Backend, n: &RingElem, d: &RingElem) -> Result<GammaElem, RingError> {
        b.check(n)?;
        b.check(d)?;
        if d.is_zero() {
            return Err(RingError::ZeroInput("Γ denominator"));
        }
        if n.is_zero() {
            return Ok(GammaElem::Infinity);
        }
        Ok(GammaElem::reduced(b, n, d))
    }

    fn reduced(b: &Backend, n: &RingElem, d: &RingElem) -> GammaElem {
        let (_, n1, d1) = b.cofactors(n, d);
        GammaElem::Finite { num: b.canonical(&n1), den: b.canonical(&d1) }
    }

    pub fn one(b: &Backend) -> GammaElem {
        GammaElem::Finite { num: b.one(), den: b.one() }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, GammaElem::Finite { num, den } if num.is_one() && den.is_one())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, GammaElem::Infinity)
    }

    /// Numerator and denominator, `None` for ∞.
    pub fn parts(&self) -> Option<(&RingElem, &RingElem)> {
        match self {
            GammaElem::Finite { num, den } => Some((num, den)),
            GammaElem::Infinity => None,
        }
    }

    /// Whether the value lies in Γ⁺, i.e. is `v(a)` for a ring element.
    pub fn is_integral(&self) -> bool {
        self.parts().is_none_or(|(_, d)| d.is_one())
    }
}

/// `v(a) = a·U`.
pub fn v(b: &Backend, a: &RingElem) -> GammaElem {
    if a.is_zero() {
        GammaElem::Infinity
    } else {
        GammaElem::Finite { num: b.canonical(a), den: b.one() }
    }
}

pub fn mul(b: &Backend, x: &GammaElem, y: &GammaElem) -> GammaElem {
    match (x, y) {
        (GammaElem::Finite { num: n1, den: d1 }, GammaElem::Finite { num: n2, den: d2 }) => {
            GammaElem::reduced(b, &b.mul(n1, n2), &b.mul(d1, d2))
        }
        _ => GammaElem::Infinity,
    }
}

/// Group inverse; ∞ has none.
pub fn inv(x: &GammaElem) -> Option<GammaElem> {
    match x {
        GammaElem::Finite { num, den } => Some(GammaElem::Finite { num: den.clone(), den: num.clone() }),
        GammaElem::Infinity => None,
    }
}

/// `x / y`; `None` when `y` is ∞.
pub fn div(b: &Backend, x: &GammaElem, y: &GammaElem) -> Option<GammaElem> {
    Some(mul(b, x, &inv(y)?))
}

/// gcd coset, extended to fractions by clearing denominators.
pub fn meet(b: &Backend, x: &GammaElem, y: &GammaElem) -> GammaElem {
    match (x, y) {
        (GammaElem::Infinity, o) | (o, GammaElem::Infinity) => o.clone(),
        (GammaElem::Finite { num: a, den: s }, GammaElem::Finite { num: c, den: t }) => {
            let g = b.gcd(&b.mul(a, t), &b.mul(c, s));
            GammaElem::reduced(b, &g, &b.mul(s, t))
        }
    }
}

/// lcm coset, extended to fractions by clearing denominators.
pub fn join(b: &Backend, x: &GammaElem, y: &GammaElem) -> GammaElem {
    match (x, y) {
        (GammaElem::Infinity, _) | (_, GammaElem::Infinity) => GammaElem::Infinity,
        (GammaElem::Finite { num: a, den: s }, GammaElem::Finite { num: c, den: t }) => {
            let l = b.lcm(&b.mul(a, t), &b.mul(c, s));
            GammaElem::reduced(b, &l, &b.mul(s, t))
        }
    }
}

/// `x ≤ y` in the divisibility order.
pub fn leq(b: &Backend, x: &GammaElem, y: &GammaElem) -> bool {
    match (x, y) {
        (_, GammaElem::Infinity) => true,
        (GammaElem::Infinity, _) => false,
        (GammaElem::Finite { num: n1, den: d1 }, GammaElem::Finite { num: n2, den: d2 }) => {
            b.divides(&b.mul(n1, d2), &b.mul(n2, d1))
        }
    }
}

/// Image in the value group of the localization at the irreducible `p`.
pub fn localize(b: &Backend, x: &GammaElem, p: &RingElem) -> Result<LocalizedValue, RingError> {
    if !b.global().is_irreducible(p)? {
        return Err(RingError::NotIrreducible(p.to_string()));
    }
    Ok(localize_unchecked(b, x, p))
}

pub fn localize_unchecked(b: &Backend, x: &GammaElem, p: &RingElem) -> LocalizedValue {
    match x {
        GammaElem::Infinity => LocalizedValue::Infinity,
        GammaElem::Finite { num, den } => b.valuation_unchecked(p, num) - b.valuation_unchecked(p, den),
    }
}

/// Image in the value group of a valuation backend.
pub fn local_value(b: &Backend, x: &GammaElem) -> LocalizedValue {
    match x {
        GammaElem::Infinity => LocalizedValue::Infinity,
        GammaElem::Finite { num, den } => b.local_value(num) - b.local_value(den),
    }
}

impl fmt::Display for GammaElem {
    /// `v(n)`, `v(n)/v(d)` or `inf`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaElem::Infinity => write!(f, "inf"),
            GammaElem::Finite { num, den } if den.is_one() => write!(f, "v({num})"),
            GammaElem::Finite { num, den } => write!(f, "v({num})/v({den})"),
        }
    }
}

impl Serialize for GammaElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: i64) -> RingElem {
        RingElem::int(n)
    }

    const ZB: Backend = Backend::Integers;

    fn vz(n: i64) -> GammaElem {
        v(&ZB, &z(n))
    }

    #[test]
    fn v_examples() {
        assert_eq!(vz(-12), GammaElem::Finite { num: z(12), den: z(1) });
        assert_eq!(vz(0), GammaElem::Infinity);
        assert_eq!(mul(&ZB, &vz(2), &vz(3)), vz(6));
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(meet(&ZB, &vz(4), &vz(6)), vz(2));
        assert_eq!(join(&ZB, &vz(4), &vz(6)), vz(12));
        assert_eq!(meet(&ZB, &vz(10), &GammaElem::Infinity), vz(10));
        assert!(leq(&ZB, &vz(2), &vz(4)));
        assert!(!leq(&ZB, &vz(2), &vz(3)));
        assert!(!leq(&ZB, &vz(3), &vz(2)));
        assert!(leq(&ZB, &vz(9), &vz(9)));
    }

    #[test]
    fn localize_examples() {
        assert_eq!(localize(&ZB, &vz(12), &z(2)).unwrap(), LocalizedValue::Finite(2));
        assert_eq!(localize(&ZB, &vz(12), &z(5)).unwrap(), LocalizedValue::Finite(0));
        let q = GammaElem::new(&ZB, &z(3), &z(8)).unwrap();
        assert_eq!(localize(&ZB, &q, &z(2)).unwrap(), LocalizedValue::Finite(-3));
        assert!(localize(&ZB, &q, &z(6)).is_err());
    }

    #[test]
    fn fraction_reduction_and_display() {
        let g = GammaElem::new(&ZB, &z(4), &z(2)).unwrap();
        assert_eq!(g, vz(2));
        assert_eq!(GammaElem::new(&ZB, &z(-6), &z(4)).unwrap().to_string(), "v(3)/v(2)");
        let z2 = Backend::local_integers(2.into()).unwrap();
        assert_eq!(GammaElem::new(&z2, &z(24), &z(3)).unwrap().to_string(), "v(8)");
    }

    fn gam() -> impl Strategy<Value = GammaElem> {
        (1i64..200, 1i64..50).prop_map(|(n, d)| GammaElem::new(&ZB, &z(n), &z(d)).unwrap())
    }

    proptest! {
        #[test]
        fn product_is_meet_times_join(a in 1i64..500, c in 1i64..500) {
            let lhs = mul(&ZB, &vz(a), &vz(c));
            let rhs = mul(&ZB, &meet(&ZB, &vz(a), &vz(c)), &join(&ZB, &vz(a), &vz(c)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn lattice_laws(x in gam(), y in gam(), w in gam()) {
            prop_assert_eq!(meet(&ZB, &x, &x), x.clone());
            prop_assert_eq!(meet(&ZB, &x, &y), meet(&ZB, &y, &x));
            prop_assert_eq!(join(&ZB, &x, &y), join(&ZB, &y, &x));
            prop_assert_eq!(meet(&ZB, &meet(&ZB, &x, &y), &w), meet(&ZB, &x, &meet(&ZB, &y, &w)));
            prop_assert_eq!(join(&ZB, &join(&ZB, &x, &y), &w), join(&ZB, &x, &join(&ZB, &y, &w)));
            prop_assert_eq!(meet(&ZB, &x, &join(&ZB, &x, &y)), x.clone());
            prop_assert_eq!(join(&ZB, &x, &meet(&ZB, &x, &y)), x);
        }

        #[test]
        fn order_is_local(x in gam(), y in gam()) {
            let mut primes: Vec<RingElem> = Vec::new();
            for g in [&x, &y] {
                let (n, d) = g.parts().unwrap();
                for e in [n, d] {
                    if !e.is_one() {
                        primes.extend(ZB.factor(e).unwrap().into_iter().map(|(p, _)| p));
                    }
                }
            }
            let local = primes.iter().all(|p| localize_unchecked(&ZB, &x, p) <= localize_unchecked(&ZB, &y, p));
            prop_assert_eq!(leq(&ZB, &x, &y), local);
        }

        #[test]
        fn localize_is_a_lattice_homomorphism(x in gam(), y in gam(), pi in 0usize..4) {
            let p = z([2, 3, 5, 7][pi]);
            let lx = localize_unchecked(&ZB, &x, &p);
            let ly = localize_unchecked(&ZB, &y, &p);
            prop_assert_eq!(localize_unchecked(&ZB, &mul(&ZB, &x, &y), &p), lx + ly);
            prop_assert_eq!(localize_unchecked(&ZB, &meet(&ZB, &x, &y), &p), lx.min(ly));
            prop_assert_eq!(localize_unchecked(&ZB, &join(&ZB, &x, &y), &p), lx.max(ly));
        }
    }
}
