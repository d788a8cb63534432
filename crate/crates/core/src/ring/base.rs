//! Elements of the two global Euclidean base rings, ℤ and ℚ[T].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;

/// A value of ℤ or ℚ[T]. Mixing the two kinds in one operation is a caller
/// bug and panics; `Backend::check` guards the public entry points.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Base {
    Int(BigInt),
    Poly(Poly),
}

fn mismatch() -> ! {
    panic!("mixed integer and polynomial operands")
}

impl Base {
    pub fn int(n: i64) -> Base {
        Base::Int(BigInt::from(n))
    }

    pub fn is_int(&self) -> bool {
        matches!(self, Base::Int(_))
    }

    pub fn zero_like(&self) -> Base {
        match self {
            Base::Int(_) => Base::Int(BigInt::zero()),
            Base::Poly(_) => Base::Poly(Poly::zero()),
        }
    }

    pub fn one_like(&self) -> Base {
        match self {
            Base::Int(_) => Base::Int(BigInt::one()),
            Base::Poly(_) => Base::Poly(Poly::one()),
        }
    }

    pub fn from_i64_like(&self, n: i64) -> Base {
        match self {
            Base::Int(_) => Base::int(n),
            Base::Poly(_) => Base::Poly(Poly::from_int(n)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Base::Int(n) => n.is_zero(),
            Base::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Base::Int(n) => n.is_one(),
            Base::Poly(p) => p.is_one(),
        }
    }

    pub fn add(&self, o: &Base) -> Base {
        match (self, o) {
            (Base::Int(a), Base::Int(b)) => Base::Int(a + b),
            (Base::Poly(a), Base::Poly(b)) => Base::Poly(a + b),
            _ => mismatch(),
        }
    }

    pub fn sub(&self, o: &Base) -> Base {
        match (self, o) {
            (Base::Int(a), Base::Int(b)) => Base::Int(a - b),
            (Base::Poly(a), Base::Poly(b)) => Base::Poly(a - b),
            _ => mismatch(),
        }
    }

    pub fn mul(&self, o: &Base) -> Base {
        match (self, o) {
            (Base::Int(a), Base::Int(b)) => Base::Int(a * b),
            (Base::Poly(a), Base::Poly(b)) => Base::Poly(a * b),
            _ => mismatch(),
        }
    }

    pub fn neg(&self) -> Base {
        match self {
            Base::Int(a) => Base::Int(-a),
            Base::Poly(a) => Base::Poly(-a),
        }
    }

    pub fn pow(&self, e: u32) -> Base {
        match self {
            Base::Int(a) => Base::Int(num_traits::pow(a.clone(), e as usize)),
            Base::Poly(a) => Base::Poly(a.pow(e)),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Base) -> (Base, Base) {
        match (self, d) {
            (Base::Int(a), Base::Int(b)) => {
                let (q, r) = a.div_rem(b);
                (Base::Int(q), Base::Int(r))
            }
            (Base::Poly(a), Base::Poly(b)) => {
                let (q, r) = a.div_rem(b);
                (Base::Poly(q), Base::Poly(r))
            }
            _ => mismatch(),
        }
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Base) -> Option<Base> {
        if d.is_zero() {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, b: &Base) -> bool {
        b.div_exact(self).is_some()
    }

    /// Units of the global ring: ±1 in ℤ, nonzero constants in ℚ[T].
    pub fn is_global_unit(&self) -> bool {
        match self {
            Base::Int(n) => n.abs().is_one(),
            Base::Poly(p) => p.degree() == Some(0),
        }
    }

    /// Inverse of a global unit.
    pub fn unit_inverse(&self) -> Base {
        match self {
            Base::Int(n) => Base::Int(n.clone()),
            Base::Poly(p) => Base::Poly(Poly::constant(p.coeffs()[0].recip())),
        }
    }

    /// Splits `self = canonical * unit` with the canonical associate
    /// non-negative (ℤ) or monic (ℚ[T]). Zero splits as `(0, 1)`.
    pub fn canonical_split(&self) -> (Base, Base) {
        match self {
            Base::Int(n) if n.is_negative() => (Base::Int(-n), Base::int(-1)),
            Base::Int(_) => (self.clone(), Base::int(1)),
            Base::Poly(p) => match p.leading() {
                None => (self.clone(), Base::Poly(Poly::one())),
                Some(lc) => (Base::Poly(p.monic()), Base::Poly(Poly::constant(lc.clone()))),
            },
        }
    }

    pub fn canonical(&self) -> Base {
        self.canonical_split().0
    }

    /// Extended Euclid: `(g, u, v)` with `g = a*u + b*v` and `g` canonical.
    pub fn ext_gcd(a: &Base, b: &Base) -> (Base, Base, Base) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (a.one_like(), a.zero_like());
        let (mut t0, mut t1) = (a.zero_like(), a.one_like());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let (g, unit) = r0.canonical_split();
        let inv = unit.unit_inverse();
        (g, s0.mul(&inv), t0.mul(&inv))
    }

    pub fn gcd(a: &Base, b: &Base) -> Base {
        match (a, b) {
            (Base::Int(x), Base::Int(y)) => Base::Int(x.gcd(y)),
            _ => Base::ext_gcd(a, b).0,
        }
    }

    /// Exponent of `p` in `self`; `None` for zero. `p` must not be a unit.
    pub fn valuation(&self, p: &Base) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut x = self.clone();
        let mut k = 0;
        while let Some(q) = x.div_exact(p) {
            x = q;
            k += 1;
        }
        Some(k)
    }

    /// True when the printed form starts with a minus sign.
    pub fn looks_negative(&self) -> bool {
        match self {
            Base::Int(n) => n.is_negative(),
            Base::Poly(p) => p.leading().is_some_and(|c| c.is_negative()),
        }
    }

    /// True when the printed form is a single token (no operators).
    pub fn is_atomic(&self) -> bool {
        match self {
            Base::Int(n) => !n.is_negative(),
            Base::Poly(p) => {
                let cs = p.coeffs();
                match cs.len() {
                    0 => true,
                    1 => !cs[0].is_negative() && cs[0].is_integer(),
                    2 => cs[0].is_zero() && cs[1].is_one(),
                    _ => false,
                }
            }
        }
    }

    pub fn cmp_canonical(&self, o: &Base) -> Ordering {
        match (self, o) {
            (Base::Int(a), Base::Int(b)) => a.cmp(b),
            (Base::Poly(a), Base::Poly(b)) => a.cmp_canonical(b),
            (Base::Int(_), Base::Poly(_)) => Ordering::Less,
            (Base::Poly(_), Base::Int(_)) => Ordering::Greater,
        }
    }

    pub fn as_rational_constant(&self) -> Option<BigRational> {
        match self {
            Base::Int(n) => Some(BigRational::from_integer(n.clone())),
            Base::Poly(p) if p.is_constant() => Some(p.coeffs().first().cloned().unwrap_or_else(BigRational::zero)),
            Base::Poly(_) => None,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Int(n) => write!(f, "{n}"),
            Base::Poly(p) => write!(f, "{p}"),
        }
    }
}
