//! Effectively given Bézout domains: ℤ, ℚ[T], and their localizations at
//! a maximal ideal.
//!
//! Elements ([`RingElem`]) are plain values; the [`Backend`] says which ring
//! they live in and implements all arithmetic. Localized elements are reduced
//! fractions over the base ring whose denominator lies outside the maximal
//! ideal.

mod base;
pub mod factor;
mod literal;
pub mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

pub use base::Base;
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("element {0} does not belong to the {1} backend")]
    BackendMismatch(String, String),
    #[error("colon ideal (0:0) is undefined")]
    ColonOfZeros,
    #[error("zero argument not allowed in {0}")]
    ZeroInput(&'static str),
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("irreducibility of {0} cannot be checked above degree {1}")]
    DegreeTooLarge(String, usize),
    #[error("{0} does not divide {1}")]
    NotDivisible(String, String),
    #[error("denominator {0} is not invertible in the {1} backend")]
    NotInvertible(String, String),
    #[error("bad literal at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown backend selector '{0}' (expected z, q_poly, z_loc:<prime>, q_poly_loc:<irreducible>)")]
    BadSelector(String),
    #[error("operation {0} needs a global backend")]
    NeedsGlobal(&'static str),
}

pub type Result<T> = std::result::Result<T, RingError>;

/// Value in ℤ ∪ {∞}: the value groups of the shipped localizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LocalizedValue {
    Finite(i64),
    Infinity,
}

impl LocalizedValue {
    pub fn finite(self) -> Option<i64> {
        match self {
            LocalizedValue::Finite(k) => Some(k),
            LocalizedValue::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == LocalizedValue::Infinity
    }
}

impl Add for LocalizedValue {
    type Output = LocalizedValue;
    fn add(self, o: LocalizedValue) -> LocalizedValue {
        match (self, o) {
            (LocalizedValue::Finite(a), LocalizedValue::Finite(b)) => LocalizedValue::Finite(a + b),
            _ => LocalizedValue::Infinity,
        }
    }
}

/// Subtraction of a finite value; panics when `o` is infinite.
impl Sub for LocalizedValue {
    type Output = LocalizedValue;
    fn sub(self, o: LocalizedValue) -> LocalizedValue {
        match (self, o) {
            (LocalizedValue::Finite(a), LocalizedValue::Finite(b)) => LocalizedValue::Finite(a - b),
            (LocalizedValue::Infinity, LocalizedValue::Finite(_)) => LocalizedValue::Infinity,
            (_, LocalizedValue::Infinity) => panic!("subtracting an infinite value"),
        }
    }
}

impl fmt::Display for LocalizedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalizedValue::Finite(k) => write!(f, "{k}"),
            LocalizedValue::Infinity => write!(f, "inf"),
        }
    }
}

/// A ring element: `num / den` over ℤ or ℚ[T].
///
/// Global elements have `den = 1`. Local elements are reduced (the base gcd
/// of numerator and denominator is a unit) with a canonical denominator, so
/// structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElem {
    num: Base,
    den: Base,
}

impl RingElem {
    pub fn from_base(b: Base) -> RingElem {
        let den = b.one_like();
        RingElem { num: b, den }
    }

    pub fn int(n: i64) -> RingElem {
        RingElem::from_base(Base::int(n))
    }

    pub fn bigint(n: BigInt) -> RingElem {
        RingElem::from_base(Base::Int(n))
    }

    pub fn poly(p: Poly) -> RingElem {
        RingElem::from_base(Base::Poly(p))
    }

    pub fn num(&self) -> &Base {
        &self.num
    }

    pub fn den(&self) -> &Base {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_int(&self) -> bool {
        self.num.is_int()
    }

    pub fn looks_negative(&self) -> bool {
        self.num.looks_negative()
    }

    /// Printable without parentheses inside a product.
    pub fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.is_atomic()
    }
}

impl Ord for RingElem {
    fn cmp(&self, o: &RingElem) -> Ordering {
        self.num.cmp_canonical(&o.num).then_with(|| self.den.cmp_canonical(&o.den))
    }
}

impl PartialOrd for RingElem {
    fn partial_cmp(&self, o: &RingElem) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

fn paren(b: &Base, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if b.is_atomic() {
        write!(f, "{b}")
    } else {
        write!(f, "({b})")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.is_int() {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            paren(&self.num, f)?;
            write!(f, "/")?;
            paren(&self.den, f)
        }
    }
}

/// Capability flags of a backend, as a fixed table keyed by the ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BackendDescriptor {
    pub ring_id: String,
    pub is_valuation: bool,
    pub prime: Option<String>,
    pub residue_fields_infinite: bool,
    pub jacobson_radical_zero: bool,
}

/// One of the shipped rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Integers,
    RationalPoly,
    /// ℤ localized at `(p)`.
    LocalIntegers {
        prime: BigInt,
    },
    /// ℚ[T] localized at `(p)`, `p` monic irreducible.
    LocalPoly {
        prime: Poly,
    },
}

impl Backend {
    /// ℤ_(p), checking that `p` is prime.
    pub fn local_integers(p: BigInt) -> Result<Backend> {
        let p = num_traits::Signed::abs(&p);
        if !factor::is_prime(&p) {
            return Err(RingError::NotIrreducible(p.to_string()));
        }
        Ok(Backend::LocalIntegers { prime: p })
    }

    /// ℚ[T]_(p), checking irreducibility and making `p` monic.
    pub fn local_poly(p: Poly) -> Result<Backend> {
        match factor::is_irreducible_poly(&p) {
            Some(true) => Ok(Backend::LocalPoly { prime: p.monic() }),
            Some(false) => Err(RingError::NotIrreducible(p.to_string())),
            None => Err(RingError::DegreeTooLarge(p.to_string(), factor::MAX_FACTOR_DEGREE)),
        }
    }

    /// Localization of a global backend at an irreducible element.
    pub fn localize_at(&self, p: &RingElem) -> Result<Backend> {
        match (self.global(), &p.num) {
            (Backend::Integers, Base::Int(n)) if p.den.is_one() => Backend::local_integers(n.clone()),
            (Backend::RationalPoly, Base::Poly(q)) if p.den.is_one() => Backend::local_poly(q.clone()),
            _ => Err(RingError::BackendMismatch(p.to_string(), self.name())),
        }
    }

    /// The global ring underneath (itself for global backends).
    pub fn global(&self) -> Backend {
        match self {
            Backend::Integers | Backend::LocalIntegers { .. } => Backend::Integers,
            Backend::RationalPoly | Backend::LocalPoly { .. } => Backend::RationalPoly,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Backend::Integers => "z".into(),
            Backend::RationalPoly => "q_poly".into(),
            Backend::LocalIntegers { prime } => format!("z_loc:{prime}"),
            Backend::LocalPoly { prime } => format!("q_poly_loc:{prime}"),
        }
    }

    pub fn is_valuation(&self) -> bool {
        matches!(self, Backend::LocalIntegers { .. } | Backend::LocalPoly { .. })
    }

    pub fn is_poly(&self) -> bool {
        matches!(self, Backend::RationalPoly | Backend::LocalPoly { .. })
    }

    pub fn residue_fields_infinite(&self) -> bool {
        self.is_poly()
    }

    pub fn jacobson_radical_zero(&self) -> bool {
        !self.is_valuation()
    }

    pub fn descriptor(&self) -> BackendDescriptor {
        BackendDescriptor {
            ring_id: match self {
                Backend::Integers => "Z",
                Backend::RationalPoly => "Q[T]",
                Backend::LocalIntegers { .. } => "Z_(p)",
                Backend::LocalPoly { .. } => "Q[T]_(p)",
            }
            .into(),
            is_valuation: self.is_valuation(),
            prime: self.prime().map(|p| p.to_string()),
            residue_fields_infinite: self.residue_fields_infinite(),
            jacobson_radical_zero: self.jacobson_radical_zero(),
        }
    }

    /// Generator of the maximal ideal of a valuation backend.
    pub fn prime(&self) -> Option<RingElem> {
        self.prime_base().map(RingElem::from_base)
    }

    fn prime_base(&self) -> Option<Base> {
        match self {
            Backend::LocalIntegers { prime } => Some(Base::Int(prime.clone())),
            Backend::LocalPoly { prime } => Some(Base::Poly(prime.clone())),
            _ => None,
        }
    }

    fn base_zero(&self) -> Base {
        if self.is_poly() {
            Base::Poly(Poly::zero())
        } else {
            Base::int(0)
        }
    }

    pub fn zero(&self) -> RingElem {
        RingElem::from_base(self.base_zero())
    }

    pub fn one(&self) -> RingElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> RingElem {
        RingElem::from_base(self.base_zero().from_i64_like(n))
    }

    /// Parses a scalar literal of this backend.
    pub fn parse_elem(&self, text: &str) -> Result<RingElem> {
        let (n, d) = literal::parse_fraction(text, self.is_poly())?;
        self.make_frac(n, d).map_err(|e| match e {
            RingError::NotInvertible(..) | RingError::ZeroInput(_) => {
                RingError::Parse { pos: 0, msg: format!("'{}' is not an element of {}", text.trim(), self.name()) }
            }
            e => e,
        })
    }

    /// Checks that `a` is a well-formed element of this backend.
    pub fn check(&self, a: &RingElem) -> Result<()> {
        let kind_ok = a.num.is_int() != self.is_poly() && a.den.is_int() == a.num.is_int();
        let den_ok = match self.prime_base() {
            None => a.den.is_one(),
            Some(p) => !p.divides(&a.den) && a.den == a.den.canonical(),
        };
        if kind_ok && den_ok {
            Ok(())
        } else {
            Err(RingError::BackendMismatch(a.to_string(), self.name()))
        }
    }

    fn check_all(&self, xs: &[&RingElem]) -> Result<()> {
        xs.iter().try_for_each(|x| self.check(x))
    }

    /// Builds `n / d`, failing when `d` is not invertible.
    fn make_frac(&self, n: Base, d: Base) -> Result<RingElem> {
        if d.is_zero() {
            return Err(RingError::ZeroInput("denominator"));
        }
        let g = Base::gcd(&n, &d);
        let (mut n, d) =
            if g.is_zero() || g.is_one() { (n, d) } else { (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap()) };
        let invertible = match self.prime_base() {
            None => d.is_global_unit(),
            Some(p) => !p.divides(&d),
        };
        if !invertible {
            return Err(RingError::NotInvertible(d.to_string(), self.name()));
        }
        let (dc, du) = d.canonical_split();
        n = n.mul(&du.unit_inverse());
        if n.is_zero() {
            return Ok(RingElem::from_base(n));
        }
        Ok(RingElem { num: n, den: dc })
    }

    fn frac(&self, n: Base, d: Base) -> RingElem {
        self.make_frac(n, d).expect("denominator stays invertible")
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        if a.den.is_one() && b.den.is_one() {
            return RingElem::from_base(a.num.add(&b.num));
        }
        self.frac(a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den))
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        RingElem { num: a.num.neg(), den: a.den.clone() }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        if a.den.is_one() && b.den.is_one() {
            return RingElem::from_base(a.num.mul(&b.num));
        }
        self.frac(a.num.mul(&b.num), a.den.mul(&b.den))
    }

    pub fn pow(&self, a: &RingElem, e: u32) -> RingElem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        a.is_zero()
    }

    /// Valuation of `a` at the maximal ideal of a valuation backend.
    pub fn local_value(&self, a: &RingElem) -> LocalizedValue {
        let p = self.prime_base().expect("local_value on a global backend");
        match a.num.valuation(&p) {
            None => LocalizedValue::Infinity,
            Some(k) => LocalizedValue::Finite(k as i64),
        }
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        match self.prime_base() {
            None => a.num.is_global_unit(),
            Some(_) => self.local_value(a) == LocalizedValue::Finite(0),
        }
    }

    /// Canonical associate: non-negative (ℤ), monic (ℚ[T]), `p^k` (local).
    pub fn canonical(&self, a: &RingElem) -> RingElem {
        match self.prime_base() {
            None => RingElem::from_base(a.num.canonical()),
            Some(p) => match self.local_value(a) {
                LocalizedValue::Infinity => self.zero(),
                LocalizedValue::Finite(k) => RingElem::from_base(p.pow(k as u32)),
            },
        }
    }

    pub fn associates(&self, a: &RingElem, b: &RingElem) -> bool {
        self.canonical(a) == self.canonical(b)
    }

    /// Whether `b ∈ (a)`.
    pub fn divides(&self, a: &RingElem, b: &RingElem) -> bool {
        if b.is_zero() {
            return true;
        }
        if a.is_zero() {
            return false;
        }
        match self.prime_base() {
            None => a.num.divides(&b.num),
            Some(_) => self.local_value(a) <= self.local_value(b),
        }
    }

    /// `b / a` when `a` divides `b`.
    pub fn div_exact(&self, b: &RingElem, a: &RingElem) -> Result<RingElem> {
        if !self.divides(a, b) {
            return Err(RingError::NotDivisible(a.to_string(), b.to_string()));
        }
        if b.is_zero() {
            return Ok(self.zero());
        }
        self.make_frac(b.num.mul(&a.den), b.den.mul(&a.num))
    }

    fn gcd_unchecked(&self, a: &RingElem, b: &RingElem) -> (RingElem, RingElem, RingElem) {
        match self.prime_base() {
            None => {
                let (g, u, v) = Base::ext_gcd(&a.num, &b.num);
                (RingElem::from_base(g), RingElem::from_base(u), RingElem::from_base(v))
            }
            Some(_) => {
                if a.is_zero() && b.is_zero() {
                    return (self.zero(), self.zero(), self.zero());
                }
                let a_first = self.local_value(a) <= self.local_value(b);
                let src = if a_first { a } else { b };
                let g = self.canonical(src);
                let u = self.div_exact(&g, src).expect("unit cofactor");
                if a_first {
                    (g, u, self.zero())
                } else {
                    (g, self.zero(), u)
                }
            }
        }
    }

    /// `(g, u, v)` with `g = a*u + b*v`, `g` the canonical gcd.
    pub fn gcd_bezout(&self, a: &RingElem, b: &RingElem) -> Result<(RingElem, RingElem, RingElem)> {
        self.check_all(&[a, b])?;
        Ok(self.gcd_unchecked(a, b))
    }

    pub fn gcd(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match self.prime_base() {
            None => RingElem::from_base(Base::gcd(&a.num, &b.num)),
            Some(_) => self.gcd_unchecked(a, b).0,
        }
    }

    /// `lcm(a, b)`, canonical.
    pub fn lcm(&self, a: &RingElem, b: &RingElem) -> RingElem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let (_, a1, _) = self.cofactors(a, b);
        self.canonical(&self.mul(&a1, b))
    }

    /// Exact cofactors: `(g, a', b')` with `a = g*a'`, `b = g*b'` and `g` the
    /// canonical gcd. The cofactors are not normalized.
    pub fn cofactors(&self, a: &RingElem, b: &RingElem) -> (RingElem, RingElem, RingElem) {
        let g = self.gcd(a, b);
        if g.is_zero() {
            return (g, self.one(), self.one());
        }
        let a1 = self.div_exact(a, &g).expect("gcd divides");
        let b1 = self.div_exact(b, &g).expect("gcd divides");
        (g, a1, b1)
    }

    /// `(a:b)`, the canonical associate of `a / gcd(a, b)`.
    pub fn colon(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check_all(&[a, b])?;
        if a.is_zero() && b.is_zero() {
            return Err(RingError::ColonOfZeros);
        }
        Ok(self.canonical(&self.cofactors(a, b).1))
    }

    /// Split `a = c*d` with `gcd(c, b)` a unit and `b ∈ rad(d)`. Both parts
    /// are returned canonical, so `a` and `c*d` are associates.
    pub fn good_factorization(&self, a: &RingElem, b: &RingElem) -> Result<(RingElem, RingElem)> {
        self.check_all(&[a, b])?;
        if a.is_zero() || b.is_zero() {
            return Err(RingError::ZeroInput("good_factorization"));
        }
        if self.is_valuation() {
            return Ok(if self.is_unit(b) { (self.canonical(a), self.one()) } else { (self.one(), self.canonical(a)) });
        }
        let mut c = a.num.canonical();
        let mut d = c.one_like();
        loop {
            let g = Base::gcd(&c, &b.num);
            if g.is_one() {
                break;
            }
            c = c.div_exact(&g).unwrap();
            d = d.mul(&g);
        }
        Ok((RingElem::from_base(c), RingElem::from_base(d)))
    }

    /// `a ∈ rad(b)`: every maximal ideal containing `b` contains `a`.
    pub fn rad_member(&self, a: &RingElem, b: &RingElem) -> Result<bool> {
        self.check_all(&[a, b])?;
        Ok(self.rad_member_unchecked(a, b))
    }

    pub(crate) fn rad_member_unchecked(&self, a: &RingElem, b: &RingElem) -> bool {
        if self.is_valuation() {
            return self.is_unit(b) || !self.is_unit(a);
        }
        if b.is_zero() {
            return a.is_zero();
        }
        let mut rest = b.num.clone();
        loop {
            let g = Base::gcd(&rest, &a.num);
            if g.is_one() {
                return rest.is_global_unit();
            }
            rest = rest.div_exact(&g).unwrap();
        }
    }

    /// Product of the distinct irreducible factors of a nonzero global
    /// element, canonical.
    pub fn squarefree_part(&self, a: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        if self.is_valuation() {
            return Err(RingError::NeedsGlobal("squarefree_part"));
        }
        if a.is_zero() {
            return Err(RingError::ZeroInput("squarefree_part"));
        }
        Ok(match &a.num {
            Base::Int(n) => {
                RingElem::bigint(factor::factor_int(n).into_iter().fold(BigInt::from(1), |acc, (p, _)| acc * p))
            }
            Base::Poly(p) => {
                let g = factor::poly_gcd(p, &p.derivative());
                RingElem::poly(p.div_rem(&g).0.monic())
            }
        })
    }

    /// Irreducible factorization of a nonzero global element into canonical
    /// irreducibles with multiplicities, sorted.
    pub fn factor(&self, a: &RingElem) -> Result<Vec<(RingElem, u32)>> {
        self.check(a)?;
        if self.is_valuation() {
            return Err(RingError::NeedsGlobal("factor"));
        }
        if a.is_zero() {
            return Err(RingError::ZeroInput("factor"));
        }
        match &a.num {
            Base::Int(n) => Ok(factor::factor_int(n).into_iter().map(|(p, e)| (RingElem::bigint(p), e)).collect()),
            Base::Poly(p) => factor::factor_poly(p)
                .map(|fs| fs.into_iter().map(|(q, e)| (RingElem::poly(q), e)).collect())
                .ok_or_else(|| RingError::DegreeTooLarge(p.to_string(), factor::MAX_FACTOR_DEGREE)),
        }
    }

    /// Irreducibility in the base ring of a global element.
    pub fn is_irreducible(&self, p: &RingElem) -> Result<bool> {
        if !p.den.is_one() {
            return Ok(false);
        }
        match &p.num {
            Base::Int(n) => Ok(factor::is_prime(&num_traits::Signed::abs(n))),
            Base::Poly(q) => factor::is_irreducible_poly(q)
                .ok_or_else(|| RingError::DegreeTooLarge(q.to_string(), factor::MAX_FACTOR_DEGREE)),
        }
    }

    /// Exponent of the irreducible `p` in `a` (∞ for zero). For localized
    /// elements the denominator's exponent is subtracted.
    pub fn valuation(&self, p: &RingElem, a: &RingElem) -> Result<LocalizedValue> {
        self.check(a)?;
        self.global().check(p)?;
        if !self.is_irreducible(p)? {
            return Err(RingError::NotIrreducible(p.to_string()));
        }
        Ok(self.valuation_unchecked(p, a))
    }

    /// As [`Backend::valuation`] without the irreducibility check.
    pub fn valuation_unchecked(&self, p: &RingElem, a: &RingElem) -> LocalizedValue {
        match a.num.valuation(&p.num) {
            None => LocalizedValue::Infinity,
            Some(k) => {
                let dk = a.den.valuation(&p.num).unwrap_or(0);
                LocalizedValue::Finite(k as i64 - dk as i64)
            }
        }
    }

    /// The least irreducible (by a fixed enumeration: primes upward, or
    /// `T - c` for c = 0, 1, -1, 2, ...) dividing none of the nonzero `avoid`.
    pub fn fresh_irreducible(&self, avoid: &[RingElem]) -> RingElem {
        let g = self.global();
        let hits =
            |p: &RingElem| avoid.iter().any(|e| !e.is_zero() && g.divides(p, &RingElem::from_base(e.num.clone())));
        if self.is_poly() {
            for k in 0i64.. {
                let c = if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 };
                let p = RingElem::poly(Poly::from_ints(&[-c, 1]));
                if !hits(&p) {
                    return p;
                }
            }
        } else {
            let mut n = BigInt::from(2);
            loop {
                if factor::is_prime(&n) {
                    let p = RingElem::bigint(n.clone());
                    if !hits(&p) {
                        return p;
                    }
                }
                n += 1;
            }
        }
        unreachable!()
    }
}

impl FromStr for Backend {
    type Err = RingError;

    /// Selectors: `z`, `q_poly`, `z_loc:<prime>`, `q_poly_loc:<irreducible>`.
    fn from_str(s: &str) -> Result<Backend> {
        let s = s.trim();
        match s {
            "z" => return Ok(Backend::Integers),
            "q_poly" => return Ok(Backend::RationalPoly),
            _ => {}
        }
        if let Some(p) = s.strip_prefix("z_loc:") {
            let p = Backend::Integers.parse_elem(p)?;
            return Backend::Integers.localize_at(&p);
        }
        if let Some(p) = s.strip_prefix("q_poly_loc:") {
            let p = Backend::RationalPoly.parse_elem(p)?;
            return Backend::RationalPoly.localize_at(&p);
        }
        Err(RingError::BadSelector(s.to_string()))
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { num: self.num.neg(), den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> RingElem {
        RingElem::int(n)
    }

    fn qp(cs: &[i64]) -> RingElem {
        RingElem::poly(Poly::from_ints(cs))
    }

    #[test]
    fn gcd_bezout_examples() {
        let zb = Backend::Integers;
        assert_eq!(zb.gcd_bezout(&z(12), &z(8)).unwrap(), (z(4), z(1), z(-1)));
        assert_eq!(zb.gcd_bezout(&z(0), &z(5)).unwrap(), (z(5), z(0), z(1)));
        let qb = Backend::RationalPoly;
        assert_eq!(qb.gcd_bezout(&qp(&[-1, 0, 1]), &qp(&[-1, 1])).unwrap(), (qp(&[-1, 1]), qp(&[0]), qp(&[1])));
        assert_eq!(zb.gcd_bezout(&z(0), &z(0)).unwrap().0, z(0));
    }

    #[test]
    fn gcd_bezout_rejects_foreign_elements() {
        assert!(Backend::Integers.gcd_bezout(&qp(&[0, 1]), &z(2)).is_err());
    }

    #[test]
    fn colon_examples() {
        let zb = Backend::Integers;
        assert_eq!(zb.colon(&z(12), &z(8)).unwrap(), z(3));
        assert_eq!(zb.colon(&z(-7), &z(-7)).unwrap(), z(1));
        assert_eq!(zb.colon(&z(3), &z(2)).unwrap(), z(3));
        assert_eq!(zb.colon(&z(0), &z(0)), Err(RingError::ColonOfZeros));
        assert_eq!(zb.colon(&z(0), &z(5)).unwrap(), z(0));
        assert_eq!(zb.colon(&z(5), &z(0)).unwrap(), z(1));
    }

    #[test]
    fn divides_examples() {
        assert!(Backend::Integers.divides(&z(4), &z(12)));
        assert!(Backend::RationalPoly.divides(&qp(&[0, 1]), &qp(&[0, 1, 1])));
        let z2 = Backend::local_integers(2.into()).unwrap();
        assert!(z2.divides(&z(3), &z(1)));
        assert!(!z2.divides(&z(4), &z(6)));
        assert!(Backend::Integers.divides(&z(0), &z(0)));
        assert!(!Backend::Integers.divides(&z(0), &z(3)));
    }

    #[test]
    fn good_factorization_examples() {
        let zb = Backend::Integers;
        assert_eq!(zb.good_factorization(&z(12), &z(2)).unwrap(), (z(3), z(4)));
        assert_eq!(zb.good_factorization(&z(35), &z(1)).unwrap(), (z(35), z(1)));
        assert_eq!(zb.good_factorization(&z(6), &z(6)).unwrap(), (z(1), z(6)));
        assert!(zb.good_factorization(&z(0), &z(6)).is_err());
    }

    #[test]
    fn rad_member_examples() {
        let zb = Backend::Integers;
        assert!(zb.rad_member(&z(6), &z(12)).unwrap());
        assert!(zb.rad_member(&z(2), &z(4)).unwrap());
        assert!(!zb.rad_member(&z(2), &z(6)).unwrap());
        assert!(zb.rad_member(&z(0), &z(0)).unwrap());
        assert!(!zb.rad_member(&z(5), &z(0)).unwrap());
        assert!(zb.rad_member(&z(5), &z(1)).unwrap());
    }

    #[test]
    fn valuation_examples() {
        let zb = Backend::Integers;
        assert_eq!(zb.valuation(&z(2), &z(12)).unwrap(), LocalizedValue::Finite(2));
        assert_eq!(zb.valuation(&z(7), &z(1)).unwrap(), LocalizedValue::Finite(0));
        assert_eq!(Backend::RationalPoly.valuation(&qp(&[0, 1]), &qp(&[])).unwrap(), LocalizedValue::Infinity);
        assert!(matches!(zb.valuation(&z(4), &z(8)), Err(RingError::NotIrreducible(_))));
    }

    #[test]
    fn local_fractions_reduce() {
        let z2 = Backend::local_integers(2.into()).unwrap();
        let third = z2.parse_elem("1/3").unwrap();
        assert_eq!(z2.mul(&third, &z(3)), z(1));
        assert_eq!(third.to_string(), "1/3");
        assert!(z2.parse_elem("1/2").is_err());
        let (g, u, v) = z2.gcd_bezout(&z(12), &z(8)).unwrap();
        assert_eq!(g, z(4));
        assert_eq!(z2.add(&z2.mul(&z(12), &u), &z2.mul(&z(8), &v)), g);
    }

    #[test]
    fn descriptor_table() {
        let rows = [
            ("z", false, false, true),
            ("q_poly", false, true, true),
            ("z_loc:3", true, false, false),
            ("q_poly_loc:T", true, true, false),
        ];
        for (sel, val, inf, jac) in rows {
            let d = sel.parse::<Backend>().unwrap().descriptor();
            assert_eq!((d.is_valuation, d.residue_fields_infinite, d.jacobson_radical_zero), (val, inf, jac), "{sel}");
        }
        assert!("z_loc:4".parse::<Backend>().is_err());
        assert!("q_poly_loc:(T^2 - 1)".parse::<Backend>().is_err());
    }

    #[test]
    fn squarefree_parts() {
        let zb = Backend::Integers;
        assert_eq!(zb.squarefree_part(&z(-72)).unwrap(), z(6));
        let qb = Backend::RationalPoly;
        let f = qb.mul(&qp(&[0, 0, 2]), &qp(&[1, 0, 1]));
        assert_eq!(qb.squarefree_part(&f).unwrap(), qp(&[0, 1, 0, 1]));
    }

    #[test]
    fn fresh_irreducibles() {
        assert_eq!(Backend::Integers.fresh_irreducible(&[z(6), z(0)]), z(5));
        assert_eq!(Backend::RationalPoly.fresh_irreducible(&[qp(&[0, 1])]), qp(&[-1, 1]));
    }
}
