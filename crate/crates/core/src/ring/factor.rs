//! Factorization helpers for the shipped global rings: primality and
//! factoring in ℤ, irreducible factorization in ℚ[T] at small degree.
//!
//! None of the decision procedures depend on factoring; these routines back
//! irreducibility validation (`valuation`, backend selectors) and the
//! enumeration oracles used in tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;

/// Largest degree accepted by [`factor_poly`].
pub const MAX_FACTOR_DEGREE: usize = 10;

const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin with the first twelve prime bases. Deterministic below
/// 3.3·10^24, probabilistic above.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut d) = (BigInt::from(2), BigInt::from(2), BigInt::one());
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of |n| as sorted (prime, exponent) pairs. Zero and
/// units factor as the empty list.
pub fn factor_int(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    let mut big: Vec<BigInt> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            big.push(m);
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    big.sort();
    for q in big {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out.sort();
    out
}

fn divisors_abs(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_int(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

fn int_poly(cs: &[BigInt]) -> Poly {
    Poly::from_coeffs(cs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

/// Square-free decomposition (Yun): returns (factor, multiplicity) with
/// monic, pairwise coprime, square-free factors.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let f = f.monic();
    let fp = f.derivative();
    let a0 = poly_gcd(&f, &fp);
    let mut b = f.div_rem(&a0).0;
    let mut c = fp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Monic gcd by the Euclidean algorithm.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b).1;
        a = b;
        b = r;
    }
    a.monic()
}

fn rational_root(f: &[BigInt]) -> Option<BigRational> {
    let a0 = &f[0];
    if a0.is_zero() {
        return Some(BigRational::zero());
    }
    let an = f.last().unwrap();
    let fp = int_poly(f);
    for p in divisors_abs(a0) {
        for q in divisors_abs(an) {
            for sign in [1, -1] {
                let r = BigRational::new(&p * sign, q.clone());
                if fp.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn lagrange(points: &[(BigInt, BigInt)]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::one();
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &int_poly(&[-xj.clone(), BigInt::one()]);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&BigRational::new(yi.clone(), denom));
    }
    acc
}

/// Kronecker search for a factor of exact degree `d` of the primitive
/// integer polynomial `f` (which has no rational roots).
fn kronecker_factor(f: &Poly, d: usize) -> Option<Poly> {
    let mut cands: Vec<(BigInt, BigInt)> = (-30i64..=30)
        .map(|x| {
            let bx = BigInt::from(x);
            let v = f.eval(&BigRational::from_integer(bx.clone())).to_integer();
            (bx, v)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect();
    cands.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.abs().cmp(&b.0.abs())));
    let pts: Vec<(BigInt, BigInt)> = cands.into_iter().take(d + 1).collect();
    if pts.len() < d + 1 {
        return None;
    }
    let divs: Vec<Vec<BigInt>> = pts
        .iter()
        .enumerate()
        .map(|(i, (_, v))| {
            let pos = divisors_abs(v);
            if i == 0 {
                pos
            } else {
                pos.iter().flat_map(|x| [x.clone(), -x.clone()]).collect()
            }
        })
        .collect();
    let mut idx = vec![0usize; d + 1];
    loop {
        let sample: Vec<(BigInt, BigInt)> =
            pts.iter().zip(&idx).enumerate().map(|(i, ((x, _), &k))| (x.clone(), divs[i][k].clone())).collect();
        let g = lagrange(&sample);
        if g.degree() == Some(d) && g.coeffs().iter().all(|c| c.is_integer()) {
            let (_, r) = f.div_rem(&g);
            if r.is_zero() {
                return Some(g.monic());
            }
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < divs[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn split_squarefree(f: &Poly, out: &mut Vec<Poly>) {
    let n = match f.degree() {
        None | Some(0) => return,
        Some(n) => n,
    };
    if n == 1 {
        out.push(f.monic());
        return;
    }
    let ints = f.primitive_integer_coeffs();
    if let Some(r) = rational_root(&ints) {
        let lin = Poly::from_coeffs(vec![-r, BigRational::one()]);
        out.push(lin.clone());
        split_squarefree(&f.div_rem(&lin).0, out);
        return;
    }
    let fi = int_poly(&ints);
    for d in 2..=n / 2 {
        if let Some(g) = kronecker_factor(&fi, d) {
            split_squarefree(&g, out);
            split_squarefree(&f.div_rem(&g).0, out);
            return;
        }
    }
    out.push(f.monic());
}

/// Factorization of a nonzero polynomial into monic irreducibles over ℚ,
/// sorted canonically. Returns `None` above [`MAX_FACTOR_DEGREE`].
pub fn factor_poly(f: &Poly) -> Option<Vec<(Poly, u32)>> {
    if f.degree()? > MAX_FACTOR_DEGREE {
        return None;
    }
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (sqf, mult) in squarefree_decomposition(f) {
        let mut parts = Vec::new();
        split_squarefree(&sqf, &mut parts);
        out.extend(parts.into_iter().map(|p| (p, mult)));
    }
    out.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    Some(out)
}

/// Irreducibility over ℚ, limited to degree ≤ [`MAX_FACTOR_DEGREE`].
pub fn is_irreducible_poly(f: &Poly) -> Option<bool> {
    match f.degree() {
        None | Some(0) => Some(false),
        Some(_) => {
            let fs = factor_poly(f)?;
            Some(fs.len() == 1 && fs[0].1 == 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_composites() {
        let primes: Vec<u32> = (0..60).filter(|&n| is_prime(&BigInt::from(n))).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_prime(&BigInt::from(561)));
    }

    #[test]
    fn integer_factorization() {
        let f = factor_int(&BigInt::from(-360));
        let expect: Vec<(BigInt, u32)> = vec![(BigInt::from(2), 3), (BigInt::from(3), 2), (BigInt::from(5), 1)];
        assert_eq!(f, expect);
        let big = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        assert_eq!(factor_int(&big).len(), 2);
    }

    #[test]
    fn polynomial_factorization() {
        // (T^2 + 1)^2 (T - 1)(T^3 - 2)
        let t2p1 = Poly::from_ints(&[1, 0, 1]);
        let tm1 = Poly::from_ints(&[-1, 1]);
        let t3m2 = Poly::from_ints(&[-2, 0, 0, 1]);
        let f = &(&t2p1.pow(2) * &tm1) * &t3m2;
        let fs = factor_poly(&f).unwrap();
        assert_eq!(fs, vec![(tm1, 1), (t2p1, 2), (t3m2, 1)]);
    }

    #[test]
    fn quartic_splitting_into_quadratics() {
        // (T^2 - 2)(T^2 + T + 1) has no rational root.
        let f = &Poly::from_ints(&[-2, 0, 1]) * &Poly::from_ints(&[1, 1, 1]);
        assert_eq!(factor_poly(&f).unwrap().len(), 2);
        assert_eq!(is_irreducible_poly(&Poly::from_ints(&[-2, 0, 1])), Some(true));
        assert_eq!(is_irreducible_poly(&Poly::from_ints(&[1, 0, 0, 0, 1])), Some(true));
        assert_eq!(is_irreducible_poly(&Poly::from_ints(&[4, 0, 0, 0, 1])), Some(false));
    }
}
