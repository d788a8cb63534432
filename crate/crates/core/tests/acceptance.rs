//! Acceptance criteria AC1–AC8. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bezout_qe::decide::{to_pair_form, DecisionProblem, PairForm, Verdict};
use bezout_qe::formula::{parse_pp, parse_sentence, BSentence, InvCondition};
use bezout_qe::fv::{self, cs, ConstructibleSet};
use bezout_qe::gen::{Gen, Shape};
use bezout_qe::oracle::{eval_pp, pair_index_nontrivial, ModuleSpec};
use bezout_qe::qe::{self, LocalOracle};
use bezout_qe::ring::{Backend, Poly, RingElem};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn local_backends() -> [Backend; 2] {
    [Backend::local_integers(2.into()).unwrap(), Backend::local_poly(Poly::t()).unwrap()]
}

/// QE soundness against the oracle in free modules of rank 1 and 2.
fn ac1() -> Outcome {
    let start = Instant::now();
    let shape = Shape { fractional: true, ..Shape::default() };
    let mut checks = 0usize;
    for (i, b) in local_backends().iter().enumerate() {
        let mut g = Gen::new(b, 100 + i as u64);
        let cmp = LocalOracle::new(b.clone());
        for _ in 0..500 {
            let f = g.pp(&["y", "z"], &shape);
            let out = qe::eliminate(&f, &cmp).map_err(|e| format!("{f}: {e}"))?;
            if !out.is_quantifier_free() {
                return Err(format!("{f} -> {out} keeps a quantifier"));
            }
            for dim in [1, 2] {
                let m = ModuleSpec::FreeModule(dim);
                for _ in 0..20 {
                    let p = g.params(&["y", "z"], dim);
                    let want = eval_pp(b, &f, &p, &m).map_err(|e| e.to_string())?;
                    let got = eval_pp(b, &out, &p, &m).map_err(|e| e.to_string())?;
                    if want != got {
                        return Err(format!("{}: {f} -> {out} at {p:?} in {m}", b.name()));
                    }
                    checks += 1;
                }
            }
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(300) {
        return Err(format!("{checks} checks agree but took {t:.1?}"));
    }
    Ok(format!("1000 formulas, {checks} evaluations agree in {t:.1?}"))
}

/// One-variable formulas eliminate to exactly `x·a = 0 ∧ V_δ(x)`.
fn ac2() -> Outcome {
    let mut n = 0;
    for (i, b) in local_backends().iter().enumerate() {
        let mut g = Gen::new(b, 200 + i as u64);
        let cmp = LocalOracle::new(b.clone());
        for _ in 0..100 {
            let f = g.pp(&["x"], &Shape { fractional: true, ..Shape::default() });
            let out = qe::eliminate(&f, &cmp).map_err(|e| format!("{f}: {e}"))?;
            let nf = qe::normal_form_1var(&out, "x", &cmp).map_err(|e| e.to_string())?;
            let shaped = nf.to_pp(b, "x").normalize(b);
            if out.normalize(b) != shaped {
                return Err(format!("{f} -> {out}, normal form {shaped}"));
            }
            let again = qe::eliminate(&out, &cmp).map_err(|e| e.to_string())?;
            if again != out {
                return Err(format!("re-elimination of {out} gave {again}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} formulas in normal form, re-elimination is the identity"))
}

/// Constructible-set algebra over `ℤ` against the proxy spectrum.
fn ac3() -> Outcome {
    let b = Backend::Integers;
    let primes: Vec<i64> = (2..=100).filter(|n| (2..*n).all(|d| n % d != 0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    let mut elems = vec![RingElem::int(0), RingElem::int(1), RingElem::int(-1)];
    while elems.len() < 30 {
        let mut e = 1i64;
        for _ in 0..rng.gen_range(1..=3) {
            e *= primes.choose(&mut rng).unwrap().pow(rng.gen_range(1..=2));
        }
        elems.push(RingElem::int(if rng.gen_bool(0.2) { -e } else { e }));
    }
    let generic = b.fresh_irreducible(&primes.iter().map(|p| RingElem::int(*p)).collect::<Vec<_>>());
    let points: Vec<RingElem> = primes.iter().map(|p| RingElem::int(*p)).chain([generic]).collect();
    let sets: Vec<ConstructibleSet> =
        elems.iter().flat_map(|e| [ConstructibleSet::closed(&b, e), ConstructibleSet::open(&b, e)]).collect();
    let members = |s: &ConstructibleSet| points.iter().map(|p| s.contains(&b, p)).collect::<Vec<_>>();
    let basic = |s: &ConstructibleSet| s.is_normalized(&b);
    let mut ops = 0usize;
    for s in &sets {
        let c = cs::complement(s);
        if !basic(&c) || members(&c) != members(s).iter().map(|m| !m).collect::<Vec<_>>() {
            return Err(format!("complement of {s}"));
        }
        if cs::is_empty(s) != members(s).iter().all(|m| !m) {
            return Err(format!("emptiness of {s}"));
        }
        for t in &sets {
            let (ms, mt) = (members(s), members(t));
            let i = cs::intersect(&b, s, t);
            let u = cs::union(&b, s, t);
            let want_i: Vec<bool> = ms.iter().zip(&mt).map(|(x, y)| *x && *y).collect();
            let want_u: Vec<bool> = ms.iter().zip(&mt).map(|(x, y)| *x || *y).collect();
            if !basic(&i) || members(&i) != want_i {
                return Err(format!("{s} ∩ {t} = {i}"));
            }
            if !basic(&u) || members(&u) != want_u {
                return Err(format!("{s} ∪ {t} = {u}"));
            }
            let sub = ms.iter().zip(&mt).all(|(x, y)| !*x || *y);
            if cs::subseteq(&b, s, t) != sub || cs::set_eq(&b, s, t) != (ms == mt) {
                return Err(format!("comparison of {s} and {t}"));
            }
            ops += 5;
        }
    }
    let mut rules = 0;
    for a in elems.iter().filter(|e| !e.is_zero()) {
        for c in elems.iter().filter(|e| !e.is_zero()) {
            let (keep, _) = b.good_factorization(a, c).map_err(|e| e.to_string())?;
            let lhs = members(&cs::intersect(&b, &ConstructibleSet::closed(&b, a), &ConstructibleSet::open(&b, c)));
            if lhs != members(&ConstructibleSet::closed(&b, &keep)) {
                return Err(format!("V({a}) \\ V({c}) != V({keep})"));
            }
            rules += 1;
        }
    }
    Ok(format!("{ops} operations on {} points, {rules} relative complements", points.len()))
}

/// Guarded decomposition is a partition and is piecewise correct.
fn ac4() -> Outcome {
    let m = ModuleSpec::FreeModule(1);
    let shape = Shape { max_exp: 2, ..Shape::default() };
    let mut checks = 0;
    for (i, b) in [Backend::Integers, Backend::RationalPoly].iter().enumerate() {
        let mut g = Gen::new(b, 400 + i as u64);
        let mut points = g.factors().to_vec();
        let first = b.fresh_irreducible(&points);
        points.push(first);
        points.push(b.fresh_irreducible(&points));
        for _ in 0..100 {
            let f = g.pp(&["y", "z"], &shape);
            let dec = fv::decompose(b, &f).map_err(|e| format!("{f}: {e}"))?;
            if !dec.is_partition(b) {
                return Err(format!("{f}: not a partition"));
            }
            for p in &points {
                let piece = dec.piece_at(b, p).ok_or_else(|| format!("{f}: ({p}) uncovered"))?;
                let (local, body) = fv::localize_piece(b, piece, p).map_err(|e| e.to_string())?;
                for _ in 0..20 {
                    let params = g.params(&["y", "z"], 1);
                    let want = eval_pp(&local, &f, &params, &m).map_err(|e| e.to_string())?;
                    let got = eval_pp(&local, &body, &params, &m).map_err(|e| e.to_string())?;
                    if want != got {
                        return Err(format!("{f} at ({p}): body {body} at {params:?}"));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("200 partitions, {checks} local evaluations agree"))
}

/// `a ∈ rad(b)` iff every irreducible factor of `b` divides `a`.
fn rad_by_factoring(b: &Backend, a: &RingElem, c: &RingElem) -> bool {
    if c.is_zero() {
        return a.is_zero();
    }
    b.factor(c).unwrap().iter().all(|(q, _)| b.divides(q, a))
}

fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let zb = Backend::Integers;
    let qb = Backend::RationalPoly;
    let small = [2i64, 3, 5, 7, 11, 13];
    let int = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.1) {
            return RingElem::int(rng.gen_range(-1..=1));
        }
        let mut e: i64 = 1;
        for p in small {
            if rng.gen_bool(0.4) {
                e *= p.pow(rng.gen_range(1..=3));
            }
        }
        RingElem::int(e * if rng.gen_bool(0.3) { -1 } else { 1 })
    };
    let basis =
        [Poly::from_ints(&[0, 1]), Poly::from_ints(&[-1, 1]), Poly::from_ints(&[1, 0, 1]), Poly::from_ints(&[2, 1])];
    let poly = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.1) {
            return RingElem::poly(Poly::from_ints(&[rng.gen_range(0..=3)]));
        }
        if rng.gen_bool(0.3) {
            let cs: Vec<i64> = (0..=rng.gen_range(1..=4)).map(|_| rng.gen_range(-4..=4)).collect();
            return RingElem::poly(Poly::from_ints(&cs));
        }
        let mut p = RingElem::poly(Poly::from_ints(&[rng.gen_range(1..=3)]));
        let mut deg = 0;
        for q in &basis {
            let d = q.degree().unwrap();
            if deg + d <= 4 && rng.gen_bool(0.5) {
                let k = rng.gen_range(1..=((4 - deg) / d).min(2)) as u32;
                p = qb.mul(&p, &RingElem::poly(q.pow(k)));
                deg += d * k as usize;
            }
        }
        p
    };
    let mut agree = 0;
    for _ in 0..200 {
        let (a, c) = (int(&mut rng), int(&mut rng));
        if zb.rad_member(&a, &c).map_err(|e| e.to_string())? != rad_by_factoring(&zb, &a, &c) {
            return Err(format!("ℤ: {a} ∈ rad({c})"));
        }
        let (a, c) = (poly(&mut rng), poly(&mut rng));
        if qb.rad_member(&a, &c).map_err(|e| e.to_string())? != rad_by_factoring(&qb, &a, &c) {
            return Err(format!("ℚ[T]: {a} ∈ rad({c})"));
        }
        agree += 2;
    }
    Ok(format!("{agree} pairs agree with factorization"))
}

/// The frozen decision suite.
fn ac6() -> Outcome {
    let mut certified = 0;
    for (sel, s, want) in common::SUITE {
        let b: Backend = sel.parse().unwrap();
        let sentence = parse_sentence(s, &b).map_err(|e| e.to_string())?;
        let d = common::decide_str(&b, &sentence);
        if d.verdict != *want {
            return Err(format!("{sel} {s}: got {}, want {want}", d.verdict));
        }
        if d.verdict == Verdict::Invalid {
            common::verify_countermodel(&b, &d.certificate).map_err(|e| format!("{sel} {s}: {e}"))?;
            certified += 1;
        }
        let neg = common::decide_str(&b, &BSentence::not(sentence)).verdict;
        if d.verdict == Verdict::Valid && neg == Verdict::Valid {
            return Err(format!("{sel} {s}: both it and its negation are valid"));
        }
    }
    let z = parse_sentence("Inv(x*2 = 0 | x = 0) >1", &Backend::Integers).unwrap();
    match DecisionProblem::new(Backend::Integers, z) {
        Err(e) if e.to_string().contains("the quotient B/M is infinite") => {}
        other => return Err(format!("ℤ not refused as documented: {:?}", other.err())),
    }
    Ok(format!("{} sentences, {certified} countermodels re-verified", common::SUITE.len()))
}

fn inv_leaves(s: &BSentence, out: &mut Vec<InvCondition>) {
    match s {
        BSentence::Inv(c) => out.push(c.clone()),
        BSentence::Closed(_) => {}
        BSentence::Not(x) => inv_leaves(x, out),
        BSentence::And(x, y) | BSentence::Or(x, y) => {
            inv_leaves(x, out);
            inv_leaves(y, out);
        }
    }
}

/// Oracle index of a pair in `A/p^k` is constant for `k > N + 1`.
fn ac7() -> Outcome {
    let b = Backend::local_poly(Poly::t()).unwrap();
    let val = LocalOracle::new(b.clone());
    let mut g = Gen::new(&b, 700);
    let shape = Shape { max_exp: 3, ..Shape::default() };
    let index = |f: &PairForm, k: i64| -> Result<bool, String> {
        let (phi, psi) = f.subgroups(&b);
        let m = ModuleSpec::CyclicQuotient(b.pow(&b.prime().unwrap(), k as u32));
        pair_index_nontrivial(&b, &phi, &psi, &m).map_err(|e| e.to_string())
    };
    let mut probes = 0;
    let mut bad = Vec::new();
    while probes < 200 {
        let s = g.sentence(2, &shape);
        let mut leaves = Vec::new();
        inv_leaves(&s, &mut leaves);
        let mut forms = Vec::new();
        for c in &leaves {
            forms.push(to_pair_form(&c.phi, &c.psi, &val).map_err(|e| e.to_string())?);
        }
        let n = forms.iter().map(PairForm::bound).max().unwrap_or(0);
        for f in forms.iter().filter(|f| **f != PairForm::Trivial) {
            if probes == 200 {
                break;
            }
            let k = g.rng().gen_range(n + 2..=2 * n + 4);
            let (at_k, stable) = (index(f, k)?, index(f, n + 2)?);
            if at_k != stable {
                bad.push(format!("{f} with N = {n}: k = {k} gives {at_k}, k = {} gives {stable}", n + 2));
            }
            probes += 1;
        }
    }
    if bad.is_empty() {
        Ok(format!("{probes} probes constant beyond N + 1"))
    } else {
        Err(format!("{} of {probes} probes vary beyond N + 1; first: {}", bad.len(), bad[0]))
    }
}

/// Printing then parsing returns the same formula or sentence.
fn ac8() -> Outcome {
    let backends = [
        Backend::Integers,
        Backend::RationalPoly,
        Backend::local_integers(2.into()).unwrap(),
        Backend::local_poly(Poly::t()).unwrap(),
    ];
    let mut n = 0;
    for (i, b) in backends.iter().enumerate() {
        let mut g = Gen::new(b, 800 + i as u64);
        let shape = Shape { fractional: true, ..Shape::default() };
        for _ in 0..25 {
            let f = g.pp(&["y", "z"], &shape);
            let text = f.to_string();
            let back = parse_pp(&text, b).map_err(|e| format!("{text}: {e}"))?;
            if back != f {
                return Err(format!("{text} reparsed as {back}"));
            }
            let s = g.sentence(2, &shape);
            let text = s.to_string();
            let back = parse_sentence(&text, b).map_err(|e| format!("{text}: {e}"))?;
            if back != s {
                return Err(format!("{text} reparsed as {back}"));
            }
            n += 2;
        }
    }
    Ok(format!("{n} formulas and sentences round-trip"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1", "qe soundness", ac1),
        ("AC2", "qe shape", ac2),
        ("AC3", "constructible algebra", ac3),
        ("AC4", "decomposition correctness", ac4),
        ("AC5", "radical relation", ac5),
        ("AC6", "decision suite", ac6),
        ("AC7", "catalog stability", ac7),
        ("AC8", "parser round-trip", ac8),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("{id} PASS {name}: {detail} [{t:.1?}]"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {name}: {why} [{t:.1?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
