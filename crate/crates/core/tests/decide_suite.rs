mod common;

use bezout_qe::decide::{DecisionProblem, Verdict};
use bezout_qe::formula::{parse_sentence, BSentence};
use bezout_qe::ring::Backend;
use common::{decide_str, verify_countermodel, SUITE};

use Verdict::{Invalid, Valid};

#[test]
fn suite_has_at_least_twenty_sentences() {
    assert!(SUITE.len() >= 20);
}

#[test]
fn frozen_verdicts() {
    let mut failures = Vec::new();
    for (sel, s, want) in SUITE {
        let b: Backend = sel.parse().unwrap();
        let sentence = parse_sentence(s, &b).unwrap();
        let d = decide_str(&b, &sentence);
        if d.verdict != *want {
            failures.push(format!("{sel} {s}: got {}, want {want}", d.verdict));
        }
        if d.verdict == Invalid {
            if let Err(e) = verify_countermodel(&b, &d.certificate) {
                failures.push(format!("{sel} {s}: certificate: {e}"));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn never_both_valid() {
    for (sel, s, _) in SUITE {
        let b: Backend = sel.parse().unwrap();
        let sentence = parse_sentence(s, &b).unwrap();
        let pos = decide_str(&b, &sentence).verdict;
        let neg = decide_str(&b, &BSentence::not(sentence)).verdict;
        assert!(!(pos == Valid && neg == Valid), "{sel} {s}");
    }
}

#[test]
fn single_prime_sentences_agree_with_local_backend() {
    for (sel, s, _) in SUITE.iter().filter(|(sel, ..)| *sel == "q_poly_loc:T") {
        if s.contains("T -") || s.contains("T^2 +") {
            continue;
        }
        let local: Backend = sel.parse().unwrap();
        let global = Backend::RationalPoly;
        let dl = decide_str(&local, &parse_sentence(s, &local).unwrap()).verdict;
        let dg = decide_str(&global, &parse_sentence(s, &global).unwrap()).verdict;
        assert_eq!(dl, dg, "{s}");
    }
}

#[test]
fn integers_are_refused() {
    for sel in ["z", "z_loc:3"] {
        let b: Backend = sel.parse().unwrap();
        let s = parse_sentence("Inv(x*2 = 0 | x = 0) >1", &b).unwrap();
        let e = DecisionProblem::new(b, s).unwrap_err();
        assert!(e.to_string().contains("the quotient B/M is infinite"), "{e}");
    }
}
