//! Frozen decision suite. Verdicts were derived by hand from the catalog
//! index formulas: in `A/p^k`, `TorsionPair(a, c)` opens iff `k > c`,
//! `DivTorsion(d, c)` iff `k > c + d`, `DivDiv(d1, d2)` iff `k > d1`; in `A`
//! torsion pairs are closed and the other two open; in `K` only
//! `DivTorsion` opens; the zero module opens nothing.
#![allow(dead_code)]

use bezout_qe::decide::{self, to_pair_form, Certificate, DecisionProblem, Verdict, WitnessModule};
use bezout_qe::formula::{parse_sentence, BSentence};
use bezout_qe::oracle::pair_index_nontrivial;
use bezout_qe::qe::LocalOracle;
use bezout_qe::ring::Backend;

use Verdict::{Invalid, Valid};

pub const SUITE: &[(&str, &str, Verdict)] = &[
    ("q_poly_loc:T", "Inv(x*(T^2) = 0 | x*(T) = 0) >1", Invalid),
    ("q_poly_loc:T", "Inv(x*(T^2) = 0 | x*(T) = 0) =1", Invalid),
    ("q_poly_loc:T", "Inv(x*(T) = 0 | x*(T^2) = 0) =1", Valid),
    ("q_poly_loc:T", "Inv(V[v(T)](x) | V[v(T^2)](x)) =1", Invalid),
    ("q_poly_loc:T", "Inv(V[v(T^2)](x) | V[v(T)](x)) =1", Valid),
    ("q_poly_loc:T", "!Inv(x*(T^2) = 0 | x*(T) = 0) >1 | Inv(0 = 0 | V[v(T)](x)) >1", Valid),
    ("q_poly_loc:T", "!Inv(0 = 0 | V[v(T)](x)) >1 | Inv(x*(T^2) = 0 | x*(T) = 0) >1", Invalid),
    ("q_poly_loc:T", "Inv(V[v(T)](x) | x*(T) = 0) =1", Invalid),
    ("q_poly_loc:T", "!Inv(V[v(T)](x) | x*(T) = 0) >1 | Inv(V[v(T)](x) | V[v(T^2)](x)) >1", Invalid),
    ("q_poly_loc:T", "!Inv(V[v(T)](x) | V[v(T^2)](x)) >1 | Inv(V[v(T)](x) | x*(T) = 0) >1", Invalid),
    ("q_poly_loc:T", "!Inv(V[v(T)](x) | V[v(T^2)](x)) >1 | Inv(0 = 0 | x*(T) = 0) >1", Valid),
    ("q_poly_loc:T", "Inv(x*(T) = 0 | x = 0) >1 | !Inv(x*(T) = 0 | x = 0) >1", Valid),
    ("q_poly_loc:T", "{ E u . u*(T) = 0 }", Valid),
    ("q_poly_loc:T", "!{ E u . u*(T) = 0 }", Invalid),
    ("q_poly_loc:T", "!Inv(V[v(T)](x) | x = 0) >1 | Inv(x*(T) = 0 | x = 0) >1 | Inv(0 = 0 | V[v(T)](x)) >1", Invalid),
    ("q_poly_loc:T", "!Inv(0 = 0 | V[v(T)](x)) >1 | Inv(x*(T) = 0 | x = 0) >1 | Inv(V[v(T)](x) | x = 0) >1", Valid),
    ("q_poly_loc:T", "!Inv(x*(T) = 0 | x = 0) >1 | Inv(0 = 0 | V[v(T)](x)) >1", Valid),
    ("q_poly_loc:T^2 + 1", "Inv(x*(T^3 + T) = 0 | x*(T) = 0) =1", Invalid),
    ("q_poly_loc:T^2 + 1", "Inv(x*(T) = 0 | x = 0) =1", Valid),
    ("q_poly_loc:T", "Inv(E u . u*(T^2) = x | E u . u*(T) = x) =1", Valid),
    ("q_poly_loc:T", "Inv(E u . u*(T) = x | E u . u*(T^2) = x) =1", Invalid),
    ("q_poly", "Inv(x*(T^2 - 1) = 0 | x*(T - 1) = 0) =1", Invalid),
    ("q_poly", "Inv(x*(T - 1) = 0 | x*(T^2 - 1) = 0) =1", Valid),
    ("q_poly", "Inv(E n . n*(T) = x | x = 0) =1", Invalid),
    ("q_poly", "!Inv(x*(T^2) = 0 | x*(T) = 0) >1 | Inv(0 = 0 | V[v(T)](x)) >1", Valid),
    ("q_poly", "!Inv(0 = 0 | V[v(T)](x)) >1 | Inv(x*(T^2) = 0 | x*(T) = 0) >1", Invalid),
    ("q_poly", "Inv(x*(T^2 + 1) = 0 | x = 0) =1 | Inv(x*(T) = 0 | x = 0) =1", Invalid),
    ("q_poly", "Inv(x*(T) = 0 | x*(T - 1) = 0) =1", Invalid),
    ("q_poly", "Inv(V[v(T^2 - T)](x) | V[v(T)](x)) =1", Valid),
    ("q_poly", "Inv(V[v(T)](x) | V[v(T^2 - T)](x)) =1", Invalid),
    ("q_poly", "Inv(E u . u*(T) = x & u*(T - 1) = 0 | x = 0) =1", Invalid),
    ("q_poly", "!Inv(x*(T^3) = 0 | x*(T) = 0) >1 | Inv(x*(T^2) = 0 | x*(T) = 0) >1", Valid),
    ("q_poly", "!Inv(x*(T^2) = 0 | x*(T) = 0) >1 | Inv(x*(T^3) = 0 | x*(T) = 0) >1", Valid),
    ("q_poly", "!(Inv(x*(T) = 0 | x = 0) >1 & Inv(0 = 0 | V[v(T)](x)) =1)", Valid),
    ("q_poly", "Inv(x*(T^2 + 1) = 0 | x = 0) >1 | !Inv(x*(T^2 + 1) = 0 | x = 0) >1", Valid),
];

pub fn decide_str(b: &Backend, s: &BSentence) -> decide::Decision {
    decide::decide(&DecisionProblem::new(b.clone(), s.clone()).unwrap()).unwrap()
}

/// Re-checks a countermodel: every pair's local shape is recomputed at the
/// named maximal ideal by the local engine, and its index in the witness
/// module is recomputed by the oracle.
pub fn verify_countermodel(b: &Backend, cert: &Certificate) -> Result<(), String> {
    let Certificate::Countermodel { components, .. } = cert else {
        return Err("not a countermodel".into());
    };
    for comp in components {
        if comp.module == WitnessModule::Zero {
            if comp.pairs.iter().any(|p| p.open) {
                return Err("zero module opens a pair".into());
            }
            continue;
        }
        let local = if b.is_valuation() {
            b.clone()
        } else {
            let p = comp.prime.as_ref().ok_or("component names no maximal ideal")?;
            b.localize_at(p).map_err(|e| e.to_string())?
        };
        let spec = comp.module.module_spec(&local).ok_or("no module descriptor")?;
        for (i, pair) in comp.pairs.iter().enumerate() {
            let s = parse_sentence(&pair.condition, &local).map_err(|e| e.to_string())?;
            let BSentence::Inv(c) = s else { return Err("pair is not a condition".into()) };
            let form = to_pair_form(&c.phi, &c.psi, &LocalOracle::new(local.clone())).map_err(|e| e.to_string())?;
            if form != pair.form {
                return Err(format!(
                    "{}: certificate says {} but local engine gives {form}",
                    pair.condition, pair.form
                ));
            }
            let (phi, psi) = form.subgroups(&local);
            let open = pair_index_nontrivial(&local, &phi, &psi, &spec).map_err(|e| e.to_string())?;
            let want = i == 0;
            if open != want || pair.open != want {
                return Err(format!("{} in {spec}: oracle {open}, certificate {}", pair.condition, pair.open));
            }
        }
    }
    Ok(())
}
