use bezout_qe::fv::{self, ConstructibleSet};
use bezout_qe::gen::{Gen, Shape};
use bezout_qe::oracle::{eval_pp, ModuleSpec};
use bezout_qe::ring::{Backend, RingElem};

fn check(b: &Backend, seed: u64, formulas: usize, samples: usize) {
    let mut g = Gen::new(b, seed);
    let shape = Shape { max_exp: 2, ..Shape::default() };
    let m = ModuleSpec::FreeModule(1);
    let mut points: Vec<RingElem> = g.factors().to_vec();
    let first = b.fresh_irreducible(&points);
    points.push(first.clone());
    let mut avoid = points.clone();
    avoid.push(first);
    points.push(b.fresh_irreducible(&avoid));
    for _ in 0..formulas {
        let f = g.pp(&["y", "z"], &shape);
        let dec = fv::decompose(b, &f).unwrap_or_else(|e| panic!("{f}: {e}"));
        assert!(dec.is_partition(b), "{f}: {dec:?}");
        for p in &points {
            let piece = dec.piece_at(b, p).expect("partition covers every point");
            let (local, body) = fv::localize_piece(b, piece, p).unwrap();
            for _ in 0..samples {
                let params = g.params(&["y", "z"], 1);
                let want = eval_pp(&local, &f, &params, &m).unwrap();
                let got = eval_pp(&local, &body, &params, &m).unwrap();
                assert_eq!(want, got, "{f} at ({p}) piece {} body {}: {params:?}", piece.guard, body);
            }
        }
    }
}

#[test]
fn decomposition_is_piecewise_correct_over_z() {
    check(&Backend::Integers, 21, 30, 6);
}

#[test]
fn decomposition_is_piecewise_correct_over_q_poly() {
    check(&Backend::RationalPoly, 22, 20, 5);
}

#[test]
fn golden_decompositions() {
    let b = Backend::Integers;
    let run = |s: &str| {
        let f = bezout_qe::formula::parse_pp(s, &b).unwrap();
        serde_json::to_string(&fv::decompose(&b, &f).unwrap()).unwrap()
    };
    assert_eq!(run("E x . x*6 = y"), r#"[{"guard":{"kind":"whole","elem":null},"body":"V[v(6)](y)"}]"#);
    assert_eq!(run("E x . x*2 = y & x*3 = z"), r#"[{"guard":{"kind":"whole","elem":null},"body":"y*3 - z*2 = 0"}]"#);
    let g = fv::decompose(&b, &bezout_qe::formula::parse_pp("E x . x*2 = y & V[v(3)](x - z)", &b).unwrap()).unwrap();
    assert!(g.is_partition(&b));
    assert!(g.pieces.iter().all(|p| p.guard != ConstructibleSet::Empty));
}
