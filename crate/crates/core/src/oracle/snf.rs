// Diagonalization over a Bézout domain by unimodular row and column moves.

use crate::ring::{Backend, RingElem};

pub type Matrix = Vec<Vec<RingElem>>;

pub fn identity(b: &Backend, n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { b.one() } else { b.zero() }).collect()).collect()
}

/// `D = P·A·Q` with `P`, `Q` unimodular and `D` diagonal with
/// `d₀ | d₁ | …` (zeros last).
pub struct Diagonal {
    pub d: Matrix,
    pub p: Matrix,
    pub q: Matrix,
}

impl Diagonal {
    /// Diagonal entries `d[i][i]` for `i < min(n, m)`.
    pub fn entries(&self) -> Vec<RingElem> {
        let n = self.d.len();
        let m = self.d.first().map_or(0, |r| r.len());
        (0..n.min(m)).map(|i| self.d[i][i].clone()).collect()
    }
}

// Replaces rows (or columns) i, j by u·i + v·j and −β·i + α·j.
fn mix_rows(b: &Backend, a: &mut Matrix, i: usize, j: usize, k: [&RingElem; 4]) {
    let [u, v, beta, alpha] = k;
    for c in 0..a[i].len() {
        let (x, y) = (a[i][c].clone(), a[j][c].clone());
        a[i][c] = b.add(&b.mul(u, &x), &b.mul(v, &y));
        a[j][c] = b.sub(&b.mul(alpha, &y), &b.mul(beta, &x));
    }
}

fn mix_cols(b: &Backend, a: &mut Matrix, i: usize, j: usize, k: [&RingElem; 4]) {
    let [u, v, beta, alpha] = k;
    for row in a.iter_mut() {
        let (x, y) = (row[i].clone(), row[j].clone());
        row[i] = b.add(&b.mul(u, &x), &b.mul(v, &y));
        row[j] = b.sub(&b.mul(alpha, &y), &b.mul(beta, &x));
    }
}

fn bezout_move(b: &Backend, x: &RingElem, y: &RingElem) -> [RingElem; 4] {
    let (g, u, v) = b.gcd_bezout(x, y).expect("same backend");
    let beta = b.div_exact(y, &g).expect("gcd divides");
    let alpha = b.div_exact(x, &g).expect("gcd divides");
    [u, v, beta, alpha]
}

pub fn diagonalize(b: &Backend, a: &Matrix, m: usize) -> Diagonal {
    let n = a.len();
    let mut d = a.clone();
    let mut p = identity(b, n);
    let mut q = identity(b, m);
    for t in 0..n.min(m) {
        let Some((pi, pj)) = (t..n).flat_map(|i| (t..m).map(move |j| (i, j))).find(|&(i, j)| !d[i][j].is_zero()) else {
            break;
        };
        d.swap(t, pi);
        p.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in q.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            for i in t + 1..n {
                if !d[i][t].is_zero() {
                    let k = bezout_move(b, &d[t][t], &d[i][t]);
                    let k = [&k[0], &k[1], &k[2], &k[3]];
                    mix_rows(b, &mut d, t, i, k);
                    mix_rows(b, &mut p, t, i, k);
                }
            }
            for j in t + 1..m {
                if !d[t][j].is_zero() {
                    let k = bezout_move(b, &d[t][t], &d[t][j]);
                    let k = [&k[0], &k[1], &k[2], &k[3]];
                    mix_cols(b, &mut d, t, j, k);
                    mix_cols(b, &mut q, t, j, k);
                }
            }
            if (t + 1..n).any(|i| !d[i][t].is_zero()) {
                continue;
            }
            let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| !b.divides(&d[t][t], &d[i][j])));
            match bad {
                Some(i) => {
                    let one = b.one();
                    let zero = b.zero();
                    mix_rows(b, &mut d, t, i, [&one, &one, &zero, &one]);
                    mix_rows(b, &mut p, t, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }
    }
    Diagonal { d, p, q }
}

#[cfg(test)]
pub fn mat_mul(b: &Backend, x: &Matrix, y: &Matrix, inner: usize, cols: usize) -> Matrix {
    x.iter()
        .map(|row| {
            (0..cols).map(|j| (0..inner).fold(b.zero(), |acc, k| b.add(&acc, &b.mul(&row[k], &y[k][j])))).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| RingElem::int(x)).collect()).collect()
    }

    #[test]
    fn smith_form_of_small_integer_matrix() {
        let b = Backend::Integers;
        let a = zm(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let dg = diagonalize(&b, &a, 3);
        let pa = mat_mul(&b, &dg.p, &a, 3, 3);
        assert_eq!(mat_mul(&b, &pa, &dg.q, 3, 3), dg.d);
        let ds: Vec<RingElem> = dg.entries().iter().map(|x| b.canonical(x)).collect();
        assert_eq!(ds, vec![RingElem::int(2), RingElem::int(6), RingElem::int(12)]);
    }

    #[test]
    fn divisibility_is_restored() {
        let b = Backend::Integers;
        let a = zm(&[&[2, 0], &[0, 3]]);
        let dg = diagonalize(&b, &a, 2);
        let ds: Vec<RingElem> = dg.entries().iter().map(|x| b.canonical(x)).collect();
        assert_eq!(ds, vec![RingElem::int(1), RingElem::int(6)]);
    }
}
