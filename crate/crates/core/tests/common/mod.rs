//! Independent oracles: dense exact elimination on graph Laplacians.

#![allow(dead_code)]

use num_traits::{One, Zero};
use simplicial_resistance::linalg::{rat, Rational};

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[c][c];
            let pivot = m[c].clone();
            for (x, p) in m[r].iter_mut().zip(pivot).skip(c) {
                *x -= &f * p;
            }
        }
    }
    det
}

/// Weighted Laplacian of a graph on vertices `0..n` with edge conductances.
pub fn laplacian(n: usize, edges: &[(usize, usize, Rational)]) -> Vec<Vec<Rational>> {
    let mut l = vec![vec![Rational::zero(); n]; n];
    for (u, v, c) in edges {
        l[*u][*u] += c;
        l[*v][*v] += c;
        l[*u][*v] -= c;
        l[*v][*u] -= c;
    }
    l
}

fn minor(m: &[Vec<Rational>], drop: &[usize]) -> Vec<Vec<Rational>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| !drop.contains(j))
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Weighted spanning tree count of a connected graph (matrix-tree theorem).
pub fn graph_tree_number(n: usize, edges: &[(usize, usize, Rational)]) -> Rational {
    det(minor(&laplacian(n, edges), &[0]))
}

/// Effective resistance between `a` and `b` as a ratio of Laplacian minors.
pub fn graph_resistance(n: usize, edges: &[(usize, usize, Rational)], a: usize, b: usize) -> Rational {
    let l = laplacian(n, edges);
    det(minor(&l, &[a, b])) / det(minor(&l, &[a]))
}

pub fn small_rational(a: i64, b: i64) -> Rational {
    rat(a) / rat(b)
}
