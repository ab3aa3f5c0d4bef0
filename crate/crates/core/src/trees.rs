//! Weighted simplicial spanning trees by exhaustive search.
//!
//! A top-dimensional spanning tree is a set of facets whose boundary columns
//! form a basis of the column space of `∂_d`: independence gives `b_d = 0`
//! and full rank gives `b_{d-1}(Υ) = b_{d-1}(Δ)`. Trees always carry the
//! full `(d-1)`-skeleton of the ambient complex, so the torsion of a tree is
//! read off the Smith form of its own columns.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::complex::{parse_simplex, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::linalg::{self, EchelonStack, ExactInt, Rational};

/// Largest facet count accepted for brute-force enumeration by default.
pub const DEFAULT_FACET_BOUND: usize = 24;

/// Positive rational vertex weights `x_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    weights: BTreeMap<Vertex, Rational>,
}

impl WeightAssignment {
    pub fn new(weights: BTreeMap<Vertex, Rational>) -> Result<Self> {
        for (v, x) in &weights {
            if *x <= Rational::zero() {
                return Err(Error::NonPositiveWeight(v.to_string()));
            }
        }
        Ok(WeightAssignment { weights })
    }

    /// All weights equal to one.
    pub fn unit(vertices: &[Vertex]) -> Self {
        Self::constant(vertices, Rational::one())
    }

    fn constant(vertices: &[Vertex], x: Rational) -> Self {
        WeightAssignment {
            weights: vertices.iter().map(|v| (*v, x.clone())).collect(),
        }
    }

    /// The first primes, assigned in vertex order.
    pub fn primes(vertices: &[Vertex]) -> Self {
        let primes = first_primes(vertices.len());
        WeightAssignment {
            weights: vertices
                .iter()
                .zip(primes)
                .map(|(v, p)| (*v, linalg::rat(p)))
                .collect(),
        }
    }

    /// Random small positive rationals `a/b` with `1 <= a <= 9`, `1 <= b <= 5`.
    pub fn random<R: Rng>(vertices: &[Vertex], rng: &mut R) -> Self {
        WeightAssignment {
            weights: vertices
                .iter()
                .map(|v| (*v, linalg::frac(rng.gen_range(1..=9), rng.gen_range(1..=5))))
                .collect(),
        }
    }

    /// Parses `vertex p/q` lines, with `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: n + 1,
                message,
            };
            let mut parts = line.split_whitespace();
            let (Some(v), Some(x), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(parse_err(format!("expected `vertex p/q`, got {line:?}")));
            };
            let v: Vertex = v.parse().map_err(parse_err)?;
            let x: Rational = x
                .parse()
                .map_err(|_| parse_err(format!("bad rational {x:?}")))?;
            if weights.insert(v, x).is_some() {
                return Err(parse_err(format!("vertex {v} given twice")));
            }
        }
        Self::new(weights)
    }

    pub fn get(&self, v: &Vertex) -> Result<&Rational> {
        self.weights
            .get(v)
            .ok_or_else(|| Error::MissingWeight(v.to_string()))
    }

    /// Sets one weight, for tests and fixtures.
    pub fn with(mut self, v: Vertex, x: Rational) -> Result<Self> {
        if x <= Rational::zero() {
            return Err(Error::NonPositiveWeight(v.to_string()));
        }
        self.weights.insert(v, x);
        Ok(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vertex, &Rational)> {
        self.weights.iter()
    }

    /// `x_τ = Π_{v ∈ τ} x_v`.
    pub fn simplex_weight(&self, s: &Simplex) -> Result<Rational> {
        s.vertices()
            .iter()
            .try_fold(Rational::one(), |acc, v| Ok(acc * self.get(v)?))
    }

    /// Facet weights in column order.
    pub fn facet_weights(&self, k: &SimplicialComplex) -> Result<Vec<Rational>> {
        k.facet_simplices().map(|s| self.simplex_weight(s)).collect()
    }
}

impl fmt::Display for WeightAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .weights
            .iter()
            .map(|(v, x)| format!("{v}={x}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn first_primes(n: usize) -> Vec<i64> {
    let mut primes: Vec<i64> = Vec::with_capacity(n);
    let mut c = 2;
    while primes.len() < n {
        if primes.iter().take_while(|p| *p * *p <= c).all(|p| c % p != 0) {
            primes.push(c);
        }
        c += 1;
    }
    primes
}

/// `k̂ = Σ x_Υ 𝐭²` together with the number of trees summed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNumber {
    pub value: Rational,
    pub tree_count: usize,
}

/// Facet columns of one spanning tree and the torsion order of its
/// `(d-1)`-homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub facets: Vec<usize>,
    pub torsion: BigInt,
}

impl SpanningTree {
    pub fn contains(&self, column: usize) -> bool {
        self.facets.binary_search(&column).is_ok()
    }

    /// `x_Υ 𝐭²`.
    pub fn weighted_term(&self, facet_weights: &[Rational]) -> Rational {
        let t = Rational::from_integer(&self.torsion * &self.torsion);
        self.facets
            .iter()
            .fold(t, |acc, &j| acc * &facet_weights[j])
    }
}

/// All spanning trees of a complex in lexicographic order of column tuples.
#[derive(Clone, Debug)]
pub struct TreeEnumeration {
    tree_size: usize,
    trees: Vec<SpanningTree>,
}

impl TreeEnumeration {
    /// Number of facets in every tree, `|Δ_d| - b_d(Δ)`.
    pub fn tree_size(&self) -> usize {
        self.tree_size
    }

    pub fn trees(&self) -> &[SpanningTree] {
        &self.trees
    }

    pub fn weighted_sum(&self, facet_weights: &[Rational]) -> TreeNumber {
        self.weighted_sum_where(facet_weights, |_| true)
    }

    /// Sum restricted to trees satisfying `keep`.
    pub fn weighted_sum_where(
        &self,
        facet_weights: &[Rational],
        keep: impl Fn(&SpanningTree) -> bool,
    ) -> TreeNumber {
        let mut value = Rational::zero();
        let mut tree_count = 0;
        for t in self.trees.iter().filter(|t| keep(t)) {
            value += t.weighted_term(facet_weights);
            tree_count += 1;
        }
        TreeNumber { value, tree_count }
    }
}

/// True iff the facet columns form a spanning tree: independent, and as
/// many as the rank of `∂_d`.
pub fn is_spanning_tree(k: &SimplicialComplex, facets: &[usize]) -> Result<bool> {
    let d = k.boundary_matrix(k.dim())?;
    let full = linalg::rank(&d);
    if facets.len() != full || facets.iter().any(|&j| j >= k.num_facets()) {
        return Ok(false);
    }
    Ok(linalg::rank(&d.select_columns(facets)) == full)
}

pub fn enumerate_trees(k: &SimplicialComplex, bound: usize) -> Result<TreeEnumeration> {
    enumerate_trees_containing(k, &[], bound)
}

/// Spanning trees containing every column in `forced`.
pub fn enumerate_trees_containing(
    k: &SimplicialComplex,
    forced: &[usize],
    bound: usize,
) -> Result<TreeEnumeration> {
    if k.num_facets() > bound {
        return Err(Error::TooManyFacets {
            facets: k.num_facets(),
            bound,
        });
    }
    let columns = k.boundary_columns(k.dim())?;
    let rows = k.faces_with_vertices(k.dim()).len();
    let tree_size = linalg::rank(&k.boundary_matrix(k.dim())?);
    match search::<i128>(&columns, rows, tree_size, forced) {
        Some(trees) => Ok(TreeEnumeration { tree_size, trees }),
        None => {
            let trees = search::<BigInt>(&columns, rows, tree_size, forced)
                .ok_or_else(|| Error::Internal("big integer echelon overflowed".into()))?;
            Ok(TreeEnumeration { tree_size, trees })
        }
    }
}

struct Search<'a, T> {
    columns: &'a [Vec<(usize, i8)>],
    rows: usize,
    tree_size: usize,
    skip: Vec<bool>,
    stack: EchelonStack<T>,
    chosen: Vec<usize>,
    trees: Vec<SpanningTree>,
}

fn search<T: ExactInt>(
    columns: &[Vec<(usize, i8)>],
    rows: usize,
    tree_size: usize,
    forced: &[usize],
) -> Option<Vec<SpanningTree>> {
    let mut s: Search<T> = Search {
        columns,
        rows,
        tree_size,
        skip: vec![false; columns.len()],
        stack: EchelonStack::new(rows),
        chosen: Vec::new(),
        trees: Vec::new(),
    };
    for &j in forced {
        if j >= columns.len() || s.skip[j] || !s.stack.push(&columns[j])? {
            return Some(Vec::new());
        }
        s.skip[j] = true;
        s.chosen.push(j);
    }
    s.descend(0)?;
    Some(s.trees)
}

impl<T: ExactInt> Search<'_, T> {
    fn descend(&mut self, from: usize) -> Option<()> {
        if self.chosen.len() == self.tree_size {
            let mut facets = self.chosen.clone();
            facets.sort_unstable();
            let cols: Vec<&[(usize, i8)]> =
                facets.iter().map(|&j| self.columns[j].as_slice()).collect();
            let torsion = linalg::torsion_of_columns(self.rows, &cols);
            self.trees.push(SpanningTree { facets, torsion });
            return Some(());
        }
        let need = self.tree_size - self.chosen.len();
        for j in from..self.columns.len() {
            if self.columns.len() - j < need {
                break;
            }
            if self.skip[j] {
                continue;
            }
            if self.stack.push(&self.columns[j])? {
                self.chosen.push(j);
                self.descend(j + 1)?;
                self.chosen.pop();
                self.stack.pop();
            }
        }
        Some(())
    }
}

/// Brute-force `k̂_d(Δ)`.
pub fn weighted_tree_number(
    k: &SimplicialComplex,
    w: &WeightAssignment,
    bound: usize,
) -> Result<TreeNumber> {
    Ok(enumerate_trees(k, bound)?.weighted_sum(&w.facet_weights(k)?))
}

/// `k̂_d(Δ)_𝛔`: trees containing the generator column, which has weight 1.
pub fn tree_number_with_forced_facet(
    k: &SimplicialComplex,
    generator: usize,
    w: &WeightAssignment,
    bound: usize,
) -> Result<TreeNumber> {
    if generator >= k.num_facets() {
        return Err(Error::MissingGenerator);
    }
    let mut weights = w.facet_weights(k)?;
    weights[generator] = Rational::one();
    Ok(enumerate_trees_containing(k, &[generator], bound)?.weighted_sum(&weights))
}

/// The ratio `k̂_d(Ψ ∪ σ)/k̂_d(Ψ) = x_σ`, valid when some proper subset of
/// `σ` is missing from `Ψ`.
pub fn facet_addition_ratio_disjoint(
    psi: &SimplicialComplex,
    sigma: &Simplex,
    w: &WeightAssignment,
) -> Result<Rational> {
    if sigma.len() != psi.dim() + 1 {
        return Err(Error::WrongGeneratorSize(sigma.to_string()));
    }
    let all_present = (0..sigma.len()).all(|k| psi.contains_face(&sigma.without(k)));
    if all_present {
        return Err(Error::AllBoundaryPresent(sigma.to_string()));
    }
    w.simplex_weight(sigma)
}

/// Parses a simplex given as whitespace separated vertex tokens.
pub fn simplex_arg(s: &str) -> Result<Simplex> {
    parse_simplex(s).map_err(|message| Error::Parse { line: 1, message })
}
