//! Pure simplicial complexes, oriented boundary maps and homology.
//!
//! Faces below the top dimension are stored once each, sorted
//! lexicographically by vertex list. Top-dimensional faces are the facets in
//! input order; two facets may share a vertex set, which is how a current
//! generator parallel to an existing facet is represented.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, IntegerMatrix, Rational, RationalMatrix};

/// A vertex, either a plain positive integer or `(color, index)`.
///
/// The derived order compares colored vertices by color and then by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Plain(u32),
    Colored { color: u32, index: u32 },
}

impl Vertex {
    pub fn colored(color: u32, index: u32) -> Self {
        Vertex::Colored { color, index }
    }

    pub fn is_colored(&self) -> bool {
        matches!(self, Vertex::Colored { .. })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Plain(v) => write!(f, "{v}"),
            Vertex::Colored { color, index } => write!(f, "{color}.{index}"),
        }
    }
}

impl FromStr for Vertex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let positive = |t: &str| -> std::result::Result<u32, String> {
            match t.parse::<u32>() {
                Ok(0) => Err(format!("vertex ids must be positive, got {s:?}")),
                Ok(v) => Ok(v),
                Err(_) => Err(format!("bad vertex token {s:?}")),
            }
        };
        match s.split_once('.') {
            Some((c, j)) => Ok(Vertex::colored(positive(c)?, positive(j)?)),
            None => Ok(Vertex::Plain(positive(s)?)),
        }
    }
}

/// A face given by its strictly increasing vertex list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Sorts the vertices; fails on repeats.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(format_vertices(&vertices)));
        }
        Ok(Simplex(vertices))
    }

    pub fn plain(vertices: &[u32]) -> Result<Self> {
        Self::new(vertices.iter().map(|&v| Vertex::Plain(v)).collect())
    }

    /// `(j_1, ..., j_{d+1})` as the facet with vertex `j_q` of color `q`.
    pub fn from_color_tuple(indices: &[usize]) -> Self {
        Simplex(
            indices
                .iter()
                .enumerate()
                .map(|(q, &j)| Vertex::colored(q as u32 + 1, j as u32))
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Number of vertices, one more than the dimension.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.0.binary_search(v).is_ok()
    }

    /// The face obtained by deleting the vertex at `position`.
    pub fn without(&self, position: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(position);
        Simplex(v)
    }

    /// Plain vertex ids, if the simplex is uncolored.
    pub fn plain_ids(&self) -> Option<Vec<u32>> {
        self.0
            .iter()
            .map(|v| match v {
                Vertex::Plain(x) => Some(*x),
                Vertex::Colored { .. } => None,
            })
            .collect()
    }

    /// Color indices `(j_1, ..., j_{d+1})` if the simplex has exactly one
    /// vertex of each color `1..=len`.
    pub fn color_tuple(&self) -> Option<Vec<usize>> {
        self.0
            .iter()
            .enumerate()
            .map(|(q, v)| match v {
                Vertex::Colored { color, index } if *color as usize == q + 1 => {
                    Some(*index as usize)
                }
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_vertices(&self.0))
    }
}

fn format_vertices(vertices: &[Vertex]) -> String {
    let parts: Vec<String> = vertices.iter().map(Vertex::to_string).collect();
    format!("{{{}}}", parts.join(" "))
}

/// Sorts an ordered vertex list, returning the sorted simplex and the sign
/// of the sorting permutation, or `None` if a vertex repeats.
pub fn orientation(vertices: &[Vertex]) -> Option<(Simplex, i8)> {
    let mut inversions = 0usize;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            match vertices[i].cmp(&vertices[j]) {
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut sorted = vertices.to_vec();
    sorted.sort();
    Some((Simplex(sorted), if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub id: FacetId,
    pub simplex: Simplex,
}

/// A pure simplicial complex (or Delta-complex with parallel top faces).
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    dim: usize,
    facets: Vec<Facet>,
    /// `faces[k]` holds the faces with `k` vertices, for `k <= dim`.
    faces: Vec<Vec<Simplex>>,
    face_index: Vec<BTreeMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Builds the complex generated by the given facets, keeping their order.
    pub fn from_facets(facets: Vec<Simplex>) -> Result<Self> {
        let first = facets.first().ok_or(Error::Empty)?;
        let size = first.len();
        if size == 0 {
            return Err(Error::Empty);
        }
        let colored = first.vertices()[0].is_colored();
        for f in &facets {
            if f.len() != size {
                return Err(Error::NotPure {
                    facet: f.to_string(),
                    found: f.len(),
                    expected: size,
                });
            }
            if f.vertices().iter().any(|v| v.is_colored() != colored) {
                return Err(Error::MixedVertices);
            }
        }
        let dim = size - 1;
        let mut sets: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); size];
        sets[0].insert(Simplex(Vec::new()));
        for f in &facets {
            let n = f.len();
            // every proper subset by bitmask; facets are small
            for mask in 1u64..(1u64 << n) - 1 {
                let sub: Vec<Vertex> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| f.vertices()[i])
                    .collect();
                sets[sub.len()].insert(Simplex(sub));
            }
        }
        let faces: Vec<Vec<Simplex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let face_index = faces
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        let facets = facets
            .into_iter()
            .enumerate()
            .map(|(i, simplex)| Facet {
                id: FacetId(i),
                simplex,
            })
            .collect();
        Ok(SimplicialComplex {
            dim,
            facets,
            faces,
            face_index,
        })
    }

    /// Parses the facet-list text format.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_facets(parse_facet_lines(text)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.facets.iter().map(|f| &f.simplex)
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_colored(&self) -> bool {
        self.facets[0].simplex.vertices()[0].is_colored()
    }

    /// Faces of dimension `i` for `-1 <= i < dim`, passed as the vertex
    /// count `i + 1`. The top dimension is [`facets`](Self::facets).
    pub fn faces_with_vertices(&self, count: usize) -> &[Simplex] {
        &self.faces[count]
    }

    /// Number of `i`-dimensional faces, counting parallel facets separately.
    pub fn face_count(&self, i: usize) -> usize {
        if i == self.dim {
            self.facets.len()
        } else {
            self.faces[i + 1].len()
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        if self.dim == 0 {
            let set: BTreeSet<Vertex> = self
                .facets
                .iter()
                .map(|f| f.simplex.vertices()[0])
                .collect();
            return set.into_iter().collect();
        }
        self.faces[1].iter().map(|s| s.vertices()[0]).collect()
    }

    /// Row index of a face of dimension below the top.
    pub fn face_position(&self, face: &Simplex) -> Option<usize> {
        self.face_index.get(face.len())?.get(face).copied()
    }

    /// True if the vertex set is a face (of any dimension).
    pub fn contains_face(&self, face: &Simplex) -> bool {
        if face.len() == self.dim + 1 {
            self.facet_position(face).is_some()
        } else {
            self.face_position(face).is_some()
        }
    }

    /// Column of the first facet with this vertex set.
    pub fn facet_position(&self, face: &Simplex) -> Option<usize> {
        self.facets.iter().position(|f| &f.simplex == face)
    }

    /// Columns of the boundary map `∂_i` as sparse `(row, ±1)` lists.
    pub fn boundary_columns(&self, i: usize) -> Result<Vec<Vec<(usize, i8)>>> {
        if i > self.dim {
            return Err(Error::DimensionOutOfRange {
                requested: i,
                max: self.dim,
            });
        }
        let column = |s: &Simplex| -> Vec<(usize, i8)> {
            let mut col: Vec<(usize, i8)> = (0..s.len())
                .map(|k| {
                    let row = self.face_index[i][&s.without(k)];
                    (row, if k % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort();
            col
        };
        Ok(if i == self.dim {
            self.facets.iter().map(|f| column(&f.simplex)).collect()
        } else {
            self.faces[i + 1].iter().map(column).collect()
        })
    }

    /// The oriented incidence matrix of `∂_i`, rows `Δ_{i-1}` and columns `Δ_i`.
    pub fn boundary_matrix(&self, i: usize) -> Result<RationalMatrix> {
        let cols = self.boundary_columns(i)?;
        let mut m = RationalMatrix::zeros(self.faces[i].len(), cols.len());
        for (j, col) in cols.iter().enumerate() {
            for &(r, e) in col {
                m.set(r, j, linalg::rat(i64::from(e)));
            }
        }
        Ok(m)
    }

    fn boundary_integer(&self, i: usize) -> Result<IntegerMatrix> {
        let cols = self.boundary_columns(i)?;
        let rows = self.faces[i].len();
        let mut data = vec![BigInt::zero(); rows * cols.len()];
        for (j, col) in cols.iter().enumerate() {
            for &(r, e) in col {
                data[r * cols.len() + j] = BigInt::from(e);
            }
        }
        Ok(IntegerMatrix::new(rows, cols.len(), data))
    }

    /// Rational rank of `∂_i`, with `∂_{dim+1} = 0`.
    pub fn boundary_rank(&self, i: usize) -> Result<usize> {
        if i == self.dim + 1 {
            return Ok(0);
        }
        Ok(linalg::rank(&self.boundary_matrix(i)?))
    }

    /// Reduced Betti number `b_i` over the rationals.
    pub fn betti(&self, i: usize) -> Result<usize> {
        if i > self.dim {
            return Err(Error::DimensionOutOfRange {
                requested: i,
                max: self.dim,
            });
        }
        let kernel = self.face_count(i) - self.boundary_rank(i)?;
        Ok(kernel - self.boundary_rank(i + 1)?)
    }

    /// Order of the torsion subgroup of the reduced integral homology in
    /// dimension `i`, read off the Smith form of `∂_{i+1}`.
    pub fn torsion_order(&self, i: usize) -> Result<BigInt> {
        if i > self.dim {
            return Err(Error::DimensionOutOfRange {
                requested: i,
                max: self.dim,
            });
        }
        if i == self.dim {
            return Ok(BigInt::one());
        }
        Ok(linalg::smith_normal_form(&self.boundary_integer(i + 1)?).torsion_order())
    }

    /// Same complex with facet `column` removed; the skeleton is recomputed.
    pub fn without_facet(&self, column: usize) -> Result<Self> {
        let facets = self
            .facets
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != column)
            .map(|(_, f)| f.simplex.clone())
            .collect();
        Self::from_facets(facets)
    }

    /// Same complex with one more facet appended as the last column.
    pub fn with_facet(&self, simplex: Simplex) -> Result<Self> {
        let mut facets: Vec<Simplex> = self.facet_simplices().cloned().collect();
        facets.push(simplex);
        Self::from_facets(facets)
    }

    /// Subcomplex generated by the listed facets (skeleton recomputed).
    pub fn restrict_to(&self, columns: &[usize]) -> Result<Self> {
        Self::from_facets(
            columns
                .iter()
                .map(|&j| self.facets[j].simplex.clone())
                .collect(),
        )
    }

    /// Facet-list text for this complex.
    pub fn to_facet_text(&self) -> String {
        let mut out = String::new();
        for f in &self.facets {
            let parts: Vec<String> = f.simplex.vertices().iter().map(Vertex::to_string).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses facet lines: whitespace separated vertex tokens, `#` comments,
/// blank lines ignored.
pub fn parse_facet_lines(text: &str) -> Result<Vec<Simplex>> {
    let mut facets = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        facets.push(parse_simplex(line).map_err(|message| Error::Parse {
            line: n + 1,
            message,
        })?);
    }
    Ok(facets)
}

/// Parses one whitespace separated vertex list such as `"2 4 5"` or `"1.2 2.2 3.2"`.
pub fn parse_simplex(line: &str) -> std::result::Result<Simplex, String> {
    let vertices = line
        .split_whitespace()
        .map(str::parse::<Vertex>)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if vertices.is_empty() {
        return Err("empty vertex list".into());
    }
    if vertices.iter().any(|v| v.is_colored() != vertices[0].is_colored()) {
        return Err("mixes colored and uncolored vertices".into());
    }
    Simplex::new(vertices).map_err(|e| e.to_string())
}

/// An exact chain: one coefficient per face of a fixed dimension, indexed
/// like the rows (or, at the top, the columns) of the boundary matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    dim: usize,
    coefficients: Vec<Rational>,
}

impl Chain {
    pub fn zero(dim: usize, len: usize) -> Self {
        Chain {
            dim,
            coefficients: vec![Rational::zero(); len],
        }
    }

    pub fn from_coefficients(dim: usize, coefficients: Vec<Rational>) -> Self {
        Chain { dim, coefficients }
    }

    /// The elementary chain `[τ]` for the face at `position`.
    pub fn elementary(dim: usize, len: usize, position: usize) -> Self {
        let mut c = Self::zero(dim, len);
        c.coefficients[position] = Rational::one();
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn get(&self, position: usize) -> &Rational {
        &self.coefficients[position]
    }

    pub fn set(&mut self, position: usize, value: Rational) {
        self.coefficients[position] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// Adds `coeff · [v_0, ..., v_k]` for an arbitrarily ordered vertex list,
    /// flipping the sign for an odd ordering. At the top dimension the first
    /// facet with that vertex set receives the coefficient.
    pub fn add_oriented(
        &mut self,
        complex: &SimplicialComplex,
        vertices: &[Vertex],
        coeff: &Rational,
    ) -> Result<()> {
        let (simplex, sign) =
            orientation(vertices).ok_or_else(|| Error::RepeatedVertex(format_vertices(vertices)))?;
        let position = if self.dim == complex.dim() {
            complex.facet_position(&simplex)
        } else {
            complex.face_position(&simplex)
        }
        .ok_or_else(|| Error::MissingFace(simplex.to_string()))?;
        if sign > 0 {
            self.coefficients[position] += coeff;
        } else {
            self.coefficients[position] -= coeff;
        }
        Ok(())
    }

    /// The oriented boundary `∂[v_0, ..., v_{k}]` of a simplex that need not
    /// itself be in the complex, as a chain on its `(k-1)`-faces.
    pub fn boundary_of(complex: &SimplicialComplex, vertices: &[Vertex]) -> Result<Chain> {
        let dim = vertices.len() - 2;
        let mut c = Chain::zero(dim, complex.face_count(dim));
        for k in 0..vertices.len() {
            let mut face = vertices.to_vec();
            face.remove(k);
            let sign = if k % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            c.add_oriented(complex, &face, &sign)?;
        }
        Ok(c)
    }
}

/// `⟨a, b⟩ = Σ a_τ b_τ` with oriented faces orthonormal.
pub fn inner_product(a: &Chain, b: &Chain) -> Result<Rational> {
    if a.dim != b.dim || a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: format!("dim {} len {}", a.dim, a.len()),
            right: format!("dim {} len {}", b.dim, b.len()),
        });
    }
    Ok(a.coefficients
        .iter()
        .zip(&b.coefficients)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn complex(lines: &str) -> SimplicialComplex {
        SimplicialComplex::parse(lines).unwrap()
    }

    #[test]
    fn single_edge_boundary() {
        let k = complex("1 2");
        let d1 = k.boundary_matrix(1).unwrap();
        assert_eq!(d1.rows(), 2);
        assert_eq!(d1.column(0), vec![rat(-1), rat(1)]);
        let d0 = k.boundary_matrix(0).unwrap();
        assert_eq!(d0.row(0), &[rat(1), rat(1)]);
    }

    #[test]
    fn boundary_squares_to_zero_on_triangle() {
        let k = complex("1 2 3");
        let prod = k.boundary_matrix(1).unwrap().mul(&k.boundary_matrix(2).unwrap());
        assert!(prod.is_zero());
        let prod = k.boundary_matrix(0).unwrap().mul(&k.boundary_matrix(1).unwrap());
        assert!(prod.is_zero());
    }

    #[test]
    fn dimension_out_of_range() {
        let k = complex("1 2");
        assert!(matches!(
            k.boundary_matrix(2),
            Err(Error::DimensionOutOfRange { requested: 2, max: 1 })
        ));
    }

    #[test]
    fn full_triangle_is_acyclic() {
        let k = complex("1 2 3");
        for i in 0..=2 {
            assert_eq!(k.betti(i).unwrap(), 0);
            assert_eq!(k.torsion_order(i).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn graphs_are_torsion_free() {
        let k = complex("1 2\n2 3\n1 3\n3 4");
        assert_eq!(k.torsion_order(0).unwrap(), BigInt::one());
        assert_eq!(k.betti(1).unwrap(), 1);
        assert_eq!(k.betti(0).unwrap(), 0);
    }

    #[test]
    fn disconnected_graph_has_reduced_b0() {
        let k = complex("1 2\n3 4");
        assert_eq!(k.betti(0).unwrap(), 1);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            SimplicialComplex::parse("1 2\n1.1 2.1"),
            Err(Error::MixedVertices)
        ));
        assert!(matches!(
            SimplicialComplex::parse("1 2\n1.1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            SimplicialComplex::parse("1 2\n1 2 3"),
            Err(Error::NotPure { .. })
        ));
        assert!(matches!(
            SimplicialComplex::parse("# nothing\n\n"),
            Err(Error::Empty)
        ));
        assert!(matches!(
            SimplicialComplex::parse("0 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            SimplicialComplex::parse("1 1"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn colored_vertices_order_by_color_then_index() {
        let s = parse_simplex("3.1 1.2 2.5").unwrap();
        assert_eq!(s.color_tuple(), Some(vec![2, 5, 1]));
        assert_eq!(s.to_string(), "{1.2 2.5 3.1}");
    }

    #[test]
    fn orientation_sign() {
        let v = |x| Vertex::Plain(x);
        assert_eq!(orientation(&[v(1), v(2), v(3)]).unwrap().1, 1);
        assert_eq!(orientation(&[v(2), v(1), v(3)]).unwrap().1, -1);
        assert_eq!(orientation(&[v(3), v(1), v(2)]).unwrap().1, 1);
        assert!(orientation(&[v(1), v(1)]).is_none());
    }

    #[test]
    fn inner_product_basics() {
        let a = Chain::elementary(1, 3, 0);
        let b = Chain::elementary(1, 3, 1);
        assert_eq!(inner_product(&a, &a).unwrap(), rat(1));
        assert_eq!(inner_product(&a, &b).unwrap(), rat(0));
        let c = Chain::elementary(2, 3, 0);
        assert!(matches!(
            inner_product(&a, &c),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn oriented_coefficients_flip_sign() {
        let k = complex("1 2\n2 3\n1 3");
        let mut c = Chain::zero(1, 3);
        c.add_oriented(&k, &[Vertex::Plain(2), Vertex::Plain(1)], &rat(5))
            .unwrap();
        assert_eq!(c.get(0), &rat(-5));
        let z = Chain::boundary_of(&k, &[Vertex::Plain(1), Vertex::Plain(2), Vertex::Plain(3)])
            .unwrap();
        // [23] - [13] + [12] in facet order 12, 23, 13
        assert_eq!(z.coefficients(), &[rat(1), rat(1), rat(-1)]);
    }

    #[test]
    fn parallel_facets_are_kept() {
        let k = complex("1 2\n2 3\n1 2");
        assert_eq!(k.num_facets(), 3);
        assert_eq!(k.face_count(0), 3);
        assert_eq!(k.betti(1).unwrap(), 1);
    }
}
