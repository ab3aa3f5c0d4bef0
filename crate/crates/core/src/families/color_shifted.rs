//! Color-shifted complexes: facets `(j_1, ..., j_{d+1})` with `j_q` the index
//! of the color-`q` vertex, closed under lowering any coordinate.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{product_of_powers, render_powers, ClosedForm, ExplicitCurrent, IncrementalBuild};
use crate::complex::{Chain, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::network::attach_generator;
use crate::trees::WeightAssignment;

const FAMILY: &str = "color-shifted";

fn not_in_family(reason: impl Into<String>) -> Error {
    Error::NotInFamily {
        family: FAMILY,
        reason: reason.into(),
    }
}

/// Vertex weights `x_{q,j}` per color with partial sums `D_{q,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorScheme {
    weights: Vec<Vec<Rational>>,
    partial: Vec<Vec<Rational>>,
}

impl ColorScheme {
    /// `weights[q-1][j-1] = x_{q,j}`.
    pub fn new(weights: Vec<Vec<Rational>>) -> Result<Self> {
        for (q, row) in weights.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if *x <= Rational::zero() {
                    return Err(Error::NonPositiveWeight(
                        Vertex::colored(q as u32 + 1, j as u32 + 1).to_string(),
                    ));
                }
            }
        }
        let partial = weights
            .iter()
            .map(|row| {
                let mut sums = vec![Rational::zero()];
                for x in row {
                    let next = sums.last().expect("nonempty") + x;
                    sums.push(next);
                }
                sums
            })
            .collect();
        Ok(ColorScheme { weights, partial })
    }

    /// Reads `x_{q,j}` for `j <= n_q` from a vertex weight assignment.
    pub fn from_assignment(n: &[usize], w: &WeightAssignment) -> Result<Self> {
        let weights = n
            .iter()
            .enumerate()
            .map(|(q, &nq)| {
                (1..=nq)
                    .map(|j| w.get(&Vertex::colored(q as u32 + 1, j as u32)).cloned())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }

    pub fn unit(n: &[usize]) -> Self {
        Self::new(n.iter().map(|&nq| vec![Rational::one(); nq]).collect())
            .expect("unit weights are positive")
    }

    pub fn colors(&self) -> usize {
        self.weights.len()
    }

    pub fn n(&self, q: usize) -> usize {
        self.weights[q - 1].len()
    }

    /// `x_{q,j}`, both indices from 1.
    pub fn x(&self, q: usize, j: usize) -> &Rational {
        &self.weights[q - 1][j - 1]
    }

    /// `D_{q,j} = Σ_{i <= j} x_{q,i}`, with `D_{q,0} = 0`.
    pub fn d(&self, q: usize, j: usize) -> &Rational {
        &self.partial[q - 1][j]
    }
}

/// The color tuple of every facet, in column order.
pub fn color_tuples(k: &SimplicialComplex) -> Result<Vec<Vec<usize>>> {
    k.facet_simplices()
        .map(|s| {
            s.color_tuple()
                .ok_or_else(|| not_in_family(format!("{s} does not have one vertex of each color")))
        })
        .collect()
}

/// Checks the order-ideal condition and returns `n_q`, the largest index
/// used in each color.
pub fn check(k: &SimplicialComplex) -> Result<Vec<usize>> {
    let tuples = color_tuples(k)?;
    let set: BTreeSet<&Vec<usize>> = tuples.iter().collect();
    if set.len() != tuples.len() {
        return Err(not_in_family("a facet is repeated"));
    }
    let mut n = vec![0; k.dim() + 1];
    for t in &tuples {
        for (q, &j) in t.iter().enumerate() {
            n[q] = n[q].max(j);
            if j > 1 {
                let mut lower = t.clone();
                lower[q] = j - 1;
                if !set.contains(&lower) {
                    return Err(not_in_family(format!(
                        "{} is a facet but {} is not",
                        Simplex::from_color_tuple(t),
                        Simplex::from_color_tuple(&lower)
                    )));
                }
            }
        }
    }
    Ok(n)
}

pub fn is_color_shifted(k: &SimplicialComplex) -> bool {
    check(k).is_ok()
}

/// `⟨S⟩`: all tuples below some generator, in lexicographic order.
pub fn generate(generators: &[Vec<usize>]) -> Result<SimplicialComplex> {
    let first = generators.first().ok_or(Error::Empty)?;
    let size = first.len();
    for g in generators {
        if g.len() != size || g.contains(&0) {
            return Err(not_in_family(format!("bad generator {g:?}")));
        }
    }
    let bounds: Vec<usize> = (0..size)
        .map(|q| generators.iter().map(|g| g[q]).max().expect("nonempty"))
        .collect();
    let mut facets = Vec::new();
    let mut t = vec![1; size];
    loop {
        if generators.iter().any(|g| t.iter().zip(g).all(|(a, b)| a <= b)) {
            facets.push(Simplex::from_color_tuple(&t));
        }
        // odometer over the bounding box, last coordinate fastest
        let mut q = size;
        loop {
            if q == 0 {
                return SimplicialComplex::from_facets(facets);
            }
            q -= 1;
            if t[q] < bounds[q] {
                t[q] += 1;
                break;
            }
            t[q] = 1;
        }
    }
}

/// The complete colorful complex `V_1 * ... * V_{d+1}`.
pub fn complete(n: &[usize]) -> Result<SimplicialComplex> {
    generate(&[n.to_vec()])
}

/// Columns of `Λ`, the facets with some coordinate equal to 1.
pub fn canonical_tree(k: &SimplicialComplex) -> Result<Vec<usize>> {
    Ok(color_tuples(k)?
        .iter()
        .enumerate()
        .filter(|(_, t)| t.contains(&1))
        .map(|(j, _)| j)
        .collect())
}

/// `z_τ = Σ_A (-1)^{|A|} [...]` for each facet `τ ∉ Λ`, keyed by its column.
pub fn cycle_basis(k: &SimplicialComplex) -> Result<Vec<(usize, Chain)>> {
    let tuples = color_tuples(k)?;
    let mut out = Vec::new();
    for (col, t) in tuples.iter().enumerate() {
        if t.contains(&1) {
            continue;
        }
        let size = t.len();
        let mut z = Chain::zero(k.dim(), k.num_facets());
        for mask in 0u32..(1 << size) {
            let face: Vec<usize> = (0..size)
                .map(|q| if mask & (1 << q) != 0 { 1 } else { t[q] })
                .collect();
            let sign = if mask.count_ones() % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            let s = Simplex::from_color_tuple(&face);
            z.add_oriented(k, s.vertices(), &sign)?;
        }
        out.push((col, z));
    }
    Ok(out)
}

/// Componentwise-maximal facets with every coordinate at least 2.
pub fn maximal_facets(k: &SimplicialComplex) -> Result<Vec<usize>> {
    let tuples = color_tuples(k)?;
    let set: BTreeSet<&Vec<usize>> = tuples.iter().collect();
    Ok(tuples
        .iter()
        .enumerate()
        .filter(|(_, t)| t.iter().all(|&j| j >= 2) && is_maximal(t, &set))
        .map(|(j, _)| j)
        .collect())
}

fn is_maximal(t: &[usize], set: &BTreeSet<&Vec<usize>>) -> bool {
    (0..t.len()).all(|q| {
        let mut up = t.to_vec();
        up[q] += 1;
        !set.contains(&up)
    })
}

/// The closed-form current for a maximal facet `σ = (ℓ_1, ..., ℓ_{d+1})`.
pub fn explicit_current(
    k: &SimplicialComplex,
    scheme: &ColorScheme,
    sigma: &[usize],
) -> Result<ExplicitCurrent> {
    let tuples = color_tuples(k)?;
    if sigma.len() != k.dim() + 1 {
        return Err(Error::WrongGeneratorSize(format!("{sigma:?}")));
    }
    if sigma.iter().any(|&l| l < 2) {
        return Err(Error::Hypothesis(format!(
            "{} has a coordinate equal to 1",
            Simplex::from_color_tuple(sigma)
        )));
    }
    let set: BTreeSet<&Vec<usize>> = tuples.iter().collect();
    if !set.contains(&sigma.to_vec()) {
        return Err(Error::NotAFacet(Simplex::from_color_tuple(sigma).to_string()));
    }
    if !is_maximal(sigma, &set) {
        return Err(Error::Hypothesis(format!(
            "{} is not maximal in componentwise order",
            Simplex::from_color_tuple(sigma)
        )));
    }
    let u = |q: usize, j: usize| -> Rational {
        if j == sigma[q - 1] {
            scheme.d(q, j - 1).clone()
        } else {
            -scheme.x(q, j)
        }
    };
    let generator: Rational = (1..=sigma.len())
        .map(|q| scheme.d(q, sigma[q - 1]).clone())
        .product();
    let values = tuples
        .iter()
        .map(|t| {
            if t.iter().zip(sigma).any(|(j, l)| j > l) {
                return Rational::zero();
            }
            let prod: Rational = t.iter().enumerate().map(|(q, &j)| u(q + 1, j)).product();
            if t.as_slice() == sigma {
                prod - &generator
            } else {
                prod
            }
        })
        .collect();
    let attached = attach_generator(k, &Simplex::from_color_tuple(sigma))?;
    ExplicitCurrent::new(attached, values, generator)
}

/// `Π_q D_{q,ℓ_q} / D_{q,ℓ_q - 1}`.
pub fn ratio(scheme: &ColorScheme, sigma: &[usize]) -> Result<Rational> {
    if sigma.iter().any(|&l| l < 2) {
        return Err(Error::Hypothesis(format!(
            "{} has a coordinate equal to 1",
            Simplex::from_color_tuple(sigma)
        )));
    }
    Ok(sigma
        .iter()
        .enumerate()
        .map(|(q, &l)| scheme.d(q + 1, l) / scheme.d(q + 1, l - 1))
        .product())
}

/// `e(q,i)`: facets containing `v_{q,i}` and `v_{r,1}` for some `r ≠ q`.
pub fn exponents(k: &SimplicialComplex) -> Result<BTreeMap<(usize, usize), usize>> {
    let tuples = color_tuples(k)?;
    let mut e = BTreeMap::new();
    for t in &tuples {
        for (q, &i) in t.iter().enumerate() {
            let other_first = t.iter().enumerate().any(|(r, &j)| r != q && j == 1);
            let entry = e.entry((q + 1, i)).or_insert(0);
            if other_first {
                *entry += 1;
            }
        }
    }
    Ok(e)
}

/// A ridge avoiding every index-1 vertex, with its missing color `m(ρ)`
/// and `k(ρ)`, the largest index of that color completing it to a facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRidge {
    pub ridge: Simplex,
    pub missing: usize,
    pub k: usize,
}

pub fn gamma_ridges(k: &SimplicialComplex) -> Result<Vec<GammaRidge>> {
    let tuples = color_tuples(k)?;
    let mut top: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for t in &tuples {
        for q in 0..t.len() {
            let mut rest = t.clone();
            rest.remove(q);
            let entry = top.entry((q + 1, rest)).or_insert(0);
            *entry = (*entry).max(t[q]);
        }
    }
    let mut out: Vec<GammaRidge> = top
        .into_iter()
        .filter(|((_, rest), _)| rest.iter().all(|&j| j >= 2))
        .map(|((missing, rest), k)| {
            let vertices = rest
                .iter()
                .enumerate()
                .map(|(p, &j)| {
                    let color = if p + 1 < missing { p + 1 } else { p + 2 };
                    Vertex::colored(color as u32, j as u32)
                })
                .collect();
            GammaRidge {
                ridge: Simplex::new(vertices).expect("distinct colors"),
                missing,
                k,
            }
        })
        .collect();
    out.sort_by(|a, b| a.ridge.cmp(&b.ridge));
    Ok(out)
}

/// `Π x_{q,i}^{e(q,i)} Π_{ρ ∈ Γ_{d-1}} D_{m(ρ),k(ρ)}`.
pub fn tree_number(k: &SimplicialComplex, scheme: &ColorScheme) -> Result<ClosedForm> {
    check(k)?;
    let e = exponents(k)?;
    let mut dpow: BTreeMap<(usize, std::cmp::Reverse<usize>), usize> = BTreeMap::new();
    for r in gamma_ridges(k)? {
        *dpow.entry((r.missing, std::cmp::Reverse(r.k))).or_insert(0) += 1;
    }
    let value = product_of_powers(&e, |&(q, i)| scheme.x(q, i).clone())
        * product_of_powers(&dpow, |&(q, std::cmp::Reverse(j))| scheme.d(q, j).clone());
    let monomial = render_powers(e, |(q, i)| format!("x({q},{i})"));
    let sums = render_powers(dpow, |(q, std::cmp::Reverse(j))| format!("D({q},{j})"));
    Ok(ClosedForm {
        value,
        formula: format!("{monomial} {sums}"),
    })
}

/// Both sides of the telescoping identity for color `q`:
/// `Π_{σ ∈ Γ_d} D_{q,j_q}/D_{q,j_q - 1}` and `Π_{ρ ∈ Γ_{d-1,q}} D_{q,k(ρ)}/D_{q,1}`.
pub fn telescoping(
    k: &SimplicialComplex,
    scheme: &ColorScheme,
    q: usize,
) -> Result<(Rational, Rational)> {
    let left = color_tuples(k)?
        .iter()
        .filter(|t| !t.contains(&1))
        .map(|t| scheme.d(q, t[q - 1]) / scheme.d(q, t[q - 1] - 1))
        .product();
    let right = gamma_ridges(k)?
        .iter()
        .filter(|r| r.missing == q)
        .map(|r| scheme.d(q, r.k) / scheme.d(q, 1))
        .product();
    Ok((left, right))
}

/// `Λ` followed by the facets of `Γ` in lexicographic order.
pub fn incremental_build(k: &SimplicialComplex) -> Result<IncrementalBuild> {
    Ok(IncrementalBuild::new(k, canonical_tree(k)?))
}
