//! Shifted complexes: facets form an order ideal in Gale order on
//! `(d+1)`-subsets of `{1, ..., n}`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{product_of_powers, render_powers, ClosedForm, ExplicitCurrent, IncrementalBuild};
use crate::complex::{Chain, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::network::attach_generator;
use crate::trees::WeightAssignment;

const FAMILY: &str = "shifted";

fn not_in_family(reason: impl Into<String>) -> Error {
    Error::NotInFamily {
        family: FAMILY,
        reason: reason.into(),
    }
}

fn show(s: &[usize]) -> String {
    let ids: Vec<u32> = s.iter().map(|&v| v as u32).collect();
    Simplex::plain(&ids)
        .map(|x| x.to_string())
        .unwrap_or_else(|_| format!("{s:?}"))
}

fn to_simplex(s: &[usize]) -> Simplex {
    Simplex::new(s.iter().map(|&v| Vertex::Plain(v as u32)).collect()).expect("distinct vertices")
}

/// Vertex weights `x_1, ..., x_n` with partial sums `D_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleWeights {
    weights: Vec<Rational>,
    partial: Vec<Rational>,
}

impl GaleWeights {
    /// `weights[q-1] = x_q`.
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some(q) = weights.iter().position(|x| *x <= Rational::zero()) {
            return Err(Error::NonPositiveWeight((q + 1).to_string()));
        }
        let mut partial = vec![Rational::zero()];
        for x in &weights {
            let next = partial.last().expect("nonempty") + x;
            partial.push(next);
        }
        Ok(GaleWeights { weights, partial })
    }

    pub fn from_assignment(n: usize, w: &WeightAssignment) -> Result<Self> {
        Self::new(
            (1..=n)
                .map(|q| w.get(&Vertex::Plain(q as u32)).cloned())
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn unit(n: usize) -> Self {
        Self::new(vec![Rational::one(); n]).expect("unit weights are positive")
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// `x_q`, from 1.
    pub fn x(&self, q: usize) -> &Rational {
        &self.weights[q - 1]
    }

    /// `D_q = Σ_{r <= q} x_r`, with `D_0 = 0`.
    pub fn d(&self, q: usize) -> &Rational {
        &self.partial[q]
    }
}

/// `a <= b` in Gale order: equal sizes and `a_i <= b_i` after sorting.
pub fn gale_le(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Sorted vertex ids of every facet, in column order.
pub fn vertex_sets(k: &SimplicialComplex) -> Result<Vec<Vec<usize>>> {
    k.facet_simplices()
        .map(|s| {
            s.plain_ids()
                .map(|ids| ids.into_iter().map(|v| v as usize).collect())
                .ok_or_else(|| not_in_family("vertices are colored"))
        })
        .collect()
}

/// Checks the order-ideal condition and returns the largest vertex.
pub fn check(k: &SimplicialComplex) -> Result<usize> {
    let sets = vertex_sets(k)?;
    let set: BTreeSet<&Vec<usize>> = sets.iter().collect();
    if set.len() != sets.len() {
        return Err(not_in_family("a facet is repeated"));
    }
    for s in &sets {
        for c in down_covers(s) {
            if !set.contains(&c.face) {
                return Err(not_in_family(format!(
                    "{} is a facet but {} is not",
                    show(s),
                    show(&c.face)
                )));
            }
        }
    }
    Ok(sets.iter().filter_map(|s| s.last().copied()).max().unwrap_or(0))
}

pub fn is_shifted(k: &SimplicialComplex) -> bool {
    check(k).is_ok()
}

/// `⟨S⟩`: all sets below some generator in Gale order, lexicographically.
pub fn generate(generators: &[Vec<usize>]) -> Result<SimplicialComplex> {
    let first = generators.first().ok_or(Error::Empty)?;
    let size = first.len();
    let mut gens = Vec::with_capacity(generators.len());
    for g in generators {
        let mut g = g.clone();
        g.sort_unstable();
        if g.len() != size || g.first() == Some(&0) || g.windows(2).any(|w| w[0] == w[1]) {
            return Err(not_in_family(format!("bad generator {g:?}")));
        }
        gens.push(g);
    }
    let n = gens.iter().filter_map(|g| g.last().copied()).max().unwrap_or(0);
    let mut facets = Vec::new();
    let mut current = Vec::with_capacity(size);
    subsets(1, n, size, &mut current, &mut |s| {
        if gens.iter().any(|g| gale_le(s, g)) {
            facets.push(to_simplex(s));
        }
    });
    SimplicialComplex::from_facets(facets)
}

fn subsets(from: usize, n: usize, size: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == size {
        f(cur);
        return;
    }
    for v in from..=n {
        if n - v + 1 < size - cur.len() {
            break;
        }
        cur.push(v);
        subsets(v + 1, n, size, cur, f);
        cur.pop();
    }
}

/// `Γ`, `Λ` and the canonical tree `1 ∗ Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Columns of facets avoiding vertex 1.
    pub gamma: Vec<usize>,
    /// Columns of facets containing vertex 1, the tree `1 ∗ Λ`.
    pub cone: Vec<usize>,
    /// Facets of `Λ`: the faces `ρ` with `ρ ∪ {1}` a facet.
    pub lambda: Vec<Simplex>,
}

pub fn decompose(k: &SimplicialComplex) -> Result<Decomposition> {
    let sets = vertex_sets(k)?;
    let mut d = Decomposition {
        gamma: Vec::new(),
        cone: Vec::new(),
        lambda: Vec::new(),
    };
    for (j, s) in sets.iter().enumerate() {
        if s.first() == Some(&1) {
            d.cone.push(j);
            d.lambda.push(to_simplex(&s[1..]));
        } else {
            d.gamma.push(j);
        }
    }
    d.lambda.sort();
    Ok(d)
}

pub fn canonical_tree(k: &SimplicialComplex) -> Result<Vec<usize>> {
    Ok(decompose(k)?.cone)
}

/// `z_τ = ∂[1, j_1, ..., j_{d+1}]` for each `τ ∈ Γ_d`, keyed by its column.
pub fn cycle_basis(k: &SimplicialComplex) -> Result<Vec<(usize, Chain)>> {
    let sets = vertex_sets(k)?;
    let mut out = Vec::new();
    for j in decompose(k)?.gamma {
        let mut cone = vec![Vertex::Plain(1)];
        cone.extend(sets[j].iter().map(|&v| Vertex::Plain(v as u32)));
        out.push((j, Chain::boundary_of(k, &cone)?));
    }
    Ok(out)
}

/// Gale-maximal facets avoiding vertex 1.
pub fn maximal_facets(k: &SimplicialComplex) -> Result<Vec<usize>> {
    let sets = vertex_sets(k)?;
    let set: BTreeSet<&Vec<usize>> = sets.iter().collect();
    let n = sets.iter().filter_map(|s| s.last().copied()).max().unwrap_or(0);
    Ok(sets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.first().is_some_and(|&v| v >= 2) && is_maximal(s, n, &set))
        .map(|(j, _)| j)
        .collect())
}

fn is_maximal(s: &[usize], n: usize, set: &BTreeSet<&Vec<usize>>) -> bool {
    up_covers(s, n + 1).iter().all(|c| !set.contains(&c.face))
}

/// `π(τ)`: position `q` maps to `r` when `j_q = ℓ_r`; the other positions
/// take the remaining values in increasing order.
fn permutation(tau: &[usize], sigma: &[usize]) -> Vec<usize> {
    let mut pi = vec![usize::MAX; tau.len()];
    let mut used = vec![false; sigma.len()];
    for (q, j) in tau.iter().enumerate() {
        if let Some(r) = sigma.iter().position(|l| l == j) {
            pi[q] = r;
            used[r] = true;
        }
    }
    let mut free = (0..sigma.len()).filter(|r| !used[*r]);
    for p in pi.iter_mut().filter(|p| **p == usize::MAX) {
        *p = free.next().expect("sizes agree");
    }
    pi
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
        .sum()
}

/// The closed-form current for a Gale-maximal facet `σ = ℓ_1 < ... < ℓ_{d+1}`.
pub fn explicit_current(
    k: &SimplicialComplex,
    gw: &GaleWeights,
    sigma: &[usize],
) -> Result<ExplicitCurrent> {
    let sets = vertex_sets(k)?;
    let mut sigma = sigma.to_vec();
    sigma.sort_unstable();
    if sigma.len() != k.dim() + 1 {
        return Err(Error::WrongGeneratorSize(show(&sigma)));
    }
    if sigma[0] < 2 {
        return Err(Error::Hypothesis(format!("{} contains vertex 1", show(&sigma))));
    }
    let set: BTreeSet<&Vec<usize>> = sets.iter().collect();
    if !set.contains(&sigma) {
        return Err(Error::NotAFacet(show(&sigma)));
    }
    let n = sets.iter().filter_map(|s| s.last().copied()).max().unwrap_or(0);
    if !is_maximal(&sigma, n, &set) {
        return Err(Error::Hypothesis(format!(
            "{} is not maximal in Gale order",
            show(&sigma)
        )));
    }
    let generator: Rational = sigma.iter().map(|&l| gw.d(l).clone()).product();
    let below: Rational = sigma.iter().map(|&l| gw.d(l - 1).clone()).product();
    let values = sets
        .iter()
        .map(|tau| {
            if !gale_le(tau, &sigma) {
                Rational::zero()
            } else if *tau == sigma {
                &below - &generator
            } else {
                let prod: Rational = tau
                    .iter()
                    .enumerate()
                    .map(|(q, &j)| {
                        let prev = if q == 0 { 0 } else { sigma[q - 1] };
                        if j < prev {
                            Rational::zero()
                        } else if j == prev {
                            gw.d(prev).clone()
                        } else if j < sigma[q] {
                            -gw.x(j)
                        } else {
                            gw.d(sigma[q] - 1).clone()
                        }
                    })
                    .product();
                if inversions(&permutation(tau, &sigma)).is_multiple_of(2) {
                    prod
                } else {
                    -prod
                }
            }
        })
        .collect();
    let attached = attach_generator(k, &to_simplex(&sigma))?;
    ExplicitCurrent::new(attached, values, generator)
}

/// `Π_q D_{ℓ_q} / D_{ℓ_q - 1}`.
pub fn ratio(gw: &GaleWeights, sigma: &[usize]) -> Result<Rational> {
    if sigma.iter().any(|&l| l < 2) {
        return Err(Error::Hypothesis(format!("{} contains vertex 1", show(sigma))));
    }
    Ok(sigma.iter().map(|&l| gw.d(l) / gw.d(l - 1)).product())
}

/// A maximal run `start, start+1, ..., end` inside a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub end: usize,
}

pub fn blocks(s: &[usize]) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::new();
    for &v in s {
        match out.last_mut() {
            Some(b) if b.end + 1 == v => b.end = v,
            _ => out.push(Block { start: v, end: v }),
        }
    }
    out
}

/// A Gale covering relation seen from one side, with its label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub face: Vec<usize>,
    pub label: usize,
}

/// Sets covering `s`, one per block: `t_B` becomes `t_B + 1`, label `t_B`.
/// Only covers inside `{1, ..., n}` are returned.
pub fn up_covers(s: &[usize], n: usize) -> Vec<Cover> {
    blocks(s)
        .into_iter()
        .filter(|b| b.end < n)
        .map(|b| Cover {
            face: s.iter().map(|&v| if v == b.end { v + 1 } else { v }).collect(),
            label: b.end,
        })
        .collect()
}

/// Sets covered by `s`, one per block with `s_B > 1`: label `s_B - 1`.
pub fn down_covers(s: &[usize]) -> Vec<Cover> {
    blocks(s)
        .into_iter()
        .filter(|b| b.start > 1)
        .map(|b| Cover {
            face: s.iter().map(|&v| if v == b.start { v - 1 } else { v }).collect(),
            label: b.start - 1,
        })
        .collect()
}

/// A critical pair `σ ⋖ τ` with `σ ∈ Γ_d` and `τ ∉ Δ`. Its signature has
/// `T = {2, ..., label}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub label: usize,
}

impl Signature {
    pub fn max_t(&self) -> usize {
        self.label
    }
}

/// Critical pairs of `Γ`, with covers taken among subsets of
/// `{1, ..., n + 1}` for `n` the largest vertex.
pub fn signatures(k: &SimplicialComplex) -> Result<Vec<Signature>> {
    let sets = vertex_sets(k)?;
    let set: BTreeSet<&Vec<usize>> = sets.iter().collect();
    let n = sets.iter().filter_map(|s| s.last().copied()).max().unwrap_or(0);
    let mut gamma: Vec<&Vec<usize>> = sets.iter().filter(|s| s.first() != Some(&1)).collect();
    gamma.sort();
    let mut out = Vec::new();
    for s in gamma {
        for c in up_covers(s, n + 1) {
            if !set.contains(&c.face) {
                out.push(Signature {
                    lower: s.clone(),
                    upper: c.face,
                    label: c.label,
                });
            }
        }
    }
    Ok(out)
}

/// `x_1^{|Λ_{d-1}|} Π_i x_i^{deg_Λ(i)} Π_{(S,T)} D_{max T} / D_1`.
pub fn tree_number(k: &SimplicialComplex, gw: &GaleWeights) -> Result<ClosedForm> {
    check(k)?;
    let dec = decompose(k)?;
    let mut monomial: BTreeMap<usize, usize> = BTreeMap::new();
    if !dec.lambda.is_empty() {
        monomial.insert(1, dec.lambda.len());
    }
    for rho in &dec.lambda {
        for v in rho.plain_ids().expect("plain") {
            *monomial.entry(v as usize).or_insert(0) += 1;
        }
    }
    let sigs = signatures(k)?;
    let mut numerator: BTreeMap<std::cmp::Reverse<usize>, usize> = BTreeMap::new();
    for s in &sigs {
        *numerator.entry(std::cmp::Reverse(s.max_t())).or_insert(0) += 1;
    }
    let value = product_of_powers(&monomial, |&i| gw.x(i).clone())
        * product_of_powers(&numerator, |&std::cmp::Reverse(t)| gw.d(t).clone())
        / num_traits::pow(gw.d(1).clone(), sigs.len());
    let mut formula = render_powers(monomial, |i| format!("x({i})"));
    if !sigs.is_empty() {
        let num = render_powers(numerator, |std::cmp::Reverse(t)| format!("D({t})"));
        let den = render_powers([(1usize, sigs.len())], |_| "D(1)".to_string());
        formula = format!("{formula} {num} / {den}");
    }
    Ok(ClosedForm { value, formula })
}

/// `1 ∗ Λ` followed by the facets of `Γ` in lexicographic order.
pub fn incremental_build(k: &SimplicialComplex) -> Result<IncrementalBuild> {
    Ok(IncrementalBuild::new(k, canonical_tree(k)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, rat};
    use crate::trees::{is_spanning_tree, weighted_tree_number};

    fn primes(n: usize) -> GaleWeights {
        let p = [2i64, 3, 5, 7, 11, 13, 17, 19];
        GaleWeights::new(p[..n].iter().map(|&x| rat(x)).collect()).unwrap()
    }

    fn assignment(gw: &GaleWeights) -> WeightAssignment {
        let mut w = WeightAssignment::unit(&[]);
        for q in 1..=gw.n() {
            w = w.with(Vertex::Plain(q as u32), gw.x(q).clone()).unwrap();
        }
        w
    }

    fn current_of(c: &ExplicitCurrent, k: &SimplicialComplex, tau: &[u32]) -> Rational {
        let col = k.facet_position(&Simplex::plain(tau).unwrap()).unwrap();
        c.current().get(col).clone()
    }

    #[test]
    fn generated_facets() {
        let k = generate(&[vec![2, 4, 5]]).unwrap();
        assert_eq!(
            vertex_sets(&k).unwrap(),
            vec![
                vec![1, 2, 3],
                vec![1, 2, 4],
                vec![1, 2, 5],
                vec![1, 3, 4],
                vec![1, 3, 5],
                vec![1, 4, 5],
                vec![2, 3, 4],
                vec![2, 3, 5],
                vec![2, 4, 5]
            ]
        );
        assert_eq!(generate(&[vec![1, 2, 3]]).unwrap().num_facets(), 1);
        assert_eq!(generate(&[vec![2, 3, 5]]).unwrap().num_facets(), 7);
        assert_eq!(check(&k).unwrap(), 5);
    }

    #[test]
    fn decomposition_of_245() {
        let k = generate(&[vec![2, 4, 5]]).unwrap();
        let d = decompose(&k).unwrap();
        assert_eq!(d.cone, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(d.gamma, vec![6, 7, 8]);
        assert_eq!(d.lambda.len(), 6);
        assert!(is_spanning_tree(&k, &d.cone).unwrap());
        assert_eq!(cycle_basis(&k).unwrap().len(), 3);
        assert_eq!(k.betti(2).unwrap(), 3);
    }

    #[test]
    fn cone_has_no_cycles() {
        let k = generate(&[vec![1, 3, 4]]).unwrap();
        assert!(decompose(&k).unwrap().gamma.is_empty());
        assert!(cycle_basis(&k).unwrap().is_empty());
        assert!(signatures(&k).unwrap().is_empty());
    }

    #[test]
    fn cycle_signs() {
        let k = generate(&[vec![2, 3, 4]]).unwrap();
        let (col, z) = cycle_basis(&k).unwrap().remove(0);
        let at = |t: &[u32]| z.get(k.facet_position(&Simplex::plain(t).unwrap()).unwrap()).clone();
        assert_eq!(col, k.facet_position(&Simplex::plain(&[2, 3, 4]).unwrap()).unwrap());
        assert_eq!(at(&[2, 3, 4]), rat(1));
        assert_eq!(at(&[1, 3, 4]), rat(-1));
        assert_eq!(at(&[1, 2, 4]), rat(1));
        assert_eq!(at(&[1, 2, 3]), rat(-1));
    }

    #[test]
    fn currents_for_235() {
        let k = generate(&[vec![2, 3, 5]]).unwrap();
        let g = primes(5);
        let c = explicit_current(&k, &g, &[2, 3, 5]).unwrap();
        assert_eq!(current_of(&c, &k, &[1, 3, 5]), -(g.x(1) * g.d(2) * g.d(4)));
        assert_eq!(current_of(&c, &k, &[1, 2, 5]), g.x(1) * g.d(2) * g.d(4));
        assert_eq!(current_of(&c, &k, &[1, 2, 3]), -(g.x(1) * g.d(2) * g.d(3)));
        assert_eq!(current_of(&c, &k, &[2, 3, 4]), -(g.d(1) * g.d(2) * g.x(4)));
        assert_eq!(current_of(&c, &k, &[1, 2, 4]), -(g.x(1) * g.d(2) * g.x(4)));
        assert_eq!(current_of(&c, &k, &[1, 3, 4]), g.x(1) * g.d(2) * g.x(4));
        assert_eq!(c.generator_current(), &(g.d(2) * g.d(3) * g.d(5)));
        assert!(c.kcl_residual().unwrap().iter().all(Zero::is_zero));
        let cycles: Vec<Chain> = cycle_basis(&k).unwrap().into_iter().map(|(_, z)| z).collect();
        assert!(c
            .kvl_residual(&assignment(&g), &cycles)
            .unwrap()
            .iter()
            .all(Zero::is_zero));
        assert_eq!(c.ratio(), ratio(&g, &[2, 3, 5]).unwrap());
        assert_eq!(
            ratio(&g, &[2, 3, 5]).unwrap(),
            g.d(3) * g.d(5) / (g.d(1) * g.d(4))
        );
    }

    #[test]
    fn currents_for_246() {
        let k = generate(&[vec![2, 4, 6]]).unwrap();
        let g = primes(6);
        let c = explicit_current(&k, &g, &[2, 4, 6]).unwrap();
        assert_eq!(current_of(&c, &k, &[1, 2, 3]), rat(0));
        assert_eq!(current_of(&c, &k, &[1, 3, 5]), -(g.x(1) * g.x(3) * g.x(5)));
        assert_eq!(current_of(&c, &k, &[1, 4, 6]), -(g.x(1) * g.d(3) * g.d(5)));
        assert_eq!(current_of(&c, &k, &[2, 3, 4]), g.d(1) * g.x(3) * g.d(4));
        assert_eq!(current_of(&c, &k, &[1, 2, 5]), -(g.x(1) * g.d(2) * g.x(5)));
        assert!(c.kcl_residual().unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn threshold_current_table() {
        let (l1, l2) = (3usize, 6usize);
        let k = generate(&[vec![l1, l2]]).unwrap();
        let g = primes(6);
        let c = explicit_current(&k, &g, &[l1, l2]).unwrap();
        for s in vertex_sets(&k).unwrap() {
            let (j1, j2) = (s[0], s[1]);
            if (j1, j2) == (l1, l2) {
                continue;
            }
            let expected = if j1 < l1 && j2 == l2 {
                -(g.x(j1) * g.d(l2 - 1))
            } else if j1 == l1 && j2 < l2 {
                -(g.d(l1 - 1) * g.x(j2))
            } else if j1 < l1 && j2 == l1 {
                g.x(j1) * g.d(l1)
            } else if j1 < l1 && l1 < j2 && j2 < l2 {
                g.x(j1) * g.x(j2)
            } else {
                rat(0)
            };
            let got = current_of(&c, &k, &[j1 as u32, j2 as u32]);
            assert_eq!(got, expected, "i_{j1}{j2}");
        }
    }

    #[test]
    fn blocks_and_covers() {
        assert_eq!(
            blocks(&[2, 3, 5]),
            vec![Block { start: 2, end: 3 }, Block { start: 5, end: 5 }]
        );
        assert_eq!(blocks(&[1, 2, 3]), vec![Block { start: 1, end: 3 }]);
        assert_eq!(blocks(&[2, 4, 6]).len(), 3);
        let up = up_covers(&[2, 3, 5], 6);
        assert_eq!(
            up,
            vec![
                Cover { face: vec![2, 4, 5], label: 3 },
                Cover { face: vec![2, 3, 6], label: 5 }
            ]
        );
        let down = down_covers(&[2, 3, 5]);
        assert_eq!(
            down,
            vec![
                Cover { face: vec![1, 3, 5], label: 1 },
                Cover { face: vec![2, 3, 4], label: 4 }
            ]
        );
        assert_eq!(up_covers(&[1, 2, 3], 4), vec![Cover { face: vec![1, 2, 4], label: 3 }]);
    }

    #[test]
    fn signatures_of_245() {
        let k = generate(&[vec![2, 4, 5]]).unwrap();
        let sigs = signatures(&k).unwrap();
        let pairs: Vec<(Vec<usize>, Vec<usize>, usize)> = sigs
            .iter()
            .map(|s| (s.lower.clone(), s.upper.clone(), s.label))
            .collect();
        assert_eq!(
            pairs,
            vec![
                (vec![2, 3, 5], vec![2, 3, 6], 5),
                (vec![2, 4, 5], vec![3, 4, 5], 2),
                (vec![2, 4, 5], vec![2, 4, 6], 5),
            ]
        );
        let f = tree_number(&k, &GaleWeights::unit(5)).unwrap();
        assert_eq!(f.value, rat(50));
        assert!(f.formula.ends_with("D(5)^2 D(2) / D(1)^3"), "{}", f.formula);
    }

    #[test]
    fn closed_form_matches_brute_force() {
        for gens in [
            vec![vec![2, 4, 5]],
            vec![vec![2, 3, 5]],
            vec![vec![2, 4, 6]],
            vec![vec![4, 5]],
            vec![vec![2, 5], vec![3, 4]],
            vec![vec![1, 3, 5], vec![2, 3, 4]],
        ] {
            let k = generate(&gens).unwrap();
            let n = check(&k).unwrap();
            let g = primes(n);
            let brute = weighted_tree_number(&k, &assignment(&g), 24).unwrap().value;
            assert_eq!(tree_number(&k, &g).unwrap().value, brute, "{gens:?}");
        }
    }

    #[test]
    fn hypotheses_are_enforced() {
        let k = generate(&[vec![2, 4, 5]]).unwrap();
        let g = GaleWeights::unit(5);
        assert!(matches!(
            explicit_current(&k, &g, &[1, 4, 5]),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            explicit_current(&k, &g, &[2, 3, 5]),
            Err(Error::Hypothesis(_))
        ));
        assert_eq!(maximal_facets(&k).unwrap(), vec![8]);
        let bad = SimplicialComplex::parse("1 2\n3 4").unwrap();
        assert!(!is_shifted(&bad));
    }

    #[test]
    fn unit_ratio_235() {
        assert_eq!(ratio(&GaleWeights::unit(5), &[2, 3, 5]).unwrap(), frac(15, 4));
    }
}
