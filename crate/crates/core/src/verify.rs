//! The verification suite: every identity checked exactly on a corpus at
//! several weight points, reported as sorted per-check records.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Chain, Simplex, SimplicialComplex};
use crate::corpus::{CorpusEntry, Family};
use crate::error::{Error, Result};
use crate::families::{color_shifted, shifted, ExplicitCurrent, IncrementalBuild};
use crate::linalg::{self, Rational, RationalMatrix};
use crate::network::{self, attach_generator, Network};
use crate::trees::{self, TreeEnumeration, WeightAssignment, DEFAULT_FACET_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Equal,
    Differ,
    Pass,
    Fail,
}

impl Verdict {
    pub fn ok(self) -> bool {
        matches!(self, Verdict::Equal | Verdict::Pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "EQUAL",
            Verdict::Differ => "DIFFER",
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// One verdict. Field order is the sort order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Record {
    pub check: String,
    pub complex: String,
    pub point: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random weight points used in addition to the prime point.
    pub random_points: usize,
    pub bound: usize,
    /// Only run checks whose name starts with this prefix.
    pub only: Option<String>,
    /// Perturb every explicit current, as a negative control.
    pub corrupt_currents: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            random_points: 2,
            bound: DEFAULT_FACET_BOUND,
            only: None,
            corrupt_currents: false,
        }
    }
}

impl VerifyConfig {
    fn wants(&self, check: &str) -> bool {
        self.only.as_ref().is_none_or(|p| check.starts_with(p.as_str()))
    }

    /// Whether any check in the group `group` may be wanted.
    fn touches(&self, group: &str) -> bool {
        self.only
            .as_ref()
            .is_none_or(|p| group.starts_with(p.as_str()) || p.starts_with(group))
    }
}

/// The prime point followed by `random` seeded random points.
pub fn weight_points(
    vertices: &[crate::complex::Vertex],
    seed: u64,
    random: usize,
) -> Vec<(String, WeightAssignment)> {
    let mut out = vec![("primes".to_string(), WeightAssignment::primes(vertices))];
    for i in 1..=random {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
        out.push((format!("random{i}"), WeightAssignment::random(vertices, &mut rng)));
    }
    out
}

/// Records for every check on every entry, sorted, plus the corpus-wide
/// torsion-tree check.
pub fn run(corpus: &[CorpusEntry], config: &VerifyConfig) -> Vec<Record> {
    let results: Vec<(Vec<Record>, BigInt)> = corpus
        .par_iter()
        .map(|entry| {
            let mut c = Checker::new(entry, config);
            c.run();
            (c.records, c.max_tree_torsion)
        })
        .collect();
    let mut records = Vec::new();
    let mut max_torsion = BigInt::zero();
    for (r, t) in results {
        records.extend(r);
        max_torsion = max_torsion.max(t);
    }
    if config.wants("torsion.trees") {
        let found = max_torsion > BigInt::one();
        records.push(Record {
            check: "torsion.trees".into(),
            complex: "corpus".into(),
            point: "-".into(),
            verdict: if found { Verdict::Pass } else { Verdict::Fail },
            detail: format!("largest tree torsion {max_torsion}"),
        });
    }
    records.retain(|r| config.wants(&r.check));
    records.sort();
    records
}

pub fn all_ok(records: &[Record]) -> bool {
    records.iter().all(|r| r.verdict.ok())
}

/// Per-generator data shared by the weight points.
struct Generator {
    sigma: Simplex,
    /// Column of `σ` in `Δ`, if it is a facet.
    column: Option<usize>,
    network: Result<Network>,
    /// Trees of `Δ^𝛔` containing `𝛔`.
    forced: Option<Result<TreeEnumeration>>,
}

struct Checker<'a> {
    entry: &'a CorpusEntry,
    k: &'a SimplicialComplex,
    config: &'a VerifyConfig,
    points: Vec<(String, WeightAssignment)>,
    brute: bool,
    trees: Option<TreeEnumeration>,
    records: Vec<Record>,
    max_tree_torsion: BigInt,
}

fn compare(left: &Rational, right: &Rational) -> (Verdict, String) {
    if left == right {
        (Verdict::Equal, format!("{left}"))
    } else {
        (Verdict::Differ, format!("{left} != {right}"))
    }
}

fn all_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

impl<'a> Checker<'a> {
    fn new(entry: &'a CorpusEntry, config: &'a VerifyConfig) -> Self {
        let k = &entry.complex;
        Checker {
            entry,
            k,
            config,
            points: weight_points(&k.vertices(), config.seed, config.random_points),
            brute: k.num_facets() <= config.bound,
            trees: None,
            records: Vec::new(),
            max_tree_torsion: BigInt::zero(),
        }
    }

    fn push(&mut self, check: &str, point: &str, verdict: Verdict, detail: impl Into<String>) {
        self.records.push(Record {
            check: check.into(),
            complex: self.entry.name.clone(),
            point: point.into(),
            verdict,
            detail: detail.into(),
        });
    }

    fn push_cmp(&mut self, check: &str, point: &str, left: &Rational, right: &Rational) {
        let (v, d) = compare(left, right);
        self.push(check, point, v, d);
    }

    fn push_bool(&mut self, check: &str, point: &str, ok: bool, detail: impl Into<String>) {
        self.push(check, point, if ok { Verdict::Pass } else { Verdict::Fail }, detail);
    }

    fn push_err(&mut self, check: &str, point: &str, e: &Error) {
        self.push(check, point, Verdict::Fail, e.to_string());
    }

    fn run(&mut self) {
        if self.brute {
            match trees::enumerate_trees(self.k, self.config.bound) {
                Ok(t) => {
                    self.max_tree_torsion = t
                        .trees()
                        .iter()
                        .map(|x| x.torsion.clone())
                        .max()
                        .unwrap_or_else(BigInt::zero);
                    self.trees = Some(t);
                }
                Err(e) => {
                    self.push_err("trees", "-", &e);
                    return;
                }
            }
        }
        self.torsion();
        if self.brute {
            self.generators();
        }
        match self.entry.family {
            Family::ColorShifted => self.color_shifted(),
            Family::Shifted => self.shifted(),
            Family::General => {}
        }
    }

    fn torsion(&mut self) {
        let Some(expected) = self.entry.expected_torsion else { return };
        if !self.config.touches("torsion") || self.k.dim() == 0 {
            return;
        }
        match self.k.torsion_order(self.k.dim() - 1) {
            Ok(t) => {
                let (left, right) = (Rational::from_integer(t), linalg::rat(expected as i64));
                self.push_cmp("torsion", "-", &left, &right);
            }
            Err(e) => self.push_err("torsion", "-", &e),
        }
    }

    fn total(&self, facet_weights: &[Rational]) -> Rational {
        self.trees.as_ref().expect("brute").weighted_sum(facet_weights).value
    }

    fn avoiding(&self, facet_weights: &[Rational], column: usize) -> Rational {
        self.trees
            .as_ref()
            .expect("brute")
            .weighted_sum_where(facet_weights, |t| !t.contains(column))
            .value
    }

    /// Resistance, deletion/contraction and ratio checks for each facet and
    /// each extra generator.
    fn generators(&mut self) {
        let wants_net = self.entry.resistance
            && ["thm4.2", "network-laws", "ratio-routes"]
                .iter()
                .any(|c| self.config.touches(c));
        let wants_dc = self.config.touches("deletion-contraction");
        if !wants_net && !wants_dc {
            return;
        }
        let mut gens: Vec<Generator> = Vec::new();
        let sigmas: Vec<(Simplex, Option<usize>)> = self
            .k
            .facet_simplices()
            .enumerate()
            .map(|(j, s)| (s.clone(), Some(j)))
            .chain(self.entry.extra_generators.iter().map(|s| (s.clone(), None)))
            .collect();
        for (sigma, column) in sigmas {
            let attached = attach_generator(self.k, &sigma);
            let forced = attached.as_ref().ok().map(|a| {
                trees::enumerate_trees_containing(a.complex(), &[a.generator()], self.config.bound)
            });
            let network = if wants_net {
                attached.and_then(Network::new)
            } else {
                Err(Error::Internal("not requested".into()))
            };
            gens.push(Generator {
                sigma,
                column,
                network,
                forced,
            });
        }
        let psi_trees: Vec<Option<Result<(SimplicialComplex, TreeEnumeration)>>> = gens
            .iter()
            .map(|g| {
                let col = g.column?;
                let coloop = self.avoiding(&vec![Rational::one(); self.k.num_facets()], col).is_zero();
                if coloop || !wants_dc {
                    return None;
                }
                Some(self.k.without_facet(col).and_then(|psi| {
                    let t = trees::enumerate_trees(&psi, self.config.bound)?;
                    Ok((psi, t))
                }))
            })
            .collect();
        let points = self.points.clone();
        for (label, w) in &points {
            let weights = match w.facet_weights(self.k) {
                Ok(x) => x,
                Err(e) => {
                    self.push_err("weights", label, &e);
                    continue;
                }
            };
            let total = self.total(&weights);
            for (g, psi) in gens.iter().zip(&psi_trees) {
                let tag = format!("{label}:{}", g.sigma);
                let forced = match &g.forced {
                    Some(Ok(f)) => {
                        let mut fw = weights.clone();
                        fw.push(Rational::one());
                        Some(f.weighted_sum(&fw).value)
                    }
                    Some(Err(e)) => {
                        let e = e.clone();
                        self.push_err("thm4.2", &tag, &e);
                        None
                    }
                    None => None,
                };
                if wants_dc {
                    if let (Some(col), Some(forced)) = (g.column, &forced) {
                        let avoid = self.avoiding(&weights, col);
                        let rhs = &avoid + &weights[col] * forced;
                        self.push_cmp("deletion-contraction", &tag, &total, &rhs);
                        if let Some(psi) = psi {
                            match psi {
                                Ok((psi, t)) => match w.facet_weights(psi) {
                                    Ok(pw) => {
                                        let v = t.weighted_sum(&pw).value;
                                        self.push_cmp("deletion-contraction.psi", &tag, &avoid, &v);
                                    }
                                    Err(e) => self.push_err("deletion-contraction.psi", &tag, &e),
                                },
                                Err(e) => {
                                    let e = e.clone();
                                    self.push_err("deletion-contraction.psi", &tag, &e)
                                }
                            }
                        }
                    }
                }
                if !wants_net {
                    continue;
                }
                let net = match &g.network {
                    Ok(n) => n,
                    Err(e) => {
                        let e = e.clone();
                        self.push_err("thm4.2", &tag, &e);
                        continue;
                    }
                };
                let (solution, resistances) = match network::resistances(net.attached(), w)
                    .and_then(|r| Ok((net.solve(&r, &Rational::one())?, r)))
                {
                    Ok(x) => x,
                    Err(e) => {
                        self.push_err("thm4.2", &tag, &e);
                        continue;
                    }
                };
                if self.config.touches("network-laws") {
                    match net.laws_hold(&solution, &resistances) {
                        Ok(ok) => self.push_bool("network-laws", &tag, ok, "KCL KVL OL"),
                        Err(e) => self.push_err("network-laws", &tag, &e),
                    }
                }
                if let Some(forced) = &forced {
                    let r = &solution.effective_resistance;
                    self.push_cmp("thm4.2", &tag, r, &(forced / &total));
                }
                if let (Some(col), true) = (g.column, self.config.touches("ratio-routes")) {
                    let avoid = self.avoiding(&weights, col);
                    let x_sigma = &weights[col];
                    let denom = Rational::one() - x_sigma * &solution.effective_resistance;
                    if avoid.is_zero() {
                        self.push_bool("ratio-routes", &tag, denom.is_zero(), "bridge facet");
                    } else if denom.is_zero() {
                        self.push_bool("ratio-routes", &tag, false, "unexpected bridge");
                    } else {
                        let brute = &total / &avoid;
                        let i_gen = solution.generator_current();
                        let i_sigma = solution.current.get(col);
                        let via_currents = i_gen / (i_gen + i_sigma);
                        self.push_cmp("ratio-routes", &tag, &denom.recip(), &brute);
                        self.push_cmp("ratio-routes.currents", &tag, &via_currents, &brute);
                    }
                }
            }
        }
    }

    /// Cycle-basis check shared by the two families: every vector is a cycle,
    /// the vectors are independent and there are `b_d` of them.
    fn cycle_basis_check(&mut self, basis: &Result<Vec<(usize, Chain)>>) {
        if !self.config.touches("cycle-basis") {
            return;
        }
        let basis = match basis {
            Ok(b) => b,
            Err(e) => {
                let e = e.clone();
                self.push_err("cycle-basis", "-", &e);
                return;
            }
        };
        let d = self.k.dim();
        let result = (|| -> Result<(bool, String)> {
            let bd = self.k.boundary_matrix(d)?;
            let cycles = basis.iter().all(|(_, z)| all_zero(&bd.mul_vec(z.coefficients())));
            let rows: Vec<Vec<Rational>> = basis.iter().map(|(_, z)| z.coefficients().to_vec()).collect();
            let independent = rows.is_empty() || linalg::rank(&RationalMatrix::from_rows(rows)) == basis.len();
            let betti = self.k.betti(d)?;
            Ok((
                cycles && independent && betti == basis.len(),
                format!("{} cycles, b_d = {betti}", basis.len()),
            ))
        })();
        match result {
            Ok((ok, detail)) => self.push_bool("cycle-basis", "-", ok, detail),
            Err(e) => self.push_err("cycle-basis", "-", &e),
        }
    }

    fn canonical_tree_check(&mut self, tree: &Result<Vec<usize>>) {
        if !self.config.touches("canonical-tree") {
            return;
        }
        match tree.as_ref().map_err(Clone::clone).and_then(|t| trees::is_spanning_tree(self.k, t)) {
            Ok(ok) => self.push_bool("canonical-tree", "-", ok, "is a spanning tree"),
            Err(e) => self.push_err("canonical-tree", "-", &e),
        }
    }

    /// KCL, KVL, ratio and resistance checks for one explicit current.
    fn explicit_checks(
        &mut self,
        prefix: &str,
        label: &str,
        w: &WeightAssignment,
        current: Result<ExplicitCurrent>,
        closed_ratio: Result<Rational>,
        cycles: &[Chain],
    ) {
        let tag_sigma;
        let current = match current {
            Ok(c) => {
                tag_sigma = format!("{label}:{}", c.attached().sigma());
                if self.config.corrupt_currents {
                    let first = c.current().get(0) + Rational::one();
                    c.with_coefficient(0, first)
                } else {
                    c
                }
            }
            Err(e) => {
                self.push_err(&format!("{prefix}.kcl"), label, &e);
                return;
            }
        };
        let tag = tag_sigma.as_str();
        let kcl = format!("{prefix}.kcl");
        if self.config.touches(&kcl) {
            match current.kcl_residual() {
                Ok(r) => self.push_bool(&kcl, tag, all_zero(&r), "boundary of current"),
                Err(e) => self.push_err(&kcl, tag, &e),
            }
        }
        let kvl = format!("{prefix}.kvl");
        if self.config.touches(&kvl) {
            match current.kvl_residual(w, cycles) {
                Ok(r) => self.push_bool(&kvl, tag, all_zero(&r), format!("{} cycles", r.len())),
                Err(e) => self.push_err(&kvl, tag, &e),
            }
        }
        let sigma = current.attached().sigma().clone();
        let column = current.attached().parallel_to().expect("explicit currents sit on facets");
        let ratio_check = format!("{prefix}.ratio");
        if self.config.touches(&ratio_check) {
            match &closed_ratio {
                Ok(closed) => {
                    let explicit = current.ratio();
                    let actual = if self.brute {
                        w.facet_weights(self.k)
                            .map(|fw| self.total(&fw) / self.avoiding(&fw, column))
                    } else {
                        network::tree_ratio_via_resistance(self.k, w, &sigma).map(|r| r.ratio)
                    };
                    match actual {
                        Ok(actual) => {
                            self.push_cmp(&ratio_check, tag, closed, &actual);
                            self.push_cmp(&format!("{ratio_check}.currents"), tag, &explicit, closed);
                        }
                        Err(e) => self.push_err(&ratio_check, tag, &e),
                    }
                }
                Err(e) => {
                    let e = e.clone();
                    self.push_err(&ratio_check, tag, &e)
                }
            }
        }
        let res = format!("{prefix}.resistance");
        if self.config.touches(&res) {
            let solver = network::effective_resistance(self.k, w, &sigma);
            match (current.effective_resistance(w), solver) {
                (Ok(a), Ok(b)) => self.push_cmp(&res, tag, &a, &b),
                (Err(e), _) | (_, Err(e)) => self.push_err(&res, tag, &e),
            }
        }
    }

    /// Closed form against brute force, or against the canonical tree times
    /// network-solved step ratios when brute force is out of reach.
    fn enumerator_check(
        &mut self,
        check: &str,
        label: &str,
        w: &WeightAssignment,
        closed: &Result<Rational>,
        build: &Result<IncrementalBuild>,
    ) {
        let closed = match closed {
            Ok(c) => c,
            Err(e) => {
                let e = e.clone();
                self.push_err(check, label, &e);
                return;
            }
        };
        let actual = if self.brute {
            w.facet_weights(self.k).map(|fw| self.total(&fw))
        } else {
            build
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|b| self.network_build_product(b, w))
        };
        match actual {
            Ok(a) => self.push_cmp(check, label, closed, &a),
            Err(e) => self.push_err(check, label, &e),
        }
    }

    /// `k̂(tree)` times the network ratio of each addition.
    fn network_build_product(&self, b: &IncrementalBuild, w: &WeightAssignment) -> Result<Rational> {
        let weights = w.facet_weights(self.k)?;
        let mut value: Rational = b.tree.iter().map(|&j| weights[j].clone()).product();
        for step in 1..=b.additions.len() {
            let partial = self.k.restrict_to(&b.columns_after(step))?;
            let sigma = self.k.facets()[b.additions[step - 1]].simplex.clone();
            value *= network::tree_ratio_via_resistance(&partial, w, &sigma)?.ratio;
        }
        Ok(value)
    }

    /// Every step of the build satisfies the ratio hypotheses, and the
    /// product of closed step ratios times `k̂(tree)` is the closed form.
    fn incremental_check(
        &mut self,
        label: &str,
        w: &WeightAssignment,
        closed: &Result<Rational>,
        build: &Result<IncrementalBuild>,
        step_ratio: &dyn Fn(&SimplicialComplex, usize) -> Result<Rational>,
    ) {
        if !self.config.touches("incremental") {
            return;
        }
        let result = (|| -> Result<(Rational, Rational, bool)> {
            let b = build.as_ref().map_err(Clone::clone)?;
            let closed = closed.as_ref().map_err(Clone::clone)?;
            let weights = w.facet_weights(self.k)?;
            let mut value: Rational = b.tree.iter().map(|&j| weights[j].clone()).product();
            let mut steps_ok = true;
            for step in 1..=b.additions.len() {
                let partial = self.k.restrict_to(&b.columns_after(step))?;
                // the newly added facet is the last column of the partial complex
                let r = step_ratio(&partial, partial.num_facets() - 1)?;
                if self.brute && step == b.additions.len() {
                    let fw = w.facet_weights(&partial)?;
                    let t = trees::enumerate_trees(&partial, self.config.bound)?;
                    let last = partial.num_facets() - 1;
                    let actual = t.weighted_sum(&fw).value
                        / t.weighted_sum_where(&fw, |x| !x.contains(last)).value;
                    steps_ok &= actual == r;
                }
                value *= r;
            }
            Ok((value, closed.clone(), steps_ok))
        })();
        match result {
            Ok((value, closed, steps_ok)) => {
                let (mut v, d) = compare(&value, &closed);
                if !steps_ok {
                    v = Verdict::Differ;
                }
                self.push("incremental", label, v, d);
            }
            Err(e) => self.push_err("incremental", label, &e),
        }
    }

    fn color_shifted(&mut self) {
        let k = self.k;
        let n = match color_shifted::check(k) {
            Ok(n) => n,
            Err(e) => {
                self.push_err("family", "-", &e);
                return;
            }
        };
        self.canonical_tree_check(&color_shifted::canonical_tree(k));
        let basis = color_shifted::cycle_basis(k);
        self.cycle_basis_check(&basis);
        let cycles: Vec<Chain> = basis.map(|b| b.into_iter().map(|(_, z)| z).collect()).unwrap_or_default();
        let maximal = color_shifted::maximal_facets(k).unwrap_or_default();
        let tuples = color_shifted::color_tuples(k).unwrap_or_default();
        let build = color_shifted::incremental_build(k);
        self.adin(&n);
        let points = self.points.clone();
        for (label, w) in &points {
            let scheme = match color_shifted::ColorScheme::from_assignment(&n, w) {
                Ok(s) => s,
                Err(e) => {
                    self.push_err("thm5.4", label, &e);
                    continue;
                }
            };
            if self.config.touches("thm5.2") {
                for &j in &maximal {
                    let sigma = &tuples[j];
                    let current = color_shifted::explicit_current(k, &scheme, sigma);
                    let closed = color_shifted::ratio(&scheme, sigma);
                    self.explicit_checks("thm5.2", label, w, current, closed, &cycles);
                }
            }
            let closed = color_shifted::tree_number(k, &scheme).map(|c| c.value);
            if self.config.touches("thm5.4") {
                self.enumerator_check("thm5.4", label, w, &closed, &build);
            }
            if self.config.touches("telescoping") {
                for q in 1..=n.len() {
                    match color_shifted::telescoping(k, &scheme, q) {
                        Ok((l, r)) => self.push_cmp("telescoping", &format!("{label}:color{q}"), &l, &r),
                        Err(e) => self.push_err("telescoping", label, &e),
                    }
                }
            }
            let step = |partial: &SimplicialComplex, col: usize| -> Result<Rational> {
                let t = partial.facets()[col]
                    .simplex
                    .color_tuple()
                    .ok_or_else(|| Error::Internal("colored facet".into()))?;
                let max = color_shifted::maximal_facets(partial)?;
                if !max.contains(&col) {
                    return Err(Error::Hypothesis(format!(
                        "{} is not a maximal addition",
                        partial.facets()[col].simplex
                    )));
                }
                color_shifted::ratio(&scheme, &t)
            };
            self.incremental_check(label, w, &closed, &build, &step);
        }
    }

    /// Unit-weight closed form on complete colorful complexes against the
    /// product `Π n_q^{Π_{r≠q}(n_r - 1)}`.
    fn adin(&mut self, n: &[usize]) {
        if !self.config.touches("adin") {
            return;
        }
        let full: usize = n.iter().product();
        if self.k.num_facets() != full {
            return;
        }
        let expected: BigInt = (0..n.len())
            .map(|q| {
                let e: usize = (0..n.len()).filter(|&r| r != q).map(|r| n[r] - 1).product();
                num_traits::pow(BigInt::from(n[q]), e)
            })
            .product();
        let expected = Rational::from_integer(expected);
        match color_shifted::tree_number(self.k, &color_shifted::ColorScheme::unit(n)) {
            Ok(c) => self.push_cmp("adin.closed-form", "unit", &c.value, &expected),
            Err(e) => self.push_err("adin.closed-form", "unit", &e),
        }
        if self.brute {
            let ones = vec![Rational::one(); self.k.num_facets()];
            let brute = self.total(&ones);
            self.push_cmp("adin.brute-force", "unit", &brute, &expected);
        }
    }

    fn shifted(&mut self) {
        let k = self.k;
        let n = match shifted::check(k) {
            Ok(n) => n,
            Err(e) => {
                self.push_err("family", "-", &e);
                return;
            }
        };
        self.canonical_tree_check(&shifted::canonical_tree(k));
        let basis = shifted::cycle_basis(k);
        self.cycle_basis_check(&basis);
        let cycles: Vec<Chain> = basis.map(|b| b.into_iter().map(|(_, z)| z).collect()).unwrap_or_default();
        let maximal = shifted::maximal_facets(k).unwrap_or_default();
        let sets = shifted::vertex_sets(k).unwrap_or_default();
        let build = shifted::incremental_build(k);
        let points = self.points.clone();
        for (label, w) in &points {
            let gw = match shifted::GaleWeights::from_assignment(n, w) {
                Ok(g) => g,
                Err(e) => {
                    self.push_err("thm6.9", label, &e);
                    continue;
                }
            };
            if self.config.touches("thm6.3") {
                for &j in &maximal {
                    let sigma = &sets[j];
                    let current = shifted::explicit_current(k, &gw, sigma);
                    let closed = shifted::ratio(&gw, sigma);
                    self.explicit_checks("thm6.3", label, w, current, closed, &cycles);
                }
            }
            let closed = shifted::tree_number(k, &gw).map(|c| c.value);
            if self.config.touches("thm6.9") {
                self.enumerator_check("thm6.9", label, w, &closed, &build);
            }
            let step = |partial: &SimplicialComplex, col: usize| -> Result<Rational> {
                let ids: Vec<usize> = partial.facets()[col]
                    .simplex
                    .plain_ids()
                    .ok_or_else(|| Error::Internal("plain facet".into()))?
                    .into_iter()
                    .map(|v| v as usize)
                    .collect();
                let max = shifted::maximal_facets(partial)?;
                if !max.contains(&col) {
                    return Err(Error::Hypothesis(format!(
                        "{} is not a maximal addition",
                        partial.facets()[col].simplex
                    )));
                }
                shifted::ratio(&gw, &ids)
            };
            self.incremental_check(label, w, &closed, &build, &step);
        }
    }
}

/// Text rendering: one line per record and a summary line.
pub fn render_text(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!(
            "{:<28} {:<24} {:<28} {:<6} {}\n",
            r.check, r.complex, r.point, r.verdict, r.detail
        ));
    }
    let bad = records.iter().filter(|r| !r.verdict.ok()).count();
    out.push_str(&format!("{} checks, {} failed\n", records.len(), bad));
    out
}

/// One JSON object per line.
pub fn render_records(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}
