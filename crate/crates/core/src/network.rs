//! Simplicial electrical networks.
//!
//! A current generator `𝛔` is attached as an extra top-dimensional column
//! parallel to `σ`. The current `I` is a cycle of `Δ^𝛔` carrying `α` through
//! the generator, voltages follow Ohm's law on the facets of `Δ`, and the
//! voltage `v_𝛔` is the one unknown fixed by Kirchhoff's voltage law.

use num_traits::{One, Zero};

use crate::complex::{inner_product, Chain, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, LinearSolution, Rational, RationalMatrix};
use crate::trees::{self, WeightAssignment};

/// `Δ^𝛔`: the complex with the generator appended as its last column.
#[derive(Clone, Debug)]
pub struct AttachedGenerator {
    complex: SimplicialComplex,
    sigma: Simplex,
    parallel_to: Option<usize>,
}

impl AttachedGenerator {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn sigma(&self) -> &Simplex {
        &self.sigma
    }

    /// Column of the generator `𝛔`, always the last one.
    pub fn generator(&self) -> usize {
        self.complex.num_facets() - 1
    }

    /// Column of `σ` when it is already a facet of `Δ`.
    pub fn parallel_to(&self) -> Option<usize> {
        self.parallel_to
    }

    /// Number of facets of the underlying `Δ`.
    pub fn base_facets(&self) -> usize {
        self.complex.num_facets() - 1
    }
}

/// Builds `Δ^𝛔`, requiring `∂[σ] ∈ im ∂_{Δ,d}`.
pub fn attach_generator(k: &SimplicialComplex, sigma: &Simplex) -> Result<AttachedGenerator> {
    if sigma.len() != k.dim() + 1 {
        return Err(Error::WrongGeneratorSize(sigma.to_string()));
    }
    if (0..sigma.len()).any(|i| k.face_position(&sigma.without(i)).is_none()) {
        return Err(Error::BoundaryNotSpanned(sigma.to_string()));
    }
    let target = Chain::boundary_of(k, sigma.vertices())?;
    let d = k.boundary_matrix(k.dim())?;
    if let LinearSolution::Inconsistent = linalg::solve_linear(&d, target.coefficients()) {
        return Err(Error::BoundaryNotSpanned(sigma.to_string()));
    }
    Ok(AttachedGenerator {
        complex: k.with_facet(sigma.clone())?,
        sigma: sigma.clone(),
        parallel_to: k.facet_position(sigma),
    })
}

/// A network on `Δ^𝛔` with its weight-independent cycle space cached.
#[derive(Clone, Debug)]
pub struct Network {
    attached: AttachedGenerator,
    cycles: Vec<Vec<Rational>>,
}

/// Exact solution of one network problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkSolution {
    /// `I_𝛔`, indexed by the columns of `Δ^𝛔`.
    pub current: Chain,
    /// `V_𝛔`, indexed like `current`.
    pub voltage: Chain,
    pub alpha: Rational,
    pub effective_resistance: Rational,
}

impl NetworkSolution {
    /// `i_𝛔`.
    pub fn generator_current(&self) -> &Rational {
        self.current.coefficients().last().expect("generator column")
    }

    /// `v_𝛔`.
    pub fn generator_voltage(&self) -> &Rational {
        self.voltage.coefficients().last().expect("generator column")
    }
}

impl Network {
    pub fn new(attached: AttachedGenerator) -> Result<Self> {
        let d = attached.complex.boundary_matrix(attached.complex.dim())?;
        let cycles = linalg::kernel_basis(&d);
        let g = attached.generator();
        if cycles.iter().all(|z| z[g].is_zero()) {
            return Err(Error::BoundaryNotSpanned(attached.sigma.to_string()));
        }
        Ok(Network { attached, cycles })
    }

    pub fn attached(&self) -> &AttachedGenerator {
        &self.attached
    }

    /// Basis of `ker ∂_{Δ^𝛔,d}`.
    pub fn cycles(&self) -> &[Vec<Rational>] {
        &self.cycles
    }

    /// Solves KCL, KVL and Ohm's law for resistances `r_τ` on the facets of
    /// `Δ` and source current `α`.
    pub fn solve(&self, resistances: &[Rational], alpha: &Rational) -> Result<NetworkSolution> {
        let g = self.attached.generator();
        if resistances.len() != g {
            return Err(Error::DimensionMismatch {
                left: format!("{} resistances", resistances.len()),
                right: format!("{g} facets"),
            });
        }
        if resistances.iter().any(|r| *r <= Rational::zero()) {
            return Err(Error::NonPositiveWeight("resistance".into()));
        }
        if *alpha <= Rational::zero() {
            return Err(Error::NonPositiveCurrent);
        }
        let k = self.cycles.len();
        // unknowns: c_1..c_k with I = Σ c_j z_j, then v_𝛔
        let mut rows = Vec::with_capacity(k + 1);
        let mut rhs = Vec::with_capacity(k + 1);
        let mut first: Vec<Rational> = self.cycles.iter().map(|z| z[g].clone()).collect();
        first.push(Rational::zero());
        rows.push(first);
        rhs.push(alpha.clone());
        for zi in &self.cycles {
            let mut row: Vec<Rational> = self
                .cycles
                .iter()
                .map(|zj| {
                    (0..g)
                        .filter(|&t| !zi[t].is_zero() && !zj[t].is_zero())
                        .fold(Rational::zero(), |acc, t| acc + &zi[t] * &resistances[t] * &zj[t])
                })
                .collect();
            row.push(zi[g].clone());
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let system = RationalMatrix::from_rows(rows);
        let x = match linalg::solve_linear(&system, &rhs) {
            LinearSolution::Unique(x) => x,
            LinearSolution::Affine { particular, kernel } => {
                if kernel.iter().any(|v| !v[k].is_zero()) {
                    return Err(Error::Internal(
                        "generator voltage is not determined by the network laws".into(),
                    ));
                }
                particular
            }
            LinearSolution::Inconsistent => {
                return Err(Error::Internal("network laws are inconsistent".into()));
            }
        };
        let mut current = vec![Rational::zero(); g + 1];
        for (c, z) in x[..k].iter().zip(&self.cycles) {
            if c.is_zero() {
                continue;
            }
            for (i, zi) in current.iter_mut().zip(z) {
                if !zi.is_zero() {
                    *i += c * zi;
                }
            }
        }
        let mut voltage: Vec<Rational> = current[..g]
            .iter()
            .zip(resistances)
            .map(|(i, r)| i * r)
            .collect();
        voltage.push(x[k].clone());
        let dim = self.attached.complex.dim();
        Ok(NetworkSolution {
            effective_resistance: -&x[k] / alpha,
            current: Chain::from_coefficients(dim, current),
            voltage: Chain::from_coefficients(dim, voltage),
            alpha: alpha.clone(),
        })
    }

    /// Solves with `r_τ = 1/x_τ` and `α = 1`.
    pub fn solve_weighted(&self, w: &WeightAssignment) -> Result<NetworkSolution> {
        let resistances = resistances(&self.attached, w)?;
        self.solve(&resistances, &Rational::one())
    }

    /// `∂_{Δ^𝛔,d} I`, zero iff KCL holds.
    pub fn kcl_residual(&self, current: &Chain) -> Result<Vec<Rational>> {
        let d = self.attached.complex.boundary_matrix(self.attached.complex.dim())?;
        Ok(d.mul_vec(current.coefficients()))
    }

    /// `⟨V, z⟩` for every cycle in the cached basis, zero iff KVL holds.
    pub fn kvl_residual(&self, voltage: &Chain) -> Result<Vec<Rational>> {
        self.cycles
            .iter()
            .map(|z| inner_product(voltage, &Chain::from_coefficients(voltage.dim(), z.clone())))
            .collect()
    }

    /// `v_τ - r_τ i_τ` on the facets of `Δ`, zero iff Ohm's law holds.
    pub fn ohm_residual(solution: &NetworkSolution, resistances: &[Rational]) -> Vec<Rational> {
        resistances
            .iter()
            .enumerate()
            .map(|(t, r)| solution.voltage.get(t) - r * solution.current.get(t))
            .collect()
    }

    /// True iff all three laws hold exactly and `i_𝛔 = α`.
    pub fn laws_hold(&self, solution: &NetworkSolution, resistances: &[Rational]) -> Result<bool> {
        Ok(self.kcl_residual(&solution.current)?.iter().all(Zero::is_zero)
            && self.kvl_residual(&solution.voltage)?.iter().all(Zero::is_zero)
            && Self::ohm_residual(solution, resistances).iter().all(Zero::is_zero)
            && *solution.generator_current() == solution.alpha)
    }
}

/// `r_τ = 1/x_τ` on the facets of `Δ`.
pub fn resistances(attached: &AttachedGenerator, w: &WeightAssignment) -> Result<Vec<Rational>> {
    let weights = w.facet_weights(attached.complex())?;
    Ok(weights[..attached.base_facets()]
        .iter()
        .map(|x| x.recip())
        .collect())
}

/// `R_σ` with `r_τ = 1/x_τ`.
pub fn effective_resistance(
    k: &SimplicialComplex,
    w: &WeightAssignment,
    sigma: &Simplex,
) -> Result<Rational> {
    let net = Network::new(attach_generator(k, sigma)?)?;
    Ok(net.solve_weighted(w)?.effective_resistance)
}

/// Both sides of `R_σ = k̂_d(Δ)_𝛔 / k̂_d(Δ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResistanceTreeReport {
    pub solver: Rational,
    pub trees: Rational,
}

impl ResistanceTreeReport {
    pub fn equal(&self) -> bool {
        self.solver == self.trees
    }
}

pub fn verify_resistance_tree_identity(
    k: &SimplicialComplex,
    w: &WeightAssignment,
    sigma: &Simplex,
    bound: usize,
) -> Result<ResistanceTreeReport> {
    let attached = attach_generator(k, sigma)?;
    let solver = Network::new(attached.clone())?
        .solve_weighted(w)?
        .effective_resistance;
    let forced =
        trees::tree_number_with_forced_facet(attached.complex(), attached.generator(), w, bound)?;
    let total = trees::weighted_tree_number(k, w, bound)?;
    Ok(ResistanceTreeReport {
        solver,
        trees: forced.value / total.value,
    })
}

/// The facet-deletion ratio `k̂_d(Δ)/k̂_d(Δ∖σ)` read off the network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeRatio {
    /// `1/(1 - x_σ R_σ)`.
    pub ratio: Rational,
    pub effective_resistance: Rational,
    /// `i_𝛔`.
    pub generator_current: Rational,
    /// `i_σ`.
    pub sigma_current: Rational,
}

impl TreeRatio {
    /// `i_𝛔 / (i_𝛔 + i_σ)`, equal to `ratio` whenever both are defined.
    pub fn current_form(&self) -> Rational {
        &self.generator_current / (&self.generator_current + &self.sigma_current)
    }

    /// `-i_σ r_σ / α`, equal to the effective resistance.
    pub fn resistance_from_sigma_current(&self, x_sigma: &Rational) -> Rational {
        -&self.sigma_current / x_sigma / &self.generator_current
    }
}

/// `k̂_d(Δ)/k̂_d(Δ∖σ)` for a facet `σ` of `Δ`.
pub fn tree_ratio_via_resistance(
    k: &SimplicialComplex,
    w: &WeightAssignment,
    sigma: &Simplex,
) -> Result<TreeRatio> {
    let attached = attach_generator(k, sigma)?;
    let column = attached
        .parallel_to()
        .ok_or_else(|| Error::NotAFacet(sigma.to_string()))?;
    let solution = Network::new(attached)?.solve_weighted(w)?;
    let x_sigma = w.simplex_weight(sigma)?;
    let denominator = Rational::one() - &x_sigma * &solution.effective_resistance;
    if denominator.is_zero() {
        return Err(Error::BridgeFacet(sigma.to_string()));
    }
    Ok(TreeRatio {
        ratio: denominator.recip(),
        effective_resistance: solution.effective_resistance.clone(),
        generator_current: solution.generator_current().clone(),
        sigma_current: solution.current.get(column).clone(),
    })
}
