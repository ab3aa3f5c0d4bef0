//! Color-shifted and shifted complexes: explicit currents and closed-form
//! tree enumerators.

pub mod color_shifted;
pub mod shifted;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::complex::{inner_product, Chain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::network::AttachedGenerator;
use crate::trees::WeightAssignment;

/// A current on `Δ^𝛔` given by a closed formula rather than by solving.
#[derive(Clone, Debug)]
pub struct ExplicitCurrent {
    attached: AttachedGenerator,
    current: Chain,
}

impl ExplicitCurrent {
    /// `values` are indexed by the columns of `Δ`; the generator carries `i_𝛔`.
    pub(crate) fn new(
        attached: AttachedGenerator,
        mut values: Vec<Rational>,
        generator_current: Rational,
    ) -> Result<Self> {
        if attached.parallel_to().is_none() {
            return Err(Error::NotAFacet(attached.sigma().to_string()));
        }
        values.push(generator_current);
        let dim = attached.complex().dim();
        Ok(ExplicitCurrent {
            attached,
            current: Chain::from_coefficients(dim, values),
        })
    }

    pub fn attached(&self) -> &AttachedGenerator {
        &self.attached
    }

    /// `I_𝛔` on the columns of `Δ^𝛔`.
    pub fn current(&self) -> &Chain {
        &self.current
    }

    /// Replaces one coefficient, for negative controls.
    pub fn with_coefficient(mut self, column: usize, value: Rational) -> Self {
        self.current.set(column, value);
        self
    }

    pub fn generator_current(&self) -> &Rational {
        self.current.get(self.attached.generator())
    }

    pub fn sigma_current(&self) -> &Rational {
        self.current
            .get(self.attached.parallel_to().expect("checked at construction"))
    }

    /// Ohm's law voltages `v_τ = i_τ/x_τ`, with `v_𝛔 = v_σ`.
    pub fn voltage(&self, w: &WeightAssignment) -> Result<Chain> {
        let weights = w.facet_weights(self.attached.complex())?;
        let g = self.attached.generator();
        let mut v: Vec<Rational> = (0..g).map(|t| self.current.get(t) / &weights[t]).collect();
        let sigma = self.attached.parallel_to().expect("checked at construction");
        v.push(v[sigma].clone());
        Ok(Chain::from_coefficients(self.current.dim(), v))
    }

    /// `∂_{Δ^𝛔,d} I_𝛔`.
    pub fn kcl_residual(&self) -> Result<Vec<Rational>> {
        let k = self.attached.complex();
        Ok(k.boundary_matrix(k.dim())?.mul_vec(self.current.coefficients()))
    }

    /// `⟨V_𝛔, z⟩` for each cycle of `Δ` (extended by zero on `𝛔`) and for
    /// `[𝛔] - [σ]`, which together span the cycles of `Δ^𝛔` when the given
    /// cycles span those of `Δ`.
    pub fn kvl_residual(&self, w: &WeightAssignment, cycles: &[Chain]) -> Result<Vec<Rational>> {
        let v = self.voltage(w)?;
        let g = self.attached.generator();
        let mut out = Vec::with_capacity(cycles.len() + 1);
        for z in cycles {
            let mut c = z.coefficients().to_vec();
            c.push(Rational::zero());
            out.push(inner_product(&v, &Chain::from_coefficients(z.dim(), c))?);
        }
        let sigma = self.attached.parallel_to().expect("checked at construction");
        out.push(v.get(g) - v.get(sigma));
        Ok(out)
    }

    /// `R_σ = -v_𝛔 / i_𝛔`.
    pub fn effective_resistance(&self, w: &WeightAssignment) -> Result<Rational> {
        let v = self.voltage(w)?;
        Ok(-v.get(self.attached.generator()) / self.generator_current())
    }

    /// `i_𝛔 / (i_𝛔 + i_σ)`.
    pub fn ratio(&self) -> Rational {
        self.generator_current() / (self.generator_current() + self.sigma_current())
    }
}

/// A closed-form tree number with a printable rendering of the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub value: Rational,
    pub formula: String,
}

/// The order in which an enumerator proof builds a complex: the canonical
/// tree first, then the remaining facets lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncrementalBuild {
    pub tree: Vec<usize>,
    pub additions: Vec<usize>,
}

impl IncrementalBuild {
    pub(crate) fn new(k: &SimplicialComplex, tree: Vec<usize>) -> Self {
        let mut additions: Vec<usize> = (0..k.num_facets()).filter(|j| !tree.contains(j)).collect();
        additions.sort_by(|a, b| k.facets()[*a].simplex.cmp(&k.facets()[*b].simplex));
        IncrementalBuild { tree, additions }
    }

    /// Columns of the partial complex after `steps` additions; the most
    /// recently added facet is last.
    pub fn columns_after(&self, steps: usize) -> Vec<usize> {
        let mut cols = self.tree.clone();
        cols.extend_from_slice(&self.additions[..steps]);
        cols
    }
}

/// Renders `Π base(key)^exp`, dropping exponent 1 and skipping exponent 0.
pub(crate) fn render_powers<K: Ord + Clone>(
    powers: impl IntoIterator<Item = (K, usize)>,
    name: impl Fn(&K) -> String,
) -> String {
    let mut out = String::new();
    for (key, e) in powers {
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&name(&key));
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// Multiplies `x^e` into `acc` for each entry.
pub(crate) fn product_of_powers<K: Ord>(
    powers: &BTreeMap<K, usize>,
    base: impl Fn(&K) -> Rational,
) -> Rational {
    powers
        .iter()
        .fold(Rational::from_integer(1.into()), |acc, (k, &e)| {
            acc * num_traits::pow(base(k), e)
        })
}
