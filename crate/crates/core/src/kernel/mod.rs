//! The Cauchy kernel `E(x) = x^c / (σ_m |x|^{m+1})` and its derivatives as
//! exact radial-rational functions on `M ∖ {0}`.
//!
//! Factors of π are tracked symbolically; floats only appear in
//! [`RadialRationalFunction::evaluate`].

mod radial;
mod sigma;

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::polynomial::{multi_indices_up_to, MultiIndex, Polynomial};
use crate::scalar::Rational;

pub use radial::{FloatRadial, RadialDocument, RadialRationalFunction, RadialTermDocument};
pub use sigma::{surface_area_sigma, SurfaceConstant};

/// `E(x) = (1/σ_m) · (x_0 - Σ_{s≥1} x_s v_s) · |x|^{-(m+1)}`.
pub fn cauchy_kernel(spec: &Arc<AlgebraSpec>) -> Result<RadialRationalFunction> {
    let m = spec.m();
    let sigma = surface_area_sigma(m)?;
    let inv = Rational::from_integer(1.into()) / sigma.rational();
    let mut numerator = Polynomial::coordinate(spec, 0)?;
    for s in 1..=m {
        let term = Polynomial::coordinate(spec, s)?.right_mul(&Element::basis(spec, s))?;
        numerator = numerator.sub(&term)?;
    }
    let mut terms = BTreeMap::new();
    terms.insert(0, numerator.scale(&inv));
    Ok(RadialRationalFunction::from_parts(spec.clone(), m, -(sigma.pi_power() as i32), terms))
}

/// `Q_k = (-1)^{|k|} ∂_k f` for `k` over all m + 1 coordinates.
pub fn differentiate_kernel(f: &RadialRationalFunction, k: &MultiIndex) -> Result<RadialRationalFunction> {
    let d = f.derivative(k)?;
    Ok(if k.total() % 2 == 1 { d.neg() } else { d })
}

/// `Q_k` for every `|k| <= max_degree` over all m + 1 coordinates, computed
/// by iterated first-order differentiation and shared read-only.
#[derive(Debug, Clone)]
pub struct KernelTable {
    max_degree: u32,
    entries: BTreeMap<MultiIndex, RadialRationalFunction>,
}

impl KernelTable {
    pub fn build(spec: &Arc<AlgebraSpec>, max_degree: u32) -> Result<Self> {
        let e = cauchy_kernel(spec)?;
        let n = spec.dim_hyper();
        let mut entries = BTreeMap::new();
        entries.insert(MultiIndex::zeros(n), e);
        for degree in 1..=max_degree {
            let layer: Vec<MultiIndex> =
                multi_indices_up_to(n, degree).into_iter().filter(|k| k.total() == degree).collect();
            let computed = layer
                .into_par_iter()
                .map(|k| {
                    // peel the first nonzero slot off and differentiate its parent
                    let slot = k.as_slice().iter().position(|&e| e > 0).expect("degree > 0");
                    let mut parent = k.clone();
                    parent.set(slot, parent.get(slot) - 1);
                    let q = entries[&parent].partial(slot).neg();
                    (k, q)
                })
                .collect::<Vec<_>>();
            entries.extend(computed);
        }
        Ok(Self { max_degree, entries })
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn get(&self, k: &MultiIndex) -> Result<&RadialRationalFunction> {
        self.entries.get(k).ok_or_else(|| Error::MissingDerivative(k.as_slice().to_vec()))
    }
}

#[cfg(test)]
mod tests;
