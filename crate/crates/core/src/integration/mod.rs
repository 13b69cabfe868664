//! Quadrature on balls and spheres in `M` and the integral formulas built on
//! it: Cauchy, Cauchy–Pompeiu, Teodorescu and Cauchy transforms, the
//! derivative formula, mean values, the Gauss lemma residual and Taylor
//! partial sums.
//!
//! Sums are reduced over fixed-size node chunks and then pairwise, so results
//! do not depend on the number of worker threads.

mod diff;
mod formulas;
mod quadrature;

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::kernel::FloatRadial;
use crate::polynomial::FloatPolynomial;

pub use diff::{dbar_fd, dconj_fd, partial_fd, pi_operator, FD_RELATIVE_STEP};
pub use formulas::{
    cauchy_integral, cauchy_pompeiu, cauchy_transform, derivative_formula, gauss_residual, mean_value,
    shifted_kernel_taylor_errors, taylor_evaluate, teodorescu, Evaluation, GaussResidual, PrincipalValue,
    GUARD_FRACTION,
};
pub use quadrature::{build_quadrature, QuadratureRule, RuleKind, MAX_TENSOR_M};

/// A deterministic algebra-valued function sampled at points of `M`.
pub trait SampledFunction: Sync {
    fn spec(&self) -> &Arc<AlgebraSpec>;

    /// Writes `f(y)` into `out`, which the caller has zeroed.
    fn eval_into(&self, y: &[f64], out: &mut [f64]) -> Result<()>;

    fn evaluate(&self, y: &[f64]) -> Result<Element<f64>> {
        let mut out = vec![0.0; self.spec().dim_total()];
        self.eval_into(y, &mut out)?;
        Element::from_coeffs(self.spec(), out)
    }
}

impl SampledFunction for FloatPolynomial {
    fn spec(&self) -> &Arc<AlgebraSpec> {
        FloatPolynomial::spec(self)
    }

    fn eval_into(&self, y: &[f64], out: &mut [f64]) -> Result<()> {
        if y.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: y.len() });
        }
        FloatPolynomial::eval_into(self, y, out);
        Ok(())
    }
}

impl SampledFunction for FloatRadial {
    fn spec(&self) -> &Arc<AlgebraSpec> {
        FloatRadial::spec(self)
    }

    fn eval_into(&self, y: &[f64], out: &mut [f64]) -> Result<()> {
        FloatRadial::eval_into(self, y, out)
    }
}

/// A closure `(y, out) -> Result<()>` viewed as a [`SampledFunction`].
pub struct FnSampled<F> {
    spec: Arc<AlgebraSpec>,
    f: F,
}

impl<F> FnSampled<F>
where
    F: Fn(&[f64], &mut [f64]) -> Result<()> + Sync,
{
    pub fn new(spec: &Arc<AlgebraSpec>, f: F) -> Self {
        Self { spec: spec.clone(), f }
    }
}

impl<F> SampledFunction for FnSampled<F>
where
    F: Fn(&[f64], &mut [f64]) -> Result<()> + Sync,
{
    fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    fn eval_into(&self, y: &[f64], out: &mut [f64]) -> Result<()> {
        (self.f)(y, out)
    }
}

const CHUNK: usize = 256;

fn pairwise(mut parts: Vec<Vec<f64>>, width: usize) -> Vec<f64> {
    if parts.is_empty() {
        return vec![0.0; width];
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
            }
            next.push(a);
        }
        parts = next;
    }
    parts.pop().expect("nonempty")
}

/// `Σ_i w_i g(i)` where `g` writes a `width`-vector for node `i` into a
/// zeroed buffer. `scratch` gives `g` a reusable work area.
pub(crate) fn weighted_sum<G>(rule: &QuadratureRule, width: usize, g: G) -> Result<Vec<f64>>
where
    G: Fn(usize, &mut [f64], &mut Vec<f64>) -> Result<()> + Sync,
{
    let chunks: Vec<usize> = (0..rule.len()).step_by(CHUNK).collect();
    let parts = chunks
        .into_par_iter()
        .map(|start| {
            let mut acc = vec![0.0; width];
            let mut buf = vec![0.0; width];
            let mut scratch = Vec::new();
            for i in start..(start + CHUNK).min(rule.len()) {
                buf.iter_mut().for_each(|b| *b = 0.0);
                g(i, &mut buf, &mut scratch)?;
                let w = rule.weights()[i];
                acc.iter_mut().zip(&buf).for_each(|(a, b)| *a += w * b);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise(parts, width))
}

/// Componentwise `∫ f`, with respect to `dS` or `dV` depending on the rule.
pub fn integrate(rule: &QuadratureRule, f: &dyn SampledFunction) -> Result<Element<f64>> {
    let spec = f.spec();
    if rule.dim() != spec.dim_hyper() {
        return Err(Error::DimensionMismatch { expected: spec.dim_hyper(), got: rule.dim() });
    }
    let sum = weighted_sum(rule, spec.dim_total(), |i, out, _| f.eval_into(rule.node(i), out))?;
    Element::from_coeffs(spec, sum)
}

/// `E(z) = z^c / (σ_m |z|^{m+1})` in floats, written into `out`.
#[derive(Debug, Clone)]
pub(crate) struct FloatKernel {
    m: usize,
    inv_sigma: f64,
}

impl FloatKernel {
    pub(crate) fn new(spec: &AlgebraSpec) -> Result<Self> {
        let m = spec.m();
        Ok(Self { m, inv_sigma: 1.0 / crate::kernel::surface_area_sigma(m)?.value })
    }

    pub(crate) fn eval_into(&self, z: &[f64], out: &mut [f64]) -> Result<()> {
        let r2: f64 = z.iter().map(|v| v * v).sum();
        if r2 == 0.0 {
            return Err(Error::SingularPoint);
        }
        let w = self.inv_sigma / r2.sqrt().powi(self.m as i32 + 1);
        out.iter_mut().for_each(|o| *o = 0.0);
        out[0] = z[0] * w;
        for s in 1..=self.m {
            out[s] = -z[s] * w;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
