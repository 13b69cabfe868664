use std::sync::Arc;

use super::formulas::{teodorescu_value, PrincipalValue};
use super::{QuadratureRule, SampledFunction};
use crate::algebra::{AlgebraSpec, Element};
use crate::error::Result;

/// Default finite-difference step as a fraction of the ball radius.
pub const FD_RELATIVE_STEP: f64 = 1e-4;

/// `∂_s g(x)` by central differences with one Richardson step.
pub fn partial_fd(
    g: &(dyn Fn(&[f64]) -> Result<Element<f64>> + Sync),
    x: &[f64],
    s: usize,
    h: f64,
) -> Result<Element<f64>> {
    let central = |h: f64| -> Result<Element<f64>> {
        let mut plus = x.to_vec();
        let mut minus = x.to_vec();
        plus[s] += h;
        minus[s] -= h;
        Ok(g(&plus)?.sub(&g(&minus)?)?.scale(&(0.5 / h)))
    };
    let coarse = central(h)?;
    let fine = central(0.5 * h)?;
    // (4 D(h/2) - D(h)) / 3
    fine.scale(&(4.0 / 3.0)).sub(&coarse.scale(&(1.0 / 3.0)))
}

fn combine(
    spec: &Arc<AlgebraSpec>,
    g: &(dyn Fn(&[f64]) -> Result<Element<f64>> + Sync),
    x: &[f64],
    h: f64,
    sign: impl Fn(usize) -> f64,
) -> Result<Element<f64>> {
    let mut acc = Element::zero(spec);
    for s in 0..spec.dim_hyper() {
        let d = partial_fd(g, x, s, h)?;
        let term = Element::basis(spec, s).mul(&d)?.scale(&sign(s));
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `∂̄ g(x) = Σ_s v_s ∂_s g(x)` by finite differences.
pub fn dbar_fd(
    spec: &Arc<AlgebraSpec>,
    g: &(dyn Fn(&[f64]) -> Result<Element<f64>> + Sync),
    x: &[f64],
    h: f64,
) -> Result<Element<f64>> {
    combine(spec, g, x, h, |_| 1.0)
}

/// `∂ g(x) = ∂_0 g(x) - Σ_{s≥1} v_s ∂_s g(x)` by finite differences.
pub fn dconj_fd(
    spec: &Arc<AlgebraSpec>,
    g: &(dyn Fn(&[f64]) -> Result<Element<f64>> + Sync),
    x: &[f64],
    h: f64,
) -> Result<Element<f64>> {
    combine(spec, g, x, h, |s| if s == 0 { 1.0 } else { -1.0 })
}

/// `Π[f](x) = ∂ T[f](x)` by finite differences of the Teodorescu transform.
pub fn pi_operator(
    rule: &QuadratureRule,
    f: &dyn SampledFunction,
    x: &[f64],
    epsilon: f64,
    pv: PrincipalValue,
) -> Result<Element<f64>> {
    let h = FD_RELATIVE_STEP * rule.radius;
    let t = |y: &[f64]| teodorescu_value(rule, f, y, epsilon, pv);
    dconj_fd(f.spec(), &t, x, h)
}
