use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::quadrature::{build_rule, gauss_legendre, unit_sphere};
use super::{weighted_sum, FloatKernel, QuadratureRule, RuleKind, SampledFunction};
use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::kernel::{cauchy_kernel, differentiate_kernel, surface_area_sigma};
use crate::polynomial::{apply_operator, multi_indices_up_to, FueterTable, MultiIndex, Operator, Polynomial};

/// Interior and exterior evaluations closer to the sphere than this
/// fraction of the radius are flagged unreliable.
pub const GUARD_FRACTION: f64 = 0.1;

fn ser_element<S: Serializer>(e: &Element<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    e.coeffs().serialize(s)
}

/// A quadrature value with its accuracy bookkeeping.
#[derive(Debug, Clone, Serialize)]
pub struct Evaluation {
    #[serde(serialize_with = "ser_element")]
    pub value: Element<f64>,
    /// Distance from the evaluation point to the sphere.
    pub guard_distance: f64,
    pub reliable: bool,
    /// Max-abs difference against the same computation at half resolution.
    pub error_estimate: f64,
}

/// How the excised ball `B(x, ε)` is removed from a volume integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrincipalValue {
    /// Polar rule centred at `x` on `Ω ∖ B(x, ε)`; the `ρ^m` Jacobian
    /// cancels the kernel singularity.
    #[default]
    Recentred,
    /// Nodes of the fixed ball rule within `ε` of `x` are dropped.
    NodeExclusion,
}

fn check_point(rule: &QuadratureRule, spec: &AlgebraSpec, x: &[f64]) -> Result<()> {
    if rule.dim() != spec.dim_hyper() {
        return Err(Error::DimensionMismatch { expected: spec.dim_hyper(), got: rule.dim() });
    }
    if x.len() != rule.dim() {
        return Err(Error::DimensionMismatch { expected: rule.dim(), got: x.len() });
    }
    Ok(())
}

fn expect_kind(rule: &QuadratureRule, kind: RuleKind) -> Result<()> {
    if rule.kind != kind {
        return Err(Error::InvalidRule(format!("expected a {kind:?} rule, got {:?}", rule.kind)));
    }
    Ok(())
}

fn distance_from_center(rule: &QuadratureRule, x: &[f64]) -> f64 {
    x.iter().zip(&rule.center).map(|(a, c)| (a - c) * (a - c)).sum::<f64>().sqrt()
}

fn half(rule: &QuadratureRule) -> Result<QuadratureRule> {
    rule.with_resolution((rule.resolution / 2).max(2))
}

type KernelFn<'a> = dyn Fn(&[f64], &mut [f64]) -> Result<()> + Sync + 'a;

/// `Σ w_i K(y_i) · (n(y_i) · f(y_i))` with `K` evaluated into its buffer by
/// `kernel`.
fn boundary_sum(
    rule: &QuadratureRule,
    f: &dyn SampledFunction,
    kernel: &KernelFn<'_>,
) -> Result<Element<f64>> {
    let spec = f.spec();
    let n = spec.dim_total();
    let d = rule.dim();
    let sum = weighted_sum(rule, n, |i, out, scratch| {
        scratch.resize(4 * n, 0.0);
        scratch.fill(0.0);
        let (fy, rest) = scratch.split_at_mut(n);
        let (normal, rest) = rest.split_at_mut(n);
        let (nf, k) = rest.split_at_mut(n);
        let y = rule.node(i);
        f.eval_into(y, fy)?;
        normal[..d].copy_from_slice(rule.normal(i).expect("surface rule"));
        spec.mul_acc(normal, fy, nf);
        kernel(y, k)?;
        spec.mul_acc(k, nf, out);
        Ok(())
    })?;
    Element::from_coeffs(spec, sum)
}

fn cauchy_sum(rule: &QuadratureRule, f: &dyn SampledFunction, x: &[f64]) -> Result<Element<f64>> {
    let kernel = FloatKernel::new(f.spec())?;
    let z_of = |y: &[f64], out: &mut [f64]| {
        let z: smallvec::SmallVec<[f64; 8]> = y.iter().zip(x).map(|(a, b)| a - b).collect();
        kernel.eval_into(&z, out)
    };
    boundary_sum(rule, f, &z_of)
}

/// `C[f](x) = ∫_{∂B} E_y(x) (n(y) f(y)) dS(y)` for `x` off the sphere.
pub fn cauchy_transform(rule: &QuadratureRule, f: &dyn SampledFunction, x: &[f64]) -> Result<Evaluation> {
    expect_kind(rule, RuleKind::SphereSurface)?;
    check_point(rule, f.spec(), x)?;
    let gap = (distance_from_center(rule, x) - rule.radius).abs();
    if gap == 0.0 {
        return Err(Error::Guard("evaluation point lies on the sphere".into()));
    }
    let value = cauchy_sum(rule, f, x)?;
    let coarse = cauchy_sum(&half(rule)?, f, x)?;
    Ok(Evaluation {
        error_estimate: value.max_abs_diff(&coarse),
        value,
        guard_distance: gap,
        reliable: gap >= GUARD_FRACTION * rule.radius,
    })
}

/// Cauchy formula: reproduces left-monogenic `f` inside the ball and
/// vanishes outside it.
pub fn cauchy_integral(rule: &QuadratureRule, f: &dyn SampledFunction, x: &[f64]) -> Result<Evaluation> {
    cauchy_transform(rule, f, x)
}

fn check_pv(rule: &QuadratureRule, x: &[f64], epsilon: f64) -> Result<f64> {
    let gap = rule.radius - distance_from_center(rule, x);
    if gap <= 0.0 {
        return Err(Error::Guard("evaluation point is not inside the ball".into()));
    }
    if epsilon.is_nan() || epsilon < 0.0 || epsilon >= gap / 2.0 {
        return Err(Error::Guard(format!("epsilon {epsilon} must lie in [0, {})", gap / 2.0)));
    }
    Ok(gap)
}

/// Quadrature rule for `B ∖ B(x, ε)`.
pub(crate) fn excised_rule(
    rule: &QuadratureRule,
    x: &[f64],
    epsilon: f64,
    pv: PrincipalValue,
) -> Result<QuadratureRule> {
    expect_kind(rule, RuleKind::BallVolume)?;
    if pv == PrincipalValue::NodeExclusion {
        return Ok(rule.excluding_ball(x, epsilon));
    }
    let m = rule.m;
    let d = m + 1;
    let (dirs, dir_weights) = unit_sphere(m, rule.resolution, rule.seed)?;
    let offset: Vec<f64> = x.iter().zip(&rule.center).map(|(a, c)| a - c).collect();
    let off2: f64 = offset.iter().map(|v| v * v).sum();
    let radial = gauss_legendre(rule.resolution, -1.0, 1.0)?;
    let mut nodes = Vec::with_capacity(dir_weights.len() * radial.len() * d);
    let mut weights = Vec::with_capacity(dir_weights.len() * radial.len());
    for (j, wd) in dir_weights.iter().enumerate() {
        let u = &dirs[j * d..(j + 1) * d];
        // |offset + ρ u| = r
        let b: f64 = offset.iter().zip(u).map(|(a, b)| a * b).sum();
        let rho_max = -b + (b * b - (off2 - rule.radius * rule.radius)).sqrt();
        let half_len = 0.5 * (rho_max - epsilon);
        for &(t, wt) in &radial {
            let rho = epsilon + half_len * (t + 1.0);
            nodes.extend(x.iter().zip(u).map(|(xi, ui)| xi + rho * ui));
            weights.push(wd * wt * half_len * rho.powi(m as i32));
        }
    }
    Ok(QuadratureRule::from_parts(
        RuleKind::BallVolume,
        rule.center.clone(),
        rule.radius,
        m,
        rule.resolution,
        rule.seed,
        nodes,
        weights,
        Vec::new(),
    ))
}

/// `∫ E_y(x) g(y) dV(y)` over the excised rule.
fn volume_sum(rule: &QuadratureRule, g: &dyn SampledFunction, x: &[f64]) -> Result<Element<f64>> {
    let spec = g.spec();
    let n = spec.dim_total();
    let kernel = FloatKernel::new(spec)?;
    let sum = weighted_sum(rule, n, |i, out, scratch| {
        scratch.resize(2 * n + rule.dim(), 0.0);
        scratch.fill(0.0);
        let (gy, rest) = scratch.split_at_mut(n);
        let (k, z) = rest.split_at_mut(n);
        let y = rule.node(i);
        g.eval_into(y, gy)?;
        z.iter_mut().zip(y.iter().zip(x)).for_each(|(zi, (a, b))| *zi = a - b);
        kernel.eval_into(z, k)?;
        spec.mul_acc(k, gy, out);
        Ok(())
    })?;
    Element::from_coeffs(spec, sum)
}

/// Principal value of `T[f](x) = -∫_B E_y(x) f(y) dV(y)` without the
/// accuracy bookkeeping.
pub(crate) fn teodorescu_value(
    rule: &QuadratureRule,
    f: &dyn SampledFunction,
    x: &[f64],
    epsilon: f64,
    pv: PrincipalValue,
) -> Result<Element<f64>> {
    check_point(rule, f.spec(), x)?;
    check_pv(rule, x, epsilon)?;
    Ok(volume_sum(&excised_rule(rule, x, epsilon, pv)?, f, x)?.neg())
}

/// Teodorescu transform `T[f](x)` with the ball `B(x, ε)` excised.
pub fn teodorescu(
    rule: &QuadratureRule,
    f: &dyn SampledFunction,
    x: &[f64],
    epsilon: f64,
    pv: PrincipalValue,
) -> Result<Evaluation> {
    let value = teodorescu_value(rule, f, x, epsilon, pv)?;
    let coarse = teodorescu_value(&half(rule)?, f, x, epsilon, pv)?;
    let gap = rule.radius - distance_from_center(rule, x);
    Ok(Evaluation {
        error_estimate: value.max_abs_diff(&coarse),
        value,
        guard_distance: gap,
        reliable: gap >= GUARD_FRACTION * rule.radius,
    })
}

fn pompeiu_value(
    boundary: &QuadratureRule,
    volume: &QuadratureRule,
    f: &dyn SampledFunction,
    dbar_f: &dyn SampledFunction,
    x: &[f64],
    epsilon: f64,
    pv: PrincipalValue,
) -> Result<Element<f64>> {
    let c = cauchy_sum(boundary, f, x)?;
    let v = volume_sum(&excised_rule(volume, x, epsilon, pv)?, dbar_f, x)?;
    c.sub(&v)
}

/// Cauchy–Pompeiu: `∫_{∂B} E_y(x)(n f) dS - ∫_{B ∖ B(x,ε)} E_y(x) (∂̄f) dV`.
pub fn cauchy_pompeiu(
    boundary: &QuadratureRule,
    volume: &QuadratureRule,
    f: &dyn SampledFunction,
    dbar_f: &dyn SampledFunction,
    x: &[f64],
    epsilon: f64,
    pv: PrincipalValue,
) -> Result<Evaluation> {
    expect_kind(boundary, RuleKind::SphereSurface)?;
    check_point(boundary, f.spec(), x)?;
    check_point(volume, dbar_f.spec(), x)?;
    let gap = check_pv(volume, x, epsilon)?;
    let value = pompeiu_value(boundary, volume, f, dbar_f, x, epsilon, pv)?;
    let coarse = pompeiu_value(&half(boundary)?, &half(volume)?, f, dbar_f, x, epsilon, pv)?;
    Ok(Evaluation {
        error_estimate: value.max_abs_diff(&coarse),
        value,
        guard_distance: gap,
        reliable: gap >= GUARD_FRACTION * boundary.radius,
    })
}

/// `∂_k f(0) = ∫_{∂B} Q_k(y) (n(y) f(y)) dS(y)` with `k` over all m + 1
/// coordinates.
pub fn derivative_formula(rule: &QuadratureRule, f: &dyn SampledFunction, k: &MultiIndex) -> Result<Element<f64>> {
    expect_kind(rule, RuleKind::SphereSurface)?;
    let spec = f.spec();
    check_point(rule, spec, &rule.center)?;
    if distance_from_center(rule, &vec![0.0; rule.dim()]) >= rule.radius {
        return Err(Error::Guard("the origin must lie inside the ball".into()));
    }
    let q = differentiate_kernel(&cauchy_kernel(spec)?, k)?.to_float();
    boundary_sum(rule, f, &|y: &[f64], out: &mut [f64]| q.eval_into(y, out))
}

/// Average of `f` over the sphere `∂B(center, radius)`.
pub fn mean_value(
    f: &dyn SampledFunction,
    center: &[f64],
    radius: f64,
    resolution: usize,
    seed: u64,
) -> Result<Element<f64>> {
    let spec = f.spec();
    let rule = build_rule(RuleKind::SphereSurface, center, radius, spec.m(), resolution, seed)?;
    let total = super::integrate(&rule, f)?;
    let area = surface_area_sigma(spec.m())?.value * radius.powi(spec.m() as i32);
    Ok(total.scale(&(1.0 / area)))
}

/// Both sides of the Gauss lemma and their distance.
#[derive(Debug, Clone, Serialize)]
pub struct GaussResidual {
    #[serde(serialize_with = "ser_element")]
    pub boundary: Element<f64>,
    #[serde(serialize_with = "ser_element")]
    pub volume: Element<f64>,
    pub residual: f64,
    pub with_associator: bool,
}

/// `|∫_{∂B} φ(n f) dS - ∫_B ((φ∂̄)f + φ(∂̄f) - Σ_s [v_s, ∂̄φ_s, f]) dV|`
/// for an `M`-valued polynomial `φ`. With `with_associator = false` the
/// associator sum is left out.
pub fn gauss_residual(
    boundary: &QuadratureRule,
    volume: &QuadratureRule,
    phi: &Polynomial,
    f: &Polynomial,
    with_associator: bool,
) -> Result<GaussResidual> {
    expect_kind(boundary, RuleKind::SphereSurface)?;
    expect_kind(volume, RuleKind::BallVolume)?;
    if !phi.is_m_valued() {
        return Err(Error::NotInSubspace);
    }
    let spec = phi.spec().clone();
    let n = spec.dim_total();
    let m = spec.m();
    check_point(boundary, &spec, &boundary.center)?;
    check_point(volume, &spec, &volume.center)?;

    let phi_f = phi.to_float();
    let f_f = f.to_float();
    let phi_dbar = apply_operator(Operator::DbarRight, phi).to_float();
    let dbar_f = apply_operator(Operator::DbarLeft, f).to_float();
    let dbar_phi_s: Vec<_> = (0..=m)
        .map(|s| apply_operator(Operator::DbarLeft, &phi.component(s)).to_float())
        .collect();

    let lhs = boundary_sum(boundary, &f_f, &|y: &[f64], out: &mut [f64]| {
        out.fill(0.0);
        phi_f.eval_into(y, out);
        Ok(())
    })?;

    let sum = weighted_sum(volume, n, |i, out, scratch| {
        scratch.resize(4 * n, 0.0);
        scratch.fill(0.0);
        let y = volume.node(i);
        let (fy, rest) = scratch.split_at_mut(n);
        let (a, rest) = rest.split_at_mut(n);
        let (b, basis) = rest.split_at_mut(n);
        f_f.eval_into(y, fy);
        phi_dbar.eval_into(y, a);
        spec.mul_acc(a, fy, out);
        phi_f.eval_into(y, b);
        a.fill(0.0);
        dbar_f.eval_into(y, a);
        spec.mul_acc(b, a, out);
        if with_associator {
            for (s, d) in dbar_phi_s.iter().enumerate() {
                a.fill(0.0);
                d.eval_into(y, a);
                basis.fill(0.0);
                basis[s] = 1.0;
                // [v_s, a, f] = (v_s a) f - v_s (a f)
                let left = spec.mul_coeffs(&spec.mul_coeffs(basis, a), fy);
                let right = spec.mul_coeffs(basis, &spec.mul_coeffs(a, fy));
                out.iter_mut().zip(left.iter().zip(&right)).for_each(|(o, (l, r))| *o -= l - r);
            }
        }
        Ok(())
    })?;
    let rhs = Element::from_coeffs(&spec, sum)?;
    let residual = lhs.sub(&rhs)?.norm();
    Ok(GaussResidual { boundary: lhs, volume: rhs, residual, with_associator })
}

/// Taylor partial sum `Σ_{|k| <= N} P_k(x) · ∂_k f(0)` with `k` over the m
/// frame coordinates.
pub fn taylor_evaluate(
    table: &FueterTable,
    derivs: &BTreeMap<MultiIndex, Element<f64>>,
    x: &[f64],
    degree_cap: u32,
) -> Result<Element<f64>> {
    let spec = table.spec();
    if degree_cap > table.max_degree() {
        return Err(Error::DegreeTooLarge { cap: degree_cap, max: table.max_degree() });
    }
    if x.len() != spec.dim_hyper() {
        return Err(Error::DimensionMismatch { expected: spec.dim_hyper(), got: x.len() });
    }
    let mut acc = vec![0.0; spec.dim_total()];
    for k in multi_indices_up_to(spec.m(), degree_cap) {
        let d = derivs.get(&k).ok_or_else(|| Error::MissingDerivative(k.as_slice().to_vec()))?;
        let p = table.get(&k).ok_or_else(|| Error::MissingDerivative(k.as_slice().to_vec()))?;
        let pk = p.to_float().eval(x)?;
        spec.mul_acc(pk.coeffs(), d.coeffs(), &mut acc);
    }
    Element::from_coeffs(spec, acc)
}

/// Errors `|f(x) - S_N(x)|` for `N = 0..=n_max`, where `f = E(· - y)` and
/// `S_N` is its Taylor partial sum about 0 with derivatives taken from the
/// exact kernel derivatives.
pub fn shifted_kernel_taylor_errors(
    spec: &std::sync::Arc<AlgebraSpec>,
    y: &[f64],
    x: &[f64],
    n_max: u32,
) -> Result<Vec<f64>> {
    use rayon::prelude::*;

    let n = spec.dim_hyper();
    if y.len() != n || x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: if y.len() != n { y.len() } else { x.len() } });
    }
    let table = FueterTable::build(spec, n_max)?;
    let e = cauchy_kernel(spec)?;
    let minus_y: Vec<f64> = y.iter().map(|v| -v).collect();
    // ∂_k [E(x - y)] at x = 0 is (∂_k E)(-y)
    let derivs = multi_indices_up_to(spec.m(), n_max)
        .into_par_iter()
        .map(|k| {
            let d = e.derivative(&k.with_leading_zero())?.evaluate(&minus_y)?;
            Ok((k, d))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let shifted: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let exact = e.evaluate(&shifted)?;
    (0..=n_max)
        .map(|cap| Ok(taylor_evaluate(&table, &derivs, x, cap)?.max_abs_diff(&exact)))
        .collect()
}
