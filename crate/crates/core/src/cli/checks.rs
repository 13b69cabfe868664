use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{CheckRecord, ConvergenceRow, Measured, Status, Tolerance};
use super::Context;
use crate::algebra::{
    check_algebra_axioms, complex_lines_meet_in_reals, cone_membership, random_element, random_rational,
    AlgebraSpec, AxiomConfig, AxiomReport, Element, MoufangStatus,
};
use crate::error::{Error, Result};
use crate::integration::{
    build_quadrature, cauchy_integral, cauchy_pompeiu, dbar_fd, derivative_formula, gauss_residual, mean_value,
    pi_operator, shifted_kernel_taylor_errors, teodorescu, FnSampled, PrincipalValue, QuadratureRule, RuleKind,
    SampledFunction, FD_RELATIVE_STEP,
};
use crate::kernel::{cauchy_kernel, KernelTable};
use crate::polynomial::{
    apply_operator, ck_extension, fueter_polynomial, multi_indices_up_to, Association, FueterTable, MultiIndex,
    Operator, Polynomial, Side,
};
use crate::scalar::Rational;

/// Largest degree cap accepted by the exact and Taylor suites.
pub const MAX_DEGREE_CAP: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    CheckAlgebra,
    VerifyMonogenic,
    Reconstruct,
    TaylorDemo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckAlgebra => "check-algebra",
            Command::VerifyMonogenic => "verify-monogenic",
            Command::Reconstruct => "reconstruct",
            Command::TaylorDemo => "taylor-demo",
        }
    }
}

/// The verdict of one check before timing and provenance are attached.
#[derive(Debug, Clone)]
pub struct Outcome {
    status: Status,
    measured: Measured,
    tolerance: Tolerance,
    detail: Option<String>,
}

impl Outcome {
    fn exact(nonzero: usize) -> Self {
        Self {
            status: if nonzero == 0 { Status::Pass } else { Status::Fail },
            measured: if nonzero == 0 { Measured::ExactZero } else { Measured::ExactNonzero(nonzero) },
            tolerance: Tolerance::Exact,
            detail: None,
        }
    }

    fn at_most(measured: f64, bound: f64) -> Self {
        Self {
            status: if measured <= bound { Status::Pass } else { Status::Fail },
            measured: Measured::Float(measured),
            tolerance: Tolerance::AtMost(bound),
            detail: None,
        }
    }

    fn at_least(measured: f64, bound: f64) -> Self {
        Self {
            status: if measured >= bound { Status::Pass } else { Status::Fail },
            measured: Measured::Float(measured),
            tolerance: Tolerance::AtLeast(bound),
            detail: None,
        }
    }

    fn within_factor(measured: f64, target: f64, factor: f64) -> Self {
        let ok = measured >= target / factor && measured <= target * factor;
        Self {
            status: if ok { Status::Pass } else { Status::Fail },
            measured: Measured::Float(measured),
            tolerance: Tolerance::WithinFactor { target, factor },
            detail: None,
        }
    }

    fn skip(reason: impl Into<String>) -> Self {
        Self { status: Status::Skip, measured: Measured::None, tolerance: Tolerance::Exact, detail: Some(reason.into()) }
    }

    fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

pub(super) fn to_record(outcome: Result<Outcome>, name: &str, runtime_ms: f64, provenance: String) -> CheckRecord {
    let o = outcome.unwrap_or_else(|e| Outcome {
        status: Status::Fail,
        measured: Measured::None,
        tolerance: Tolerance::Exact,
        detail: Some(e.to_string()),
    });
    CheckRecord {
        name: name.to_string(),
        status: o.status,
        measured_error: o.measured,
        tolerance: o.tolerance,
        runtime_ms,
        provenance,
        detail: o.detail,
    }
}

pub struct Check {
    pub name: &'static str,
    pub run: fn(&Context) -> Result<Outcome>,
}

macro_rules! checks {
    ($($name:literal => $f:path),* $(,)?) => {
        vec![$(Check { name: $name, run: $f }),*]
    };
}

/// The compiled-in checks of a subcommand.
pub fn registry(command: Command) -> Vec<Check> {
    match command {
        Command::CheckAlgebra => checks![
            "unity" => unity,
            "alternation" => alternation,
            "moufang" => moufang,
            "anti-involution" => anti_involution,
            "hypercomplex-frame" => frame,
            "quadratic-cone" => quadratic_cone,
            "complex-lines" => complex_lines,
            "spec-round-trip" => spec_round_trip,
        ],
        Command::VerifyMonogenic => checks![
            "fueter-dbar-left" => fueter_dbar_left,
            "fueter-dbar-right" => fueter_dbar_right,
            "fueter-m-valued" => fueter_m_valued,
            "fueter-right-multiple" => fueter_right_multiple,
            "order-independence" => order_independence,
            "ck-identity" => ck_identity,
            "kernel-dbar" => kernel_dbar,
            "kernel-laplacian" => kernel_laplacian,
            "kernel-symmetry" => kernel_symmetry,
            "kernel-derivatives" => kernel_derivatives,
            "kernel-right-multiple" => kernel_right_multiple,
            "kernel-associator-sum" => kernel_associator_sum,
        ],
        Command::Reconstruct => checks![
            "quadrature-calibration" => quadrature_calibration,
            "cauchy-interior" => cauchy_interior,
            "cauchy-exterior" => cauchy_exterior,
            "cauchy-pompeiu" => pompeiu,
            "pompeiu-consistency" => pompeiu_consistency,
            "mean-value" => mean_values,
            "max-modulus" => max_modulus,
            "teodorescu-inverse" => teodorescu_inverse,
            "pv-stability" => pv_stability,
            "pi-operator" => pi_operator_bounded,
            "gauss-residual" => gauss_with_associator,
            "gauss-ablation" => gauss_ablation,
            "derivative-formula" => derivative_check,
            "taylor-decay" => taylor_decay,
        ],
        Command::TaylorDemo => checks![
            "taylor-degree-0" => taylor_degree_0,
            "taylor-ratio-2" => taylor_ratio_2,
            "taylor-ratio-3" => taylor_ratio_3,
            "taylor-ratio-4" => taylor_ratio_4,
            "taylor-ratio-5" => taylor_ratio_5,
            "taylor-ratio-6" => taylor_ratio_6,
        ],
    }
}

/// Shared, lazily computed inputs.
#[derive(Default)]
pub(super) struct Cache {
    axioms: OnceLock<AxiomReport>,
    fueter: OnceLock<std::result::Result<FueterTable, String>>,
    taylor: OnceLock<std::result::Result<Vec<f64>, String>>,
}

fn shared<T>(cell: &OnceLock<std::result::Result<T, String>>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(|| init().map_err(|e| e.to_string())).as_ref().map_err(|e| Error::InvalidParameter(e.clone()))
}

fn rng(ctx: &Context, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(ctx.config.seed);
    r.set_stream(stream);
    r
}

// ---- check-algebra -------------------------------------------------------

fn axioms(ctx: &Context) -> &AxiomReport {
    ctx.cache
        .axioms
        .get_or_init(|| check_algebra_axioms(&ctx.spec, &AxiomConfig { sample_size: 64, seed: ctx.config.seed }))
}

fn unity(ctx: &Context) -> Result<Outcome> {
    Ok(Outcome::exact(usize::from(!axioms(ctx).unity)))
}

fn alternation(ctx: &Context) -> Result<Outcome> {
    let r = axioms(ctx);
    Ok(Outcome::exact(r.alternation_failures).detail(format!("associative: {}", r.associative)))
}

fn moufang(ctx: &Context) -> Result<Outcome> {
    let r = axioms(ctx);
    let failed = r.moufang.iter().filter(|ok| !**ok).count();
    let status = match r.moufang_status {
        MoufangStatus::Passed => "passed",
        MoufangStatus::ImpliedByAssociativity => "implied-by-associativity",
        MoufangStatus::Failed => "failed",
    };
    Ok(Outcome::exact(failed).detail(status))
}

fn anti_involution(ctx: &Context) -> Result<Outcome> {
    Ok(Outcome::exact(usize::from(!axioms(ctx).anti_involution)))
}

fn frame(ctx: &Context) -> Result<Outcome> {
    Ok(Outcome::exact(usize::from(!axioms(ctx).frame)))
}

fn random_paravector(spec: &Arc<AlgebraSpec>, rng: &mut ChaCha8Rng) -> Element {
    loop {
        let x = random_element(spec, rng, spec.dim_hyper());
        if !x.is_real() {
            return x;
        }
    }
}

fn quadratic_cone(ctx: &Context) -> Result<Outcome> {
    let mut rng = rng(ctx, 1);
    let outside = (0..64).filter(|_| !cone_membership(&random_paravector(&ctx.spec, &mut rng)).in_cone).count();
    Ok(Outcome::exact(outside).detail("64 sampled non-real points of M"))
}

fn complex_lines(ctx: &Context) -> Result<Outcome> {
    let spec = &ctx.spec;
    if spec.m() < 2 {
        return Ok(Outcome::skip("needs m >= 2"));
    }
    let mut rng = rng(ctx, 2);
    let imaginary = |rng: &mut ChaCha8Rng| {
        let mut c = random_paravector(spec, rng).into_coeffs();
        c[0] = Rational::from_integer(BigInt::from(0));
        Element::from_coeffs(spec, c)
    };
    let mut failures = 0;
    for _ in 0..32 {
        let j = imaginary(&mut rng)?;
        let k = imaginary(&mut rng)?;
        // parallel pairs span the same line
        let parallel = crate::algebra::complex_lines_meet_in_reals(&j, &j.add(&k)?) && j.scale(&Rational::from_integer(2.into())) == k;
        if !parallel && !complex_lines_meet_in_reals(&j, &k) {
            failures += 1;
        }
    }
    Ok(Outcome::exact(failures))
}

fn spec_round_trip(ctx: &Context) -> Result<Outcome> {
    let text = ctx.spec.to_json()?;
    let back = AlgebraSpec::from_json_unchecked(&text)?;
    let same = back == *ctx.spec && back.to_json()? == text;
    Ok(Outcome::exact(usize::from(!same)))
}

// ---- verify-monogenic ----------------------------------------------------

fn fueter(ctx: &Context) -> Result<&FueterTable> {
    shared(&ctx.cache.fueter, || FueterTable::build(&ctx.spec, ctx.config.degree_cap))
}

fn count_fueter(ctx: &Context, bad: impl Fn(&MultiIndex, &Polynomial) -> Result<bool> + Sync) -> Result<Outcome> {
    let table = fueter(ctx)?;
    let entries: Vec<_> = table.iter().collect();
    let n = entries
        .par_iter()
        .map(|(k, p)| bad(k, p).map(usize::from))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(Outcome::exact(n).detail(format!("{} multi-indices, degree <= {}", entries.len(), table.max_degree())))
}

fn fueter_dbar_left(ctx: &Context) -> Result<Outcome> {
    count_fueter(ctx, |_, p| Ok(!apply_operator(Operator::DbarLeft, p).is_zero()))
}

fn fueter_dbar_right(ctx: &Context) -> Result<Outcome> {
    count_fueter(ctx, |_, p| Ok(!apply_operator(Operator::DbarRight, p).is_zero()))
}

fn fueter_m_valued(ctx: &Context) -> Result<Outcome> {
    count_fueter(ctx, |_, p| Ok(!p.is_m_valued()))
}

fn fueter_right_multiple(ctx: &Context) -> Result<Outcome> {
    let mut rng = rng(ctx, 3);
    let a: Vec<Element> = (0..2).map(|_| random_element(&ctx.spec, &mut rng, ctx.spec.dim_total())).collect();
    count_fueter(ctx, |_, p| {
        for a in &a {
            if !apply_operator(Operator::DbarLeft, &p.right_mul(a)?).is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    })
}

fn order_independence(ctx: &Context) -> Result<Outcome> {
    count_fueter(ctx, |k, p| Ok(fueter_polynomial(&ctx.spec, k, Association::LeftToRight)? != *p))
}

fn ck_identity(ctx: &Context) -> Result<Outcome> {
    let one = Element::one(&ctx.spec);
    count_fueter(ctx, |k, p| {
        let monomial = Polynomial::monomial(k.with_leading_zero(), &one);
        let ck = ck_extension(&monomial, Side::Left)?;
        Ok(ck != p.scale(&Rational::from_integer(k.factorial())))
    })
}

fn kernel_dbar(ctx: &Context) -> Result<Outcome> {
    let e = cauchy_kernel(&ctx.spec)?;
    let n = [Operator::DbarLeft, Operator::DbarRight].iter().filter(|op| !e.apply(**op).is_zero()).count();
    Ok(Outcome::exact(n))
}

fn kernel_laplacian(ctx: &Context) -> Result<Outcome> {
    let e = cauchy_kernel(&ctx.spec)?;
    Ok(Outcome::exact(usize::from(!e.apply(Operator::Laplacian).is_zero())))
}

fn kernel_symmetry(ctx: &Context) -> Result<Outcome> {
    let e = cauchy_kernel(&ctx.spec)?;
    let m = ctx.spec.m();
    let pairs: Vec<(usize, usize)> = (1..=m).flat_map(|s| (s + 1..=m).map(move |t| (s, t))).collect();
    let bad = pairs
        .par_iter()
        .map(|&(s, t)| e.component(s).partial(t).equivalent(&e.component(t).partial(s)).map(|ok| usize::from(!ok)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(Outcome::exact(bad).detail(format!("{} pairs s < t", pairs.len())))
}

fn kernel_derivatives(ctx: &Context) -> Result<Outcome> {
    let degree = ctx.config.degree_cap.min(2);
    let table = KernelTable::build(&ctx.spec, degree)?;
    let ks = multi_indices_up_to(ctx.spec.dim_hyper(), degree);
    let bad = ks
        .par_iter()
        .map(|k| Ok(usize::from(!table.get(k)?.apply(Operator::DbarLeft).is_zero())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(Outcome::exact(bad).detail(format!("{} derivatives of order <= {degree}", ks.len())))
}

fn kernel_right_multiple(ctx: &Context) -> Result<Outcome> {
    let e = cauchy_kernel(&ctx.spec)?;
    let mut rng = rng(ctx, 4);
    let mut bad = 0;
    for _ in 0..4 {
        let a = random_element(&ctx.spec, &mut rng, ctx.spec.dim_total());
        bad += usize::from(!e.right_mul(&a)?.apply(Operator::DbarLeft).is_zero());
    }
    Ok(Outcome::exact(bad).detail("4 random right factors"))
}

fn kernel_associator_sum(ctx: &Context) -> Result<Outcome> {
    let spec = &ctx.spec;
    let e = cauchy_kernel(spec)?;
    let dbars: Vec<_> = (0..=spec.m()).map(|s| e.component(s).apply(Operator::DbarLeft)).collect();
    let level = dbars.iter().map(|d| d.combined().0).max().unwrap_or(0);
    let numerators: Vec<_> = dbars.iter().map(|d| d.numerator_at(level)).collect();
    let mut rng = rng(ctx, 5);
    let mut bad = 0;
    for _ in 0..5 {
        let x: Vec<Rational> = (0..spec.dim_hyper()).map(|_| random_rational(&mut rng)).collect();
        let a = random_element(spec, &mut rng, spec.dim_total());
        let mut sum = Element::zero(spec);
        for (s, n) in numerators.iter().enumerate() {
            sum = sum.add(&Element::basis(spec, s).associator(&n.evaluate(&x)?, &a)?)?;
        }
        bad += usize::from(!sum.is_zero());
    }
    Ok(Outcome::exact(bad).detail("5 random rational points"))
}

// ---- reconstruct ---------------------------------------------------------

fn origin(ctx: &Context) -> Vec<f64> {
    vec![0.0; ctx.spec.dim_hyper()]
}

fn sphere(ctx: &Context, resolution: usize) -> Result<QuadratureRule> {
    build_quadrature(RuleKind::SphereSurface, &origin(ctx), 1.0, ctx.spec.m(), resolution, ctx.config.seed)
}

fn ball(ctx: &Context, resolution: usize) -> Result<QuadratureRule> {
    build_quadrature(RuleKind::BallVolume, &origin(ctx), 1.0, ctx.spec.m(), resolution, ctx.config.seed)
}

/// Three interior probes with `|x| <= 0.5`.
pub(crate) fn interior_probes(m: usize) -> Vec<Vec<f64>> {
    let mut a = vec![0.0; m + 1];
    a[0] = 0.2;
    let mut b = vec![0.0; m + 1];
    b[1] = 0.3;
    b[m.min(2)] += 0.1;
    let mut c = vec![0.0; m + 1];
    c[0] = -0.15;
    c[1] = 0.2;
    c[m] -= 0.25;
    vec![a, b, c]
}

fn exterior_probes(m: usize) -> Vec<Vec<f64>> {
    let mut a = vec![0.0; m + 1];
    a[1] = 2.0;
    let mut b = vec![0.0; m + 1];
    b[0] = 1.5;
    b[m] = -0.5;
    vec![a, b]
}

fn fueter_named(spec: &Arc<AlgebraSpec>, k: &[u32]) -> Result<Polynomial> {
    fueter_polynomial(spec, &MultiIndex::new(k.iter().copied()), Association::RightToLeft)
}

/// Nonconstant left-monogenic polynomials used by the numeric suites.
pub(crate) fn monogenic_samples(spec: &Arc<AlgebraSpec>) -> Result<Vec<(String, Polynomial)>> {
    let m = spec.m();
    let unit = |slots: &[(usize, u32)]| {
        let mut k = vec![0u32; m];
        for &(s, e) in slots {
            k[s] = e;
        }
        k
    };
    let mut out = Vec::new();
    if m >= 2 {
        out.push(("P(1,1)".to_string(), fueter_named(spec, &unit(&[(0, 1), (1, 1)]))?));
    }
    out.push(("P(2,0)".to_string(), fueter_named(spec, &unit(&[(0, 2)]))?));
    let ck_arg = match m {
        1 => Polynomial::coordinate(spec, 1)?.mul_coordinate_power(1, 2),
        2 => Polynomial::coordinate(spec, 1)?.mul_coordinate_power(2, 1),
        _ => Polynomial::coordinate(spec, 1)?.mul_coordinate_power(2, 1).mul_coordinate_power(3, 1),
    };
    out.push(("CK[x1 x2 x3]".to_string(), ck_extension(&ck_arg, Side::Left)?));
    Ok(out)
}

fn constant_fn(spec: &Arc<AlgebraSpec>, value: Element<f64>) -> impl SampledFunction {
    let c = value.into_coeffs();
    FnSampled::new(spec, move |_: &[f64], out: &mut [f64]| {
        out.copy_from_slice(&c);
        Ok(())
    })
}

fn relative(err: f64, exact: &Element<f64>) -> f64 {
    err / exact.norm().max(1e-3)
}

fn quadrature_calibration(ctx: &Context) -> Result<Outcome> {
    let m = ctx.spec.m();
    let sigma = crate::kernel::surface_area_sigma(m)?.value;
    let s = sphere(ctx, ctx.config.resolution)?;
    let b = ball(ctx, ctx.config.resolution)?;
    let e1 = (s.weight_sum() / sigma - 1.0).abs();
    let e2 = (b.weight_sum() / (sigma / (m as f64 + 1.0)) - 1.0).abs();
    Ok(Outcome::at_most(e1.max(e2), 1e-10).detail(format!("sphere {e1:e}, ball {e2:e}")))
}

fn cauchy_interior_error(ctx: &Context, resolution: usize) -> Result<f64> {
    let rule = sphere(ctx, resolution)?;
    let mut worst = 0.0f64;
    let mut samples = monogenic_samples(&ctx.spec)?;
    samples.push(("1".into(), Polynomial::one(&ctx.spec)));
    for (_, p) in &samples {
        let f = p.to_float();
        for x in interior_probes(ctx.spec.m()) {
            let exact = f.eval(&x)?;
            let got = cauchy_integral(&rule, &f, &x)?;
            worst = worst.max(relative(got.value.max_abs_diff(&exact), &exact));
        }
    }
    Ok(worst)
}

fn cauchy_interior(ctx: &Context) -> Result<Outcome> {
    Ok(Outcome::at_most(cauchy_interior_error(ctx, ctx.config.resolution)?, 1e-6))
}

fn cauchy_exterior(ctx: &Context) -> Result<Outcome> {
    let rule = sphere(ctx, ctx.config.resolution)?;
    let mut worst = 0.0f64;
    for (_, p) in monogenic_samples(&ctx.spec)? {
        let f = p.to_float();
        for x in exterior_probes(ctx.spec.m()) {
            worst = worst.max(cauchy_integral(&rule, &f, &x)?.value.norm());
        }
    }
    Ok(Outcome::at_most(worst, 1e-6))
}

fn pompeiu(ctx: &Context) -> Result<Outcome> {
    let spec = &ctx.spec;
    let boundary = sphere(ctx, ctx.config.resolution)?;
    let volume = ball(ctx, ctx.config.resolution)?;
    let f = Polynomial::coordinate(spec, 0)?.to_float();
    let one = constant_fn(spec, Element::one(spec));
    let mut worst = 0.0f64;
    for x in interior_probes(spec.m()) {
        let got = cauchy_pompeiu(&boundary, &volume, &f, &one, &x, ctx.config.epsilon, PrincipalValue::Recentred)?;
        worst = worst.max(got.value.max_abs_diff(&Element::real(spec, x[0])));
    }
    Ok(Outcome::at_most(worst, 1e-3).detail("f(y) = y_0"))
}

fn pompeiu_consistency(ctx: &Context) -> Result<Outcome> {
    let spec = &ctx.spec;
    let boundary = sphere(ctx, ctx.config.resolution)?;
    let volume = ball(ctx, ctx.config.resolution)?;
    let zero = constant_fn(spec, Element::zero(spec));
    let mut worst = 0.0f64;
    for (_, p) in monogenic_samples(spec)? {
        let f = p.to_float();
        let x = &interior_probes(spec.m())[1];
        let a = cauchy_pompeiu(&boundary, &volume, &f, &zero, x, ctx.config.epsilon, PrincipalValue::Recentred)?;
        let b = cauchy_integral(&boundary, &f, x)?;
        worst = worst.max(a.value.max_abs_diff(&b.value));
    }
    Ok(Outcome::at_most(worst, 1e-12))
}

fn mean_values(ctx: &Context) -> Result<Outcome> {
    let mut center = origin(ctx);
    center[0] = 0.1;
    let mut worst = 0.0f64;
    for (_, p) in monogenic_samples(&ctx.spec)? {
        let f = p.to_float();
        let got = mean_value(&f, &center, 0.2, ctx.config.resolution, ctx.config.seed)?;
        worst = worst.max(got.max_abs_diff(&f.eval(&center)?));
    }
    Ok(Outcome::at_most(worst, 1e-7))
}

/// `max(interior max |f| - boundary max |f|, 0)` over 10³ interior samples.
pub(crate) fn max_modulus_excess(
    spec: &Arc<AlgebraSpec>,
    p: &Polynomial,
    boundary: &QuadratureRule,
    seed: u64,
) -> Result<f64> {
    let f = p.to_float();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = spec.dim_hyper();
    let mut interior = 0.0f64;
    let mut found = 0;
    while found < 1000 {
        let x: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if x.iter().map(|v| v * v).sum::<f64>() < 1.0 {
            interior = interior.max(f.eval(&x)?.norm());
            found += 1;
        }
    }
    let mut edge = 0.0f64;
    for i in 0..boundary.len() {
        edge = edge.max(f.eval(boundary.node(i))?.norm());
    }
    Ok((interior - edge).max(0.0))
}

fn max_modulus(ctx: &Context) -> Result<Outcome> {
    let rule = sphere(ctx, ctx.config.resolution)?;
    let mut worst = 0.0f64;
    for (i, (_, p)) in monogenic_samples(&ctx.spec)?.iter().enumerate() {
        worst = worst.max(max_modulus_excess(&ctx.spec, p, &rule, ctx.config.seed + i as u64)?);
    }
    Ok(Outcome::at_most(worst, 1e-9).detail("1000 interior samples per polynomial"))
}

fn teodorescu_inverse(ctx: &Context) -> Result<Outcome> {
    let spec = &ctx.spec;
    let volume = ball(ctx, ctx.config.resolution)?;
    let one = constant_fn(spec, Element::one(spec));
    let eps = ctx.config.epsilon;
    let t = |x: &[f64]| teodorescu(&volume, &one, x, eps, PrincipalValue::Recentred).map(|e| e.value);
    let mut worst = 0.0f64;
    for x in interior_probes(spec.m()) {
        let d = dbar_fd(spec, &t, &x, FD_RELATIVE_STEP)?;
        worst = worst.max(d.max_abs_diff(&Element::one(spec)));
    }
    Ok(Outcome::at_most(worst, 5e-3).detail("finite-difference dbar of T[1]"))
}

fn pv_stability(ctx: &Context) -> Result<Outcome> {
    let spec = &ctx.spec;
    let volume = ball(ctx, ctx.config.resolution)?;
    let f = Polynomial::coordinate(spec, 0)?.to_float();
    let x = &interior_probes(spec.m())[0];
    let eps = ctx.config.epsilon;
    let t = |e: f64| teodorescu(&volume, &f, x, e, PrincipalValue::Recentred).map(|v| v.value);
    let (a, b, c) = (t(eps)?, t(eps / 2.0)?, t(eps / 4.0)?);
    let d1 = a.max_abs_diff(&b);
    let d2 = b.max_abs_diff(&c);
    let slope = (d1 / d2).log2();
    Ok(Outcome::at_least(slope, 0.8).detail(format!("changes {d1:e}, {d2:e} for f(y) = y_0")))
}

fn pi_operator_bounded(ctx: &Context) -> Result<Outcome> {
    let spec = &ctx.spec;
    let volume = ball(ctx, ctx.config.resolution)?;
    let one = constant_fn(spec, Element::one(spec));
    let mut worst = 0.0f64;
    for x in interior_probes(spec.m()) {
        let v = pi_operator(&volume, &one, &x, ctx.config.epsilon, PrincipalValue::Recentred)?.norm();
        if !v.is_finite() {
            return Ok(Outcome::at_most(f64::INFINITY, 10.0));
        }
        worst = worst.max(v);
    }
    Ok(Outcome::at_most(worst, 10.0).detail("|Π[1]| on interior probes"))
}

/// Random `M`-valued linear `φ` and random quadratic `f`.
pub(crate) fn gauss_data(spec: &Arc<AlgebraSpec>, seed: u64) -> Result<(Polynomial, Polynomial)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = spec.dim_hyper();
    let mut phi = Polynomial::zero(spec);
    let mut f = Polynomial::zero(spec);
    for s in 0..d {
        let a = random_element(spec, &mut rng, d);
        phi = phi.add(&Polynomial::coordinate(spec, s)?.right_mul(&a)?)?;
        let b = random_element(spec, &mut rng, spec.dim_total());
        let c = random_element(spec, &mut rng, spec.dim_total());
        let mixed = Polynomial::coordinate(spec, s)?.mul_coordinate_power((s + 1) % d, 1);
        let square = Polynomial::coordinate(spec, s)?.mul_coordinate_power(s, 1);
        f = f.add(&mixed.right_mul(&b)?)?.add(&square.right_mul(&c)?)?;
    }
    Ok((phi, f))
}

/// Polynomial integrands reach round-off at this resolution for m <= 3.
const GAUSS_RESOLUTION: usize = 20;

fn gauss_rules(ctx: &Context) -> Result<(QuadratureRule, QuadratureRule)> {
    let res = ctx.config.resolution.min(GAUSS_RESOLUTION);
    Ok((sphere(ctx, res)?, ball(ctx, res)?))
}

fn gauss_with_associator(ctx: &Context) -> Result<Outcome> {
    let (boundary, volume) = gauss_rules(ctx)?;
    let (phi, f) = gauss_data(&ctx.spec, ctx.config.seed)?;
    let r = gauss_residual(&boundary, &volume, &phi, &f, true)?;
    Ok(Outcome::at_most(r.residual, 1e-6))
}

fn gauss_ablation(ctx: &Context) -> Result<Outcome> {
    if axioms(ctx).associative {
        return Ok(Outcome::skip("associative algebra: the associator term vanishes identically"));
    }
    let (boundary, volume) = gauss_rules(ctx)?;
    let (phi, f) = gauss_data(&ctx.spec, ctx.config.seed)?;
    let with = gauss_residual(&boundary, &volume, &phi, &f, true)?.residual;
    let without = gauss_residual(&boundary, &volume, &phi, &f, false)?.residual;
    let mut o = Outcome::at_least(without, 1e-3);
    if without <= 1e3 * with {
        o.status = Status::Fail;
    }
    Ok(o.detail(format!("with {with:e}, without {without:e}")))
}

fn derivative_check(ctx: &Context) -> Result<Outcome> {
    let spec = &ctx.spec;
    if spec.m() < 2 {
        return Ok(Outcome::skip("needs m >= 2"));
    }
    let rule = sphere(ctx, ctx.config.resolution)?;
    let mut k = vec![0u32; spec.m()];
    k[0] = 1;
    k[1] = 1;
    let p = fueter_named(spec, &k)?.to_float();
    let got = derivative_formula(&rule, &p, &MultiIndex::new(k).with_leading_zero())?;
    Ok(Outcome::at_most(got.max_abs_diff(&Element::one(spec)), 1e-6).detail("d_1 d_2 P(1,1)(0) = 1"))
}

// ---- taylor --------------------------------------------------------------

/// `|x| / |y|` for the demo: `y = 3 v_1`, `x = 0.5 v_2`.
pub const TAYLOR_RATIO: f64 = 0.5 / 3.0;

fn taylor_errors(ctx: &Context, n_max: u32) -> Result<&Vec<f64>> {
    shared(&ctx.cache.taylor, || {
        let d = ctx.spec.dim_hyper();
        let mut y = vec![0.0; d];
        y[1] = 3.0;
        let mut x = vec![0.0; d];
        x[2] = 0.5;
        shifted_kernel_taylor_errors(&ctx.spec, &y, &x, n_max)
    })
}

fn taylor_ratio(ctx: &Context, n: u32) -> Result<Outcome> {
    if ctx.spec.m() < 2 {
        return Ok(Outcome::skip("needs m >= 2"));
    }
    if n > ctx.config.degree_cap {
        return Ok(Outcome::skip(format!("above degree cap {}", ctx.config.degree_cap)));
    }
    let errs = taylor_errors(ctx, ctx.config.degree_cap + 1)?;
    let (a, b) = (errs[n as usize], errs[n as usize + 1]);
    Ok(Outcome::within_factor(b / a, TAYLOR_RATIO, 2.0).detail(format!("err({n}) = {a:e}, err({}) = {b:e}", n + 1)))
}

fn taylor_degree_0(ctx: &Context) -> Result<Outcome> {
    if ctx.spec.m() < 2 {
        return Ok(Outcome::skip("needs m >= 2"));
    }
    // S_0 = f(0) = E(-y), so err(0) = |E(x - y) - E(-y)|
    let errs = taylor_errors(ctx, ctx.config.degree_cap + 1)?;
    let spec = &ctx.spec;
    let e = cauchy_kernel(spec)?;
    let d = spec.dim_hyper();
    let mut shifted = vec![0.0; d];
    shifted[1] = -3.0;
    let at_zero = e.evaluate(&shifted)?;
    shifted[2] = 0.5;
    let exact = e.evaluate(&shifted)?;
    Ok(Outcome::at_most((errs[0] - exact.max_abs_diff(&at_zero)).abs(), 1e-15))
}

fn taylor_ratio_2(ctx: &Context) -> Result<Outcome> {
    taylor_ratio(ctx, 2)
}
fn taylor_ratio_3(ctx: &Context) -> Result<Outcome> {
    taylor_ratio(ctx, 3)
}
fn taylor_ratio_4(ctx: &Context) -> Result<Outcome> {
    taylor_ratio(ctx, 4)
}
fn taylor_ratio_5(ctx: &Context) -> Result<Outcome> {
    taylor_ratio(ctx, 5)
}
fn taylor_ratio_6(ctx: &Context) -> Result<Outcome> {
    taylor_ratio(ctx, 6)
}

fn taylor_decay(ctx: &Context) -> Result<Outcome> {
    if ctx.spec.m() < 2 {
        return Ok(Outcome::skip("needs m >= 2"));
    }
    let errs = taylor_errors(ctx, ctx.config.degree_cap.max(6) + 1)?;
    let worst = (2..=6)
        .map(|n| {
            let r = errs[n + 1] / errs[n];
            (r / TAYLOR_RATIO).max(TAYLOR_RATIO / r)
        })
        .fold(1.0f64, f64::max);
    Ok(Outcome::at_most(worst, 2.0).detail("largest factor between err(N+1)/err(N) and 1/6, N = 2..6"))
}

/// Cauchy interior error at half and full resolution.
pub(super) fn convergence_table(ctx: &Context) -> Result<Vec<ConvergenceRow>> {
    let wanted = ctx.config.checks.is_empty() || ctx.config.checks.iter().any(|c| c == "cauchy-interior");
    if !wanted {
        return Ok(Vec::new());
    }
    let full = ctx.config.resolution;
    [(full / 2).max(4), full]
        .into_iter()
        .map(|resolution| {
            Ok(ConvergenceRow { check: "cauchy-interior".into(), resolution, error: cauchy_interior_error(ctx, resolution)? })
        })
        .collect()
}
