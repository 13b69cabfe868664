use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{build_algebra, random_element, AlgebraKind};
use crate::kernel::{cauchy_kernel, differentiate_kernel};
use crate::polynomial::{ck_extension, fueter_polynomial, Association, FueterTable, MultiIndex, Polynomial, Side};
use crate::scalar::int;

fn octonion(m: usize) -> Arc<AlgebraSpec> {
    build_algebra(&AlgebraKind::Octonion { m }).unwrap()
}

fn sphere(m: usize, r: f64, res: usize) -> QuadratureRule {
    build_quadrature(RuleKind::SphereSurface, &vec![0.0; m + 1], r, m, res, 42).unwrap()
}

fn ball(m: usize, r: f64, res: usize) -> QuadratureRule {
    build_quadrature(RuleKind::BallVolume, &vec![0.0; m + 1], r, m, res, 42).unwrap()
}

fn fueter(spec: &Arc<AlgebraSpec>, k: &[u32]) -> Polynomial {
    fueter_polynomial(spec, &MultiIndex::new(k.iter().copied()), Association::RightToLeft).unwrap()
}

fn constant(spec: &Arc<AlgebraSpec>, c: &Element<f64>) -> impl SampledFunction {
    let c = c.coeffs().to_vec();
    FnSampled::new(spec, move |_: &[f64], out: &mut [f64]| {
        out.copy_from_slice(&c);
        Ok(())
    })
}

#[test]
fn sphere_weights_sum_to_area() {
    for m in 1..=3 {
        for r in [1.0, 0.7] {
            let rule = sphere(m, r, 32);
            let exact = crate::kernel::surface_area_sigma(m).unwrap().value * f64::powi(r, m as i32);
            assert!((rule.weight_sum() / exact - 1.0).abs() < 1e-10, "m = {m}");
            for i in 0..rule.len() {
                let d: f64 = rule.node(i).iter().map(|v| v * v).sum::<f64>().sqrt();
                assert!((d / r - 1.0).abs() < 1e-12);
                let n: f64 = rule.normal(i).unwrap().iter().map(|v| v * v).sum();
                assert!((n - 1.0).abs() < 1e-12);
            }
        }
    }
    let qmc = sphere(5, 1.0, 8);
    assert!((qmc.weight_sum() - PI.powi(3)).abs() < 1e-10);
    assert_eq!(qmc.len(), 512);
}

#[test]
fn ball_weights_sum_to_volume() {
    let rule = ball(2, 2.0, 32);
    assert!((rule.weight_sum() - 4.0 * PI / 3.0 * 8.0).abs() < 1e-8);
    let rule = ball(3, 1.0, 16);
    assert!((rule.weight_sum() - PI * PI / 2.0).abs() < 1e-10);
}

#[test]
fn rule_validation() {
    assert!(build_quadrature(RuleKind::SphereSurface, &[0.0; 3], 1.0, 2, 3, 0).is_err());
    assert!(build_quadrature(RuleKind::SphereSurface, &[0.0; 3], 0.0, 2, 8, 0).is_err());
    assert!(build_quadrature(RuleKind::SphereSurface, &[0.0; 2], 1.0, 2, 8, 0).is_err());
}

#[test]
fn odd_and_constant_integrands() {
    let spec = octonion(2);
    let rule = sphere(2, 1.0, 32);
    let y1 = Polynomial::coordinate(&spec, 1).unwrap().to_float();
    assert!(integrate(&rule, &y1).unwrap().norm() < 1e-12);
    let c = Element::from_coeffs(&spec, vec![1.0, -2.0, 0.5, 0.0, 3.0, 0.0, 0.0, 1.0]).unwrap();
    let total = integrate(&rule, &constant(&spec, &c)).unwrap();
    assert!(total.max_abs_diff(&c.scale(&(4.0 * PI))) < 1e-9);
}

#[test]
fn integral_is_bounded_by_integral_of_modulus_and_additive() {
    let spec = octonion(2);
    let rule = sphere(2, 1.0, 16);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let a: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = FnSampled::new(&spec, move |y: &[f64], out: &mut [f64]| {
            for (i, o) in out.iter_mut().enumerate() {
                *o = (a[i] * y[i % 3] + y[(i + 1) % 3]).sin();
            }
            Ok(())
        });
        let whole = integrate(&rule, &f).unwrap();
        let modulus = FnSampled::new(&spec, |y: &[f64], out: &mut [f64]| {
            out[0] = f.evaluate(y)?.norm();
            Ok(())
        });
        assert!(whole.norm() <= integrate(&rule, &modulus).unwrap().coeffs()[0] + 1e-12);
        let (upper, lower) = rule.split(|y| y[0] > 0.0);
        let parts = integrate(&upper, &f).unwrap().add(&integrate(&lower, &f).unwrap()).unwrap();
        assert!(parts.max_abs_diff(&whole) < 1e-12);
    }
}

#[test]
fn cauchy_reproduces_constant_and_fueter_polynomial() {
    let spec = octonion(2);
    let rule = sphere(2, 1.0, 32);
    let one = constant(&spec, &Element::one(&spec));
    let at0 = cauchy_integral(&rule, &one, &[0.0; 3]).unwrap();
    assert!(at0.value.max_abs_diff(&Element::one(&spec)) < 1e-8);
    assert!(at0.reliable);

    let p = fueter(&spec, &[1, 1]);
    let x = [0.0, 0.3, 0.1];
    let exact = p.evaluate(&[int(0), crate::scalar::rat(3, 10), crate::scalar::rat(1, 10)]).unwrap().to_f64();
    let got = cauchy_integral(&rule, &p.to_float(), &x).unwrap();
    assert!(got.value.max_abs_diff(&exact) < 1e-6);
    assert!(got.error_estimate < 1e-6);

    let outside = cauchy_integral(&rule, &p.to_float(), &[0.0, 2.0, 0.0]).unwrap();
    assert!(outside.value.norm() < 1e-6);
    let near = cauchy_integral(&rule, &p.to_float(), &[0.0, 0.95, 0.0]).unwrap();
    assert!(!near.reliable);
    assert!(cauchy_integral(&rule, &p.to_float(), &[0.0, 1.0, 0.0]).is_err());
}

#[test]
fn cauchy_transform_is_monogenic_off_the_sphere() {
    let spec = octonion(2);
    let rule = sphere(2, 1.0, 32);
    let f = FnSampled::new(&spec, |y: &[f64], out: &mut [f64]| {
        out[0] = y[1].sin();
        out[3] = y[0] * y[0] - y[2];
        out[6] = (y[1] * y[2]).cos();
        Ok(())
    });
    let c = |x: &[f64]| cauchy_transform(&rule, &f, x).map(|e| e.value);
    let d = dbar_fd(&spec, &c, &[0.1, 0.2, -0.1], 1e-4).unwrap();
    assert!(d.norm() < 5e-3, "{d:?}");
    // |C[f](x)| ~ |x|^{-m} far away
    let far = c(&[0.0, 10.0, 0.0]).unwrap().norm();
    let farther = c(&[0.0, 20.0, 0.0]).unwrap().norm();
    assert!((far / farther / 4.0 - 1.0).abs() < 0.15, "{}", far / farther);
}

#[test]
fn pompeiu_reconstructs_non_monogenic_data() {
    let spec = octonion(2);
    let boundary = sphere(2, 1.0, 32);
    let volume = ball(2, 1.0, 32);
    let y0 = Polynomial::coordinate(&spec, 0).unwrap();
    let one = constant(&spec, &Element::one(&spec));
    let got = cauchy_pompeiu(&boundary, &volume, &y0.to_float(), &one, &[0.2, 0.0, 0.0], 0.05, PrincipalValue::Recentred)
        .unwrap();
    assert!((got.value.coeffs()[0] - 0.2).abs() < 1e-3, "{:?}", got.value);
    assert!(got.value.max_abs_diff(&Element::real(&spec, 0.2)) < 1e-3);

    // f = y_1 v_2, ∂̄f = v_1 v_2
    let f = Polynomial::coordinate(&spec, 1).unwrap().right_mul(&Element::basis(&spec, 2)).unwrap();
    let df = apply_operator_float(&f);
    let got = cauchy_pompeiu(&boundary, &volume, &f.to_float(), &df, &[0.0, 0.1, 0.0], 0.05, PrincipalValue::Recentred)
        .unwrap();
    let exact = Element::basis(&spec, 2).to_f64().scale(&0.1);
    assert!(got.value.max_abs_diff(&exact) < 1e-3, "{:?}", got.value);

    // zero volume data reduces to the Cauchy integral
    let p = fueter(&spec, &[2, 0]).to_float();
    let zero = constant(&spec, &Element::zero(&spec));
    let x = [0.1, 0.2, 0.3];
    let a = cauchy_pompeiu(&boundary, &volume, &p, &zero, &x, 0.05, PrincipalValue::Recentred).unwrap();
    let b = cauchy_integral(&boundary, &p, &x).unwrap();
    assert!(a.value.max_abs_diff(&b.value) < 1e-12);
    assert!(cauchy_pompeiu(&boundary, &volume, &p, &zero, &x, 0.4, PrincipalValue::Recentred).is_err());
}

fn apply_operator_float(f: &Polynomial) -> crate::polynomial::FloatPolynomial {
    crate::polynomial::apply_operator(crate::polynomial::Operator::DbarLeft, f).to_float()
}

#[test]
fn teodorescu_is_a_right_inverse() {
    let spec = build_algebra(&AlgebraKind::Clifford { m: 2 }).unwrap();
    let volume = ball(2, 1.0, 24);
    let one = constant(&spec, &Element::one(&spec));
    let t = |x: &[f64]| teodorescu(&volume, &one, x, 0.05, PrincipalValue::Recentred).map(|e| e.value);
    for x in [[0.0, 0.2, 0.0], [0.1, -0.3, 0.2], [-0.25, 0.0, 0.1]] {
        let d = dbar_fd(&spec, &t, &x, FD_RELATIVE_STEP).unwrap();
        assert!(d.max_abs_diff(&Element::one(&spec)) < 5e-3, "{d:?}");
    }
    let zero = constant(&spec, &Element::zero(&spec));
    assert!(t(&[0.0, 0.2, 0.0]).is_ok());
    assert!(teodorescu(&volume, &zero, &[0.0, 0.2, 0.0], 0.05, PrincipalValue::Recentred).unwrap().value.is_zero());
    let pi = pi_operator(&volume, &one, &[0.0, 0.2, 0.0], 0.05, PrincipalValue::Recentred).unwrap();
    assert!(pi.norm().is_finite() && pi.norm() < 10.0);
}

#[test]
fn teodorescu_is_right_linear_in_associative_algebras() {
    let spec = build_algebra(&AlgebraKind::Quaternion).unwrap();
    let volume = ball(3, 1.0, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_element(&spec, &mut rng, 4).to_f64();
    let f = Polynomial::coordinate(&spec, 2).unwrap().to_float();
    let fa = Polynomial::coordinate(&spec, 2).unwrap().right_mul(&random_element(&spec, &mut ChaCha8Rng::seed_from_u64(5), 4)).unwrap().to_float();
    let x = [0.1, 0.0, 0.2, 0.0];
    let lhs = teodorescu(&volume, &fa, &x, 0.05, PrincipalValue::Recentred).unwrap().value;
    let rhs = teodorescu(&volume, &f, &x, 0.05, PrincipalValue::Recentred).unwrap().value.mul(&a).unwrap();
    assert!(lhs.max_abs_diff(&rhs) < 1e-12);
}

#[test]
fn derivative_formula_recovers_partials() {
    let spec = octonion(2);
    let rule = sphere(2, 1.0, 32);
    let p11 = fueter(&spec, &[1, 1]).to_float();
    let d = derivative_formula(&rule, &p11, &MultiIndex::new([0, 1, 1])).unwrap();
    assert!(d.max_abs_diff(&Element::one(&spec).to_f64()) < 1e-6);
    let p20 = fueter(&spec, &[2, 0]).to_float();
    let d = derivative_formula(&rule, &p20, &MultiIndex::new([0, 0, 1])).unwrap();
    assert!(d.norm() < 1e-8);
    let x = [0.0; 3];
    let d = derivative_formula(&rule, &p20, &MultiIndex::zeros(3)).unwrap();
    assert!(d.max_abs_diff(&p20.eval(&x).unwrap()) < 1e-10);
}

#[test]
fn mean_values() {
    let spec = octonion(3);
    let p = fueter(&spec, &[1, 1, 0]).to_float();
    assert!(mean_value(&p, &[0.0; 4], 1.0, 16, 0).unwrap().norm() < 1e-10);
    let c = Element::basis(&spec, 5).to_f64();
    assert!(mean_value(&constant(&spec, &c), &[0.0; 4], 0.5, 16, 0).unwrap().max_abs_diff(&c) < 1e-12);
    let x1sq = Polynomial::coordinate(&spec, 1).unwrap().mul_coordinate_power(1, 1);
    let f = ck_extension(&x1sq, Side::Left).unwrap();
    let center = [0.1, 0.0, 0.0, 0.0];
    let exact = f.to_float().eval(&center).unwrap();
    let got = mean_value(&f.to_float(), &center, 0.2, 16, 0).unwrap();
    assert!(got.max_abs_diff(&exact) < 1e-7);
}

#[test]
fn gauss_lemma_needs_the_associator_term() {
    let spec = octonion(3);
    let boundary = sphere(3, 1.0, 12);
    let volume = ball(3, 1.0, 12);
    let z1 = crate::polynomial::fueter_variable(&spec, 1).unwrap();
    let c = Polynomial::constant(&random_element(&spec, &mut ChaCha8Rng::seed_from_u64(1), 8));
    assert!(gauss_residual(&boundary, &volume, &z1, &c, true).unwrap().residual < 1e-8);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    // random M-valued linear map φ(x) = Σ_s x_s a_s with a_s ∈ M
    let mut phi = Polynomial::zero(&spec);
    for s in 0..=3 {
        let a = random_element(&spec, &mut rng, 4);
        phi = phi.add(&Polynomial::coordinate(&spec, s).unwrap().right_mul(&a).unwrap()).unwrap();
    }
    let mut f = Polynomial::zero(&spec);
    for s in 0..=3 {
        let a = random_element(&spec, &mut rng, 8);
        let b = random_element(&spec, &mut rng, 8);
        let mixed = Polynomial::coordinate(&spec, s).unwrap().mul_coordinate_power((s + 1) % 4, 1);
        let square = Polynomial::coordinate(&spec, s).unwrap().mul_coordinate_power(s, 1);
        f = f.add(&mixed.right_mul(&a).unwrap()).unwrap().add(&square.right_mul(&b).unwrap()).unwrap();
    }
    let with = gauss_residual(&boundary, &volume, &phi, &f, true).unwrap();
    let without = gauss_residual(&boundary, &volume, &phi, &f, false).unwrap();
    assert!(with.residual < 1e-6, "{}", with.residual);
    assert!(without.residual > 1e3 * with.residual.max(1e-12), "{}", without.residual);

    let h = build_algebra(&AlgebraKind::Quaternion).unwrap();
    let z2 = crate::polynomial::fueter_variable(&h, 2).unwrap();
    let g = Polynomial::coordinate(&h, 1).unwrap().mul_coordinate_power(3, 1).right_mul(&Element::basis(&h, 2)).unwrap();
    let a = gauss_residual(&boundary, &volume, &z2, &g, true).unwrap();
    let b = gauss_residual(&boundary, &volume, &z2, &g, false).unwrap();
    assert!(a.residual < 1e-8 && (a.residual - b.residual).abs() < 1e-14);
}

#[test]
fn taylor_partial_sums() {
    let spec = octonion(2);
    let table = FueterTable::build(&spec, 7).unwrap();
    // f = P_(1,1) + P_(2,0)·v_3: derivatives at 0 are exact
    let f = fueter(&spec, &[1, 1]).add(&fueter(&spec, &[2, 0]).right_mul(&Element::basis(&spec, 3)).unwrap()).unwrap();
    let mut derivs = BTreeMap::new();
    for k in crate::polynomial::multi_indices_up_to(2, 2) {
        let d = f.derivative(&k.with_leading_zero()).unwrap().evaluate(&[int(0), int(0), int(0)]).unwrap();
        derivs.insert(k, d.to_f64());
    }
    let x = [0.1, -0.2, 0.3];
    let exact = f.to_float().eval(&x).unwrap();
    assert!(taylor_evaluate(&table, &derivs, &x, 2).unwrap().max_abs_diff(&exact) < 1e-14);
    let at0 = taylor_evaluate(&table, &derivs, &x, 0).unwrap();
    assert!(at0.is_zero());
    assert!(matches!(taylor_evaluate(&table, &derivs, &x, 3), Err(Error::MissingDerivative(_))));
    assert!(matches!(taylor_evaluate(&table, &derivs, &x, 8), Err(Error::DegreeTooLarge { .. })));
}

#[test]
fn taylor_error_of_shifted_kernel_decays_geometrically() {
    let spec = octonion(2);
    let n_max = 7;
    let table = FueterTable::build(&spec, n_max).unwrap();
    let e = cauchy_kernel(&spec).unwrap();
    let minus_y = [int(0), int(-3), int(0)];
    let mut derivs = BTreeMap::new();
    for k in crate::polynomial::multi_indices_up_to(2, n_max) {
        // ∂_k [E(x - y)] at x = 0 is (∂_k E)(-y) = (-1)^{|k|} Q_k(-y)
        let q = differentiate_kernel(&e, &k.with_leading_zero()).unwrap();
        let mut v = q.evaluate_exact(&minus_y).unwrap().unwrap().to_f64();
        v = v.scale(&PI.powi(q.pi_power()));
        if k.total() % 2 == 1 {
            v = v.neg();
        }
        derivs.insert(k, v);
    }
    let x = [0.0, 0.0, 0.5];
    let f = e.evaluate(&[0.0, -3.0, 0.5]).unwrap();
    let errs: Vec<f64> = (0..=n_max)
        .map(|n| taylor_evaluate(&table, &derivs, &x, n).unwrap().max_abs_diff(&f))
        .collect();
    for n in 2..=6 {
        let ratio = errs[n + 1] / errs[n];
        assert!(ratio > 1.0 / 12.0 && ratio < 1.0 / 3.0, "N = {n}: {ratio}");
    }
}

