use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{build_algebra, random_element, random_rational, AlgebraKind};
use crate::polynomial::{apply_operator, Operator};
use crate::scalar::{int, rat};

fn spec_for(m: usize) -> Arc<AlgebraSpec> {
    let kind = match m {
        1 => AlgebraKind::Complex,
        7 => AlgebraKind::Octonion { m: 7 },
        m => AlgebraKind::Clifford { m },
    };
    build_algebra(&kind).unwrap()
}

fn point(spec: &Arc<AlgebraSpec>, x: &[i64]) -> Vec<Rational> {
    assert_eq!(x.len(), spec.dim_hyper());
    x.iter().map(|&v| int(v)).collect()
}

#[test]
fn sigma_closed_forms() {
    let expected = [(1, rat(2, 1), 1), (2, rat(4, 1), 1), (3, rat(2, 1), 2), (4, rat(8, 3), 2), (5, rat(1, 1), 3)];
    for (m, r, p) in expected {
        let s = surface_area_sigma(m).unwrap();
        assert_eq!(s.rational(), &r, "m = {m}");
        assert_eq!(s.pi_power(), p);
    }
    assert!((surface_area_sigma(2).unwrap().value - 12.566370614359172).abs() < 1e-12);
    assert!(surface_area_sigma(0).is_err());
}

#[test]
fn kernel_at_one_is_inverse_sigma() {
    for m in [1, 2, 3, 7] {
        let spec = spec_for(m);
        let e = cauchy_kernel(&spec).unwrap();
        let mut x = vec![Rational::zero(); m + 1];
        x[0] = int(1);
        let v = e.evaluate_exact(&x).unwrap().unwrap();
        let sigma = surface_area_sigma(m).unwrap();
        assert_eq!(v, Element::real(&spec, Rational::one() / sigma.rational()));
        assert_eq!(e.pi_power(), -(sigma.pi_power() as i32));
    }
}

#[test]
fn float_values() {
    let spec = spec_for(2);
    let e = cauchy_kernel(&spec).unwrap();
    let v = e.evaluate(&[0.0, 1.0, 0.0]).unwrap();
    let expected = Element::basis(&spec, 1).to_f64().scale(&(-1.0 / (4.0 * std::f64::consts::PI)));
    assert!(v.max_abs_diff(&expected) < 1e-15);
    let v = e.evaluate(&[2.0, 0.0, 0.0]).unwrap();
    assert!((v.coeffs()[0] - 1.0 / (16.0 * std::f64::consts::PI)).abs() < 1e-15);
    assert!(matches!(e.evaluate(&[0.0, 0.0, 0.0]), Err(Error::SingularPoint)));
}

#[test]
fn kernel_is_two_sided_monogenic_and_harmonic() {
    for m in [1, 2, 3, 7] {
        let e = cauchy_kernel(&spec_for(m)).unwrap();
        assert!(e.apply(Operator::DbarLeft).is_zero(), "m = {m}");
        assert!(e.apply(Operator::DbarRight).is_zero(), "m = {m}");
        assert!(e.apply(Operator::Laplacian).is_zero(), "m = {m}");
        assert!(!e.apply(Operator::DconjLeft).is_zero());
    }
}

#[test]
fn mixed_partials_of_components_agree_with_closed_form() {
    for m in [1, 2, 3] {
        let spec = spec_for(m);
        let e = cauchy_kernel(&spec).unwrap();
        let sigma = surface_area_sigma(m).unwrap();
        let inv = Rational::one() / sigma.rational();
        for s in 1..=m {
            for t in 1..=m {
                let ts = e.component(s).partial(t);
                let st = e.component(t).partial(s);
                assert!(ts.equivalent(&st).unwrap());
                // E_s = -x_s / (σ |x|^{m+1})
                let mut closed = BTreeMap::new();
                let xt_xs = Polynomial::one(&spec).mul_coordinate_power(t, 1).mul_coordinate_power(s, 1);
                closed.insert(1, xt_xs.scale(&(int(m as i64 + 1) * &inv)));
                if s == t {
                    closed.insert(0, Polynomial::one(&spec).scale(&-inv.clone()));
                }
                let closed = RadialRationalFunction::from_parts(spec.clone(), m, e.pi_power(), closed);
                assert!(ts.equivalent(&closed).unwrap(), "m = {m}, s = {s}, t = {t}");
            }
        }
    }
}

#[test]
fn right_multiple_of_kernel_is_left_monogenic() {
    let spec = spec_for(7);
    let e = cauchy_kernel(&spec).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..4 {
        let a = random_element(&spec, &mut rng, 8);
        assert!(e.right_mul(&a).unwrap().apply(Operator::DbarLeft).is_zero());
    }
}

#[test]
fn associator_sum_vanishes() {
    let spec = spec_for(7);
    let e = cauchy_kernel(&spec).unwrap();
    let dbars: Vec<_> = (0..=7).map(|s| e.component(s).apply(Operator::DbarLeft)).collect();
    let level = dbars.iter().map(|d| d.combined().0).max().unwrap();
    let numerators: Vec<_> = dbars.iter().map(|d| d.numerator_at(level)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let x: Vec<Rational> = (0..8).map(|_| random_rational(&mut rng)).collect();
        let a = random_element(&spec, &mut rng, 8);
        let mut sum = Element::zero(&spec);
        for (s, n) in numerators.iter().enumerate() {
            let val = n.evaluate(&x).unwrap();
            sum = sum.add(&Element::basis(&spec, s).associator(&val, &a).unwrap()).unwrap();
        }
        assert!(sum.is_zero());
    }
    // the individual summands are not all zero
    let x: Vec<Rational> = (1..=8).map(int).collect();
    let a = Element::basis(&spec, 3);
    let nonzero = numerators
        .iter()
        .enumerate()
        .any(|(s, n)| !Element::basis(&spec, s).associator(&n.evaluate(&x).unwrap(), &a).unwrap().is_zero());
    assert!(nonzero);
}

#[test]
fn first_derivative_matches_hand_oracle() {
    let spec = spec_for(2);
    let e = cauchy_kernel(&spec).unwrap();
    let q = differentiate_kernel(&e, &MultiIndex::new([0, 1, 0])).unwrap();
    // Q = (v_1 |x|^{-3} + 3 x_1 x^c |x|^{-5}) / σ_2
    let inv = Rational::one() / surface_area_sigma(2).unwrap().rational();
    let v1 = Polynomial::constant(&Element::basis(&spec, 1)).scale(&inv);
    let xc = e.terms().next().unwrap().1.clone();
    let oracle = RadialRationalFunction::from_parts(
        spec.clone(),
        2,
        e.pi_power(),
        BTreeMap::from([(0, v1), (1, xc.mul_coordinate_power(1, 1).scale(&int(3)))]),
    );
    assert!(q.equivalent(&oracle).unwrap());
    assert_eq!(q.len(), 2);
    assert!(differentiate_kernel(&e, &MultiIndex::zeros(3)).unwrap().equivalent(&e).unwrap());
}

#[test]
fn kernel_derivatives_stay_monogenic() {
    let spec = spec_for(3);
    let table = KernelTable::build(&spec, 2).unwrap();
    for k in multi_indices_up_to(4, 2) {
        let q = table.get(&k).unwrap();
        assert!(q.apply(Operator::DbarLeft).is_zero(), "{k:?}");
        let direct = differentiate_kernel(&cauchy_kernel(&spec).unwrap(), &k).unwrap();
        assert!(q.equivalent(&direct).unwrap());
    }
    assert!(matches!(table.get(&MultiIndex::new([3, 0, 0, 0])), Err(Error::MissingDerivative(_))));
}

#[test]
fn derivatives_are_homogeneous() {
    let spec = spec_for(3);
    let table = KernelTable::build(&spec, 3).unwrap();
    let x = point(&spec, &[1, -2, 3, 1]);
    let t = rat(3, 2);
    let tx: Vec<Rational> = x.iter().map(|v| v * &t).collect();
    for k in multi_indices_up_to(4, 3) {
        let q = table.get(&k).unwrap();
        let at_x = q.evaluate_exact(&x).unwrap().unwrap();
        let at_tx = q.evaluate_exact(&tx).unwrap().unwrap();
        let factor = num_traits::pow(Rational::one() / &t, 3 + k.total() as usize);
        assert_eq!(at_tx, at_x.scale(&factor));
    }
}

#[test]
fn exact_evaluation_needs_rational_radius_for_odd_powers() {
    let spec = spec_for(2);
    let e = cauchy_kernel(&spec).unwrap();
    assert!(e.evaluate_exact(&point(&spec, &[1, 1, 0])).unwrap().is_none());
    let v = e.evaluate_exact(&point(&spec, &[0, 3, 4])).unwrap().unwrap();
    let f = e.evaluate(&[0.0, 3.0, 4.0]).unwrap();
    let scaled = v.to_f64().scale(&std::f64::consts::PI.powi(-1));
    assert!(scaled.max_abs_diff(&f) < 1e-15);
}

#[test]
fn radial_json_round_trip() {
    let spec = spec_for(2);
    let q = differentiate_kernel(&cauchy_kernel(&spec).unwrap(), &MultiIndex::new([1, 0, 1])).unwrap();
    let text = q.to_json().unwrap();
    let back = RadialRationalFunction::from_json(&spec, &text).unwrap();
    assert_eq!(back.to_json().unwrap(), text);
    assert!(back.equivalent(&q).unwrap());
    assert!(RadialRationalFunction::from_json(&spec_for(3), &text).is_err());
}

#[test]
fn pi_power_mismatch_is_an_error() {
    let spec = spec_for(2);
    let a = RadialRationalFunction::from_polynomial(Polynomial::one(&spec), 0, -1);
    let b = RadialRationalFunction::from_polynomial(Polynomial::one(&spec), 0, 0);
    assert!(matches!(a.add(&b), Err(Error::PiPowerMismatch(-1, 0))));
    assert!(RadialRationalFunction::zero(&spec, 0).add(&a).is_ok());
}

#[test]
fn polynomial_operator_agrees_on_numerator_free_terms() {
    // a pure polynomial numerator times |x|^{-(m+1)} with p = |x|^{m+1}
    // is the constant function, for m odd
    let spec = spec_for(3);
    let r2 = super::radial::radius_squared(&spec);
    let p = r2.mul(&r2).unwrap();
    let f = RadialRationalFunction::from_polynomial(p, 0, 0);
    assert!(f.apply(Operator::DbarLeft).is_zero());
    assert!(apply_operator(Operator::DbarLeft, &Polynomial::one(&spec)).is_zero());
}
