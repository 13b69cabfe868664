//! Exact polynomials on `M` with algebra-valued coefficients.
//!
//! A polynomial is a finite sum `Σ x^a · c_a` over monomials in the real
//! coordinates `x_0, …, x_m`. Monomials are real, so each coefficient is
//! stored once (on the right) and products are expanded eagerly through the
//! structure tensor.

mod ck;
mod float;
mod fueter;
mod json;
mod multi_index;
mod operators;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::scalar::Rational;

pub use ck::{ck_extension, Side};
pub use float::FloatPolynomial;
pub use fueter::{
    bracketed_product, fueter_polynomial, fueter_variable, Association, Bracketing, FueterTable,
};
pub use json::PolynomialTerm;
pub use multi_index::{distinguishable_permutations, multi_indices, multi_indices_up_to, MultiIndex};
pub use operators::{apply_operator, Operator};

#[derive(Clone, PartialEq)]
pub struct Polynomial {
    spec: Arc<AlgebraSpec>,
    terms: BTreeMap<MultiIndex, Vec<Rational>>,
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut list = f.debug_list();
        for (mono, coeff) in &self.terms {
            let c: Vec<String> = coeff.iter().map(ToString::to_string).collect();
            list.entry(&format_args!("{mono:?}·[{}]", c.join(", ")));
        }
        list.finish()
    }
}

fn add_into(target: &mut [Rational], delta: &[Rational]) {
    for (t, d) in target.iter_mut().zip(delta) {
        if !d.is_zero() {
            *t += d;
        }
    }
}

impl Polynomial {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        Self { spec: spec.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(value: &Element) -> Self {
        let mut p = Self::zero(value.spec());
        p.add_term(MultiIndex::zeros(value.spec().dim_hyper()), value.coeffs());
        p
    }

    pub fn one(spec: &Arc<AlgebraSpec>) -> Self {
        Self::constant(&Element::one(spec))
    }

    /// The real coordinate `x_s`, `0 <= s <= m`.
    pub fn coordinate(spec: &Arc<AlgebraSpec>, s: usize) -> Result<Self> {
        if s >= spec.dim_hyper() {
            return Err(Error::IndexOutOfRange { index: s, max: spec.m() });
        }
        Ok(Self::monomial(MultiIndex::unit(spec.dim_hyper(), s), &Element::one(spec)))
    }

    pub fn monomial(exponents: MultiIndex, coeff: &Element) -> Self {
        let mut p = Self::zero(coeff.spec());
        assert_eq!(exponents.len(), coeff.spec().dim_hyper(), "monomial needs m + 1 exponents");
        p.add_term(exponents, coeff.coeffs());
        p
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    /// Number of real coordinates, `m + 1`.
    pub fn nvars(&self) -> usize {
        self.spec.dim_hyper()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &[Rational])> {
        self.terms.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn coefficient(&self, exponents: &MultiIndex) -> Element {
        match self.terms.get(exponents) {
            Some(c) => Element::from_coeffs_unchecked(&self.spec, c.clone()),
            None => Element::zero(&self.spec),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::total).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(MultiIndex::total);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    /// Every coefficient lies in `span(v_0, …, v_m)`.
    pub fn is_m_valued(&self) -> bool {
        let h = self.spec.dim_hyper();
        self.terms.values().all(|c| c[h..].iter().all(Zero::is_zero))
    }

    pub fn depends_on_x0(&self) -> bool {
        self.terms.keys().any(|k| k.get(0) > 0)
    }

    pub(crate) fn add_term(&mut self, exponents: MultiIndex, coeff: &[Rational]) {
        if coeff.iter().all(Zero::is_zero) {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.to_vec());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                add_into(o.get_mut(), coeff);
                if o.get().iter().all(Zero::is_zero) {
                    o.remove();
                }
            }
        }
    }

    fn map_coeffs(&self, f: impl Fn(&[Rational]) -> Vec<Rational>) -> Self {
        let mut out = Self::zero(&self.spec);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.iter().map(|x| x * r).collect())
    }

    /// Product with the coefficients multiplied in the order `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        let mut out = Self::zero(&self.spec);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_term(ka.add(kb), &self.spec.mul_coeffs(ca, cb));
            }
        }
        Ok(out)
    }

    /// `a · p`.
    pub fn left_mul(&self, a: &Element) -> Result<Self> {
        self.spec.check_same(a.spec())?;
        Ok(self.map_coeffs(|c| self.spec.mul_coeffs(a.coeffs(), c)))
    }

    /// `p · a`.
    pub fn right_mul(&self, a: &Element) -> Result<Self> {
        self.spec.check_same(a.spec())?;
        Ok(self.map_coeffs(|c| self.spec.mul_coeffs(c, a.coeffs())))
    }

    pub(crate) fn left_mul_basis(&self, s: usize) -> Self {
        self.map_coeffs(|c| self.spec.basis_left_mul(s, c))
    }

    pub(crate) fn right_mul_basis(&self, s: usize) -> Self {
        self.map_coeffs(|c| self.spec.basis_right_mul(c, s))
    }

    /// Multiplies by the real monomial `x_var^power`.
    pub fn mul_coordinate_power(&self, var: usize, power: u32) -> Self {
        let mut out = Self::zero(&self.spec);
        for (k, c) in &self.terms {
            let mut k = k.clone();
            k.set(var, k.get(var) + power);
            out.terms.insert(k, c.clone());
        }
        out
    }

    /// Coefficient component `t` as a real-valued polynomial (times `v_0`).
    pub fn component(&self, t: usize) -> Self {
        self.map_coeffs(|c| {
            let mut v = vec![Rational::zero(); c.len()];
            v[0] = c[t].clone();
            v
        })
    }

    /// `∂p / ∂x_var`.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.spec);
        for (k, c) in &self.terms {
            let e = k.get(var);
            if e == 0 {
                continue;
            }
            let mut dk = k.clone();
            dk.set(var, e - 1);
            let factor = Rational::from_integer(BigInt::from(e));
            let dc: Vec<Rational> = c.iter().map(|x| x * &factor).collect();
            out.add_term(dk, &dc);
        }
        out
    }

    /// `∂_k p` for `k` over all m + 1 coordinates.
    pub fn derivative(&self, k: &MultiIndex) -> Result<Self> {
        if k.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: k.len() });
        }
        let mut out = self.clone();
        for (var, &order) in k.as_slice().iter().enumerate() {
            for _ in 0..order {
                out = out.partial(var);
            }
        }
        Ok(out)
    }

    /// Exact value at the point `Σ x_s v_s`.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Element> {
        if x.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: x.len() });
        }
        let mut acc = vec![Rational::zero(); self.spec.dim_total()];
        for (k, c) in &self.terms {
            let mono = k
                .as_slice()
                .iter()
                .zip(x)
                .fold(Rational::one(), |p, (&e, xi)| p * num_traits::pow(xi.clone(), e as usize));
            if mono.is_zero() {
                continue;
            }
            for (a, ci) in acc.iter_mut().zip(c) {
                *a += &mono * ci;
            }
        }
        Ok(Element::from_coeffs_unchecked(&self.spec, acc))
    }

    /// `x ↦ p(x - y)`.
    pub fn translate(&self, y: &[Rational]) -> Result<Self> {
        if y.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: y.len() });
        }
        let mut out = Self::zero(&self.spec);
        let n = self.nvars();
        for (k, c) in &self.terms {
            // expand Π_s (x_s - y_s)^{k_s} as a real polynomial
            let mut expansion: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
            expansion.insert(MultiIndex::zeros(n), Rational::one());
            for (s, (&e, ys)) in k.as_slice().iter().zip(y).enumerate() {
                if e == 0 {
                    continue;
                }
                let mut next = BTreeMap::new();
                for (mono, coef) in &expansion {
                    for j in 0..=e {
                        let binom = crate::scalar::factorial(e)
                            / (crate::scalar::factorial(j) * crate::scalar::factorial(e - j));
                        let shift = num_traits::pow(-ys.clone(), (e - j) as usize);
                        let term = coef * Rational::from_integer(binom) * shift;
                        if term.is_zero() {
                            continue;
                        }
                        let mut m2 = mono.clone();
                        m2.set(s, m2.get(s) + j);
                        *next.entry(m2).or_insert_with(Rational::zero) += term;
                    }
                }
                expansion = next;
            }
            for (mono, coef) in expansion {
                let scaled: Vec<Rational> = c.iter().map(|x| x * &coef).collect();
                out.add_term(mono, &scaled);
            }
        }
        Ok(out)
    }

    /// Terms of total degree exactly `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        let mut out = Self::zero(&self.spec);
        for (k, c) in self.terms.iter().filter(|(k, _)| k.total() == degree) {
            out.terms.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn to_float(&self) -> FloatPolynomial {
        FloatPolynomial::from_exact(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraKind};
    use crate::scalar::{int, rat};

    fn quaternion() -> Arc<AlgebraSpec> {
        build_algebra(&AlgebraKind::Quaternion).unwrap()
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let h = quaternion();
        let x1 = Polynomial::coordinate(&h, 1).unwrap();
        assert!(x1.sub(&x1).unwrap().is_zero());
        assert_eq!(x1.sub(&x1).unwrap().len(), 0);
    }

    #[test]
    fn partials_and_derivatives() {
        let h = quaternion();
        let x0 = Polynomial::coordinate(&h, 0).unwrap();
        let x1 = Polynomial::coordinate(&h, 1).unwrap();
        let p = x0.mul(&x1).unwrap().mul(&x1).unwrap(); // x0 x1^2
        assert_eq!(p.partial(1), x0.mul(&x1).unwrap().scale(&int(2)));
        let d = p.derivative(&MultiIndex::new([1, 2, 0, 0])).unwrap();
        assert_eq!(d, Polynomial::one(&h).scale(&int(2)));
        assert!(p.derivative(&MultiIndex::new([2, 2, 0, 0])).unwrap().is_zero());
    }

    #[test]
    fn translation_matches_pointwise_shift() {
        let h = quaternion();
        let i = Element::basis(&h, 1);
        let p = Polynomial::coordinate(&h, 0)
            .unwrap()
            .mul(&Polynomial::coordinate(&h, 2).unwrap())
            .unwrap()
            .right_mul(&i)
            .unwrap();
        let y = [rat(1, 2), int(0), int(-3), int(1)];
        let q = p.translate(&y).unwrap();
        let x = [int(2), int(1), rat(1, 3), int(0)];
        let shifted: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
        assert_eq!(q.evaluate(&x).unwrap(), p.evaluate(&shifted).unwrap());
    }
}
