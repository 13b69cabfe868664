use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::AlgebraSpec;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A coefficient vector over the fitted basis, tied to its algebra.
#[derive(Clone)]
pub struct Element<S: Scalar = Rational> {
    spec: Arc<AlgebraSpec>,
    coeffs: Vec<S>,
}

impl<S: Scalar> fmt::Debug for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.spec.name(), self.coeffs)
    }
}

impl<S: Scalar> PartialEq for Element<S> {
    fn eq(&self, other: &Self) -> bool {
        self.spec.same_as(&other.spec) && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> Element<S> {
    pub fn from_coeffs(spec: &Arc<AlgebraSpec>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != spec.dim_total() {
            return Err(Error::DimensionMismatch { expected: spec.dim_total(), got: coeffs.len() });
        }
        Ok(Self { spec: spec.clone(), coeffs })
    }

    pub(crate) fn from_coeffs_unchecked(spec: &Arc<AlgebraSpec>, coeffs: Vec<S>) -> Self {
        debug_assert_eq!(coeffs.len(), spec.dim_total());
        Self { spec: spec.clone(), coeffs }
    }

    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        Self { spec: spec.clone(), coeffs: vec![S::zero(); spec.dim_total()] }
    }

    pub fn one(spec: &Arc<AlgebraSpec>) -> Self {
        Self::basis(spec, 0)
    }

    pub fn real(spec: &Arc<AlgebraSpec>, r: S) -> Self {
        let mut e = Self::zero(spec);
        e.coeffs[0] = r;
        e
    }

    /// The basis element `v_index`.
    ///
    /// # Panics
    /// If `index` is not below `dim_total`.
    pub fn basis(spec: &Arc<AlgebraSpec>, index: usize) -> Self {
        let mut e = Self::zero(spec);
        e.coeffs[index] = S::one();
        e
    }

    /// The point `Σ x_s v_s` of `M`.
    pub fn from_point(spec: &Arc<AlgebraSpec>, x: &[S]) -> Result<Self> {
        if x.len() != spec.dim_hyper() {
            return Err(Error::DimensionMismatch { expected: spec.dim_hyper(), got: x.len() });
        }
        let mut e = Self::zero(spec);
        e.coeffs[..x.len()].clone_from_slice(x);
        Ok(e)
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True when all coefficients beyond index `m` vanish.
    pub fn is_in_m(&self) -> bool {
        self.coeffs[self.spec.dim_hyper()..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        Ok(Self { spec: self.spec.clone(), coeffs: self.spec.mul_coeffs(&self.coeffs, &other.coeffs) })
    }

    pub fn neg(&self) -> Self {
        Self { spec: self.spec.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, r: &S) -> Self {
        Self {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|c| c.clone() * r.clone()).collect(),
        }
    }

    pub fn conjugate(&self) -> Self {
        Self { spec: self.spec.clone(), coeffs: self.spec.conj_coeffs(&self.coeffs) }
    }

    /// `t(a) = a + a^c`.
    pub fn trace(&self) -> Self {
        self.zip_with(&self.conjugate(), |a, b| a.clone() + b.clone())
    }

    /// `n(a) = a a^c`.
    pub fn norm_q(&self) -> Self {
        let conj = self.spec.conj_coeffs(&self.coeffs);
        Self { spec: self.spec.clone(), coeffs: self.spec.mul_coeffs(&self.coeffs, &conj) }
    }

    /// `[a, b, c] = (ab)c - a(bc)`.
    pub fn associator(&self, b: &Self, c: &Self) -> Result<Self> {
        self.mul(b)?.mul(c)?.sub(&self.mul(&b.mul(c)?)?)
    }

    /// Squared Euclidean norm with respect to the fitted basis.
    pub fn euclidean_norm_sq(&self) -> S {
        self.coeffs.iter().fold(S::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    /// Inverse of an element of `M` via `x^{-1} = x^c / n(x)`.
    pub fn inverse_in_m(&self) -> Result<Self> {
        if !self.is_in_m() {
            return Err(Error::NotInSubspace);
        }
        let n = self.norm_q();
        if !n.is_real() {
            return Err(Error::NotInSubspace);
        }
        let n0 = n.coeffs[0].clone();
        if n0.is_zero() {
            return Err(Error::ZeroNorm);
        }
        let inv = S::one() / n0;
        Ok(self.conjugate().scale(&inv))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Self {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Element<Rational> {
    pub fn to_f64(&self) -> Element<f64> {
        Element { spec: self.spec.clone(), coeffs: self.coeffs.iter().map(f64::from_rational).collect() }
    }
}

impl Element<f64> {
    pub fn norm(&self) -> f64 {
        self.euclidean_norm_sq().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}
