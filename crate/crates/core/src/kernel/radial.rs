use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::polynomial::{FloatPolynomial, MultiIndex, Operator, Polynomial, PolynomialTerm};
use crate::scalar::{rational_sqrt, Rational};

/// `π^{pi_power} · Σ_j p_j(x) · |x|^{-(m+1+2j)}` with exact polynomial
/// numerators `p_j`, keyed by the radial power `j`.
#[derive(Debug, Clone)]
pub struct RadialRationalFunction {
    spec: Arc<AlgebraSpec>,
    m: usize,
    pi_power: i32,
    terms: BTreeMap<u32, Polynomial>,
}

/// `|x|^2 = Σ_{s=0}^m x_s^2` as a real polynomial.
pub(crate) fn radius_squared(spec: &Arc<AlgebraSpec>) -> Polynomial {
    let one = Element::one(spec);
    let mut out = Polynomial::zero(spec);
    for s in 0..spec.dim_hyper() {
        out.add_term(MultiIndex::unit(spec.dim_hyper(), s).add(&MultiIndex::unit(spec.dim_hyper(), s)), one.coeffs());
    }
    out
}

impl RadialRationalFunction {
    pub(crate) fn from_parts(
        spec: Arc<AlgebraSpec>,
        m: usize,
        pi_power: i32,
        terms: BTreeMap<u32, Polynomial>,
    ) -> Self {
        let terms = terms.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Self { spec, m, pi_power, terms }
    }

    pub fn zero(spec: &Arc<AlgebraSpec>, pi_power: i32) -> Self {
        Self::from_parts(spec.clone(), spec.m(), pi_power, BTreeMap::new())
    }

    /// `π^{pi_power} · p(x) · |x|^{-(m+1+2j)}`.
    pub fn from_polynomial(p: Polynomial, radial_power: u32, pi_power: i32) -> Self {
        let spec = p.spec().clone();
        let m = spec.m();
        Self::from_parts(spec, m, pi_power, BTreeMap::from([(radial_power, p)]))
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Polynomial)> {
        self.terms.iter().map(|(j, p)| (*j, p))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, j: u32, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        match self.terms.remove(&j) {
            None => {
                self.terms.insert(j, p);
            }
            Some(old) => {
                let sum = old.add(&p).expect("same spec");
                if !sum.is_zero() {
                    self.terms.insert(j, sum);
                }
            }
        }
    }

    fn map_numerators(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let terms = self.terms.iter().map(|(j, p)| (*j, f(p))).collect();
        Self::from_parts(self.spec.clone(), self.m, self.pi_power, terms)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.spec.check_same(&other.spec)?;
        if self.pi_power != other.pi_power && !self.is_empty() && !other.is_empty() {
            return Err(Error::PiPowerMismatch(self.pi_power, other.pi_power));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = if self.is_empty() { other.clone() } else { self.clone() };
        if !self.is_empty() {
            for (j, p) in &other.terms {
                out.insert(*j, p.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_numerators(Polynomial::neg)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_numerators(|p| p.scale(r))
    }

    /// `a · f`.
    pub fn left_mul(&self, a: &Element) -> Result<Self> {
        self.spec.check_same(a.spec())?;
        Ok(self.map_numerators(|p| p.left_mul(a).expect("same spec")))
    }

    /// `f · a`.
    pub fn right_mul(&self, a: &Element) -> Result<Self> {
        self.spec.check_same(a.spec())?;
        Ok(self.map_numerators(|p| p.right_mul(a).expect("same spec")))
    }

    /// Real component function `f_t` (times `v_0`).
    pub fn component(&self, t: usize) -> Self {
        self.map_numerators(|p| p.component(t))
    }

    /// `∂_s (p |x|^{-n}) = ∂_s p · |x|^{-n} - n x_s p · |x|^{-n-2}`.
    pub fn partial(&self, s: usize) -> Self {
        let mut out = Self::zero(&self.spec, self.pi_power);
        for (&j, p) in &self.terms {
            out.insert(j, p.partial(s));
            let n = Rational::from_integer(BigInt::from(self.m as u64 + 1 + 2 * j as u64));
            out.insert(j + 1, p.mul_coordinate_power(s, 1).scale(&-n));
        }
        out
    }

    /// `∂_k f` for `k` over all m + 1 coordinates.
    pub fn derivative(&self, k: &MultiIndex) -> Result<Self> {
        let n = self.spec.dim_hyper();
        if k.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: k.len() });
        }
        let mut out = self.clone();
        for (s, &order) in k.as_slice().iter().enumerate() {
            for _ in 0..order {
                out = out.partial(s);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, op: Operator) -> Self {
        let mut out = Self::zero(&self.spec, self.pi_power);
        for s in 0..self.spec.dim_hyper() {
            let d = self.partial(s);
            let piece = match op {
                Operator::DbarLeft => d.map_numerators(|p| p.left_mul_basis(s)),
                Operator::DbarRight => d.map_numerators(|p| p.right_mul_basis(s)),
                Operator::DconjLeft if s > 0 => d.map_numerators(|p| p.left_mul_basis(s).neg()),
                Operator::DconjRight if s > 0 => d.map_numerators(|p| p.right_mul_basis(s).neg()),
                Operator::DconjLeft | Operator::DconjRight => d,
                Operator::Laplacian => d.partial(s),
            };
            for (j, p) in piece.terms {
                out.insert(j, p);
            }
        }
        out
    }

    /// Rewrites every term over the common denominator `|x|^{m+1+2J}` and
    /// returns `(J, numerator)`.
    pub fn combined(&self) -> (u32, Polynomial) {
        let top = self.terms.keys().next_back().copied().unwrap_or(0);
        (top, self.numerator_at(top))
    }

    /// Numerator over `|x|^{m+1+2·level}`; `level` below the top radial
    /// power is raised to it.
    pub fn numerator_at(&self, level: u32) -> Polynomial {
        let top = self.terms.keys().next_back().copied().unwrap_or(0);
        let level = level.max(top);
        let r2 = radius_squared(&self.spec);
        let mut powers = vec![Polynomial::one(&self.spec)];
        let mut out = Polynomial::zero(&self.spec);
        for (&j, p) in &self.terms {
            let lift = (level - j) as usize;
            while powers.len() <= lift {
                let next = powers.last().expect("nonempty").mul(&r2).expect("same spec");
                powers.push(next);
            }
            out = out.add(&p.mul(&powers[lift]).expect("same spec")).expect("same spec");
        }
        out
    }

    /// True when the function vanishes identically on `M ∖ {0}`.
    pub fn is_zero(&self) -> bool {
        self.combined().1.is_zero()
    }

    /// Equality as functions, independent of how terms are split across
    /// radial powers.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Float evaluation with π expanded. Errors at the origin.
    pub fn evaluate(&self, x: &[f64]) -> Result<Element<f64>> {
        self.to_float().evaluate(x)
    }

    /// Exact value of the rational factor (π excluded) when `|x|^{m+1}` is
    /// rational; `None` otherwise.
    pub fn evaluate_exact(&self, x: &[Rational]) -> Result<Option<Element>> {
        let n = self.spec.dim_hyper();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        let r2: Rational = x.iter().map(|v| v * v).sum();
        if r2.is_zero() {
            return Err(Error::SingularPoint);
        }
        // |x|^{m+1} is rational when m+1 is even or |x| itself is rational
        let base = if (self.m + 1).is_multiple_of(2) {
            num_traits::pow(r2.clone(), self.m.div_ceil(2))
        } else {
            match rational_sqrt(&r2) {
                Some(r) => num_traits::pow(r, self.m + 1),
                None => return Ok(None),
            }
        };
        let mut acc = Element::zero(&self.spec);
        for (&j, p) in &self.terms {
            let denom = &base * num_traits::pow(r2.clone(), j as usize);
            let v = p.evaluate(x)?.scale(&(Rational::one() / denom));
            acc = acc.add(&v)?;
        }
        Ok(Some(acc))
    }

    pub fn to_float(&self) -> FloatRadial {
        FloatRadial {
            spec: self.spec.clone(),
            m: self.m,
            factor: PI.powi(self.pi_power),
            terms: self.terms.iter().map(|(j, p)| (*j, p.to_float())).collect(),
        }
    }

    pub fn to_document(&self) -> RadialDocument {
        RadialDocument {
            m: self.m,
            pi_power: self.pi_power,
            terms: self
                .terms
                .iter()
                .map(|(j, p)| RadialTermDocument { radial_power: *j, numerator: p.to_terms() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_document())?)
    }

    pub fn from_json(spec: &Arc<AlgebraSpec>, text: &str) -> Result<Self> {
        let doc: RadialDocument = serde_json::from_str(text)?;
        if doc.m != spec.m() {
            return Err(Error::DimensionMismatch { expected: spec.m(), got: doc.m });
        }
        let mut out = Self::zero(spec, doc.pi_power);
        for term in &doc.terms {
            out.insert(term.radial_power, Polynomial::from_terms(spec, &term.numerator)?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialTermDocument {
    pub radial_power: u32,
    pub numerator: Vec<PolynomialTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialDocument {
    pub m: usize,
    pub pi_power: i32,
    pub terms: Vec<RadialTermDocument>,
}

/// Binary64 copy of a [`RadialRationalFunction`] for evaluation at many
/// points.
#[derive(Debug, Clone)]
pub struct FloatRadial {
    spec: Arc<AlgebraSpec>,
    m: usize,
    factor: f64,
    terms: Vec<(u32, FloatPolynomial)>,
}

impl FloatRadial {
    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    /// Overwrites `out` with `f(x)`.
    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        if r2 == 0.0 {
            return Err(Error::SingularPoint);
        }
        out.iter_mut().for_each(|o| *o = 0.0);
        let r = r2.sqrt();
        let base = r.powi(-(self.m as i32 + 1)) * self.factor;
        let mut scratch = vec![0.0; out.len()];
        for (j, p) in &self.terms {
            scratch.iter_mut().for_each(|o| *o = 0.0);
            p.eval_into(x, &mut scratch);
            let w = base * r2.powi(-(*j as i32));
            for (o, v) in out.iter_mut().zip(&scratch) {
                *o += w * v;
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Element<f64>> {
        let n = self.spec.dim_hyper();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        let mut out = vec![0.0; self.spec.dim_total()];
        self.eval_into(x, &mut out)?;
        Ok(Element::from_coeffs_unchecked(&self.spec, out))
    }
}
