use std::sync::Arc;

use super::Polynomial;
use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A binary64 copy of a [`Polynomial`] for repeated evaluation at
/// quadrature nodes.
#[derive(Debug, Clone)]
pub struct FloatPolynomial {
    spec: Arc<AlgebraSpec>,
    nvars: usize,
    max_exponent: u32,
    terms: Vec<(Vec<u32>, Vec<f64>)>,
}

impl FloatPolynomial {
    pub fn from_exact(p: &Polynomial) -> Self {
        let terms: Vec<(Vec<u32>, Vec<f64>)> = p
            .terms()
            .map(|(k, c)| (k.as_slice().to_vec(), c.iter().map(f64::from_rational).collect()))
            .collect();
        let max_exponent = terms.iter().flat_map(|(k, _)| k.iter().copied()).max().unwrap_or(0);
        Self { spec: p.spec().clone(), nvars: p.nvars(), max_exponent, terms }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Accumulates `p(x)` into `out` (length `dim_total`).
    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.nvars);
        let stride = self.max_exponent as usize + 1;
        let mut powers = vec![1.0; self.nvars * stride];
        for (s, &xs) in x.iter().enumerate() {
            for e in 1..stride {
                powers[s * stride + e] = powers[s * stride + e - 1] * xs;
            }
        }
        for (k, c) in &self.terms {
            let mono: f64 = k.iter().enumerate().map(|(s, &e)| powers[s * stride + e as usize]).product();
            if mono == 0.0 {
                continue;
            }
            for (o, ci) in out.iter_mut().zip(c) {
                *o += mono * ci;
            }
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<Element<f64>> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: x.len() });
        }
        let mut out = vec![0.0; self.spec.dim_total()];
        self.eval_into(x, &mut out);
        Ok(Element::from_coeffs_unchecked(&self.spec, out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraKind};
    use crate::polynomial::{fueter_polynomial, Association, MultiIndex};
    use crate::scalar::{rat, Rational};

    #[test]
    fn float_matches_exact() {
        let o = build_algebra(&AlgebraKind::Octonion { m: 3 }).unwrap();
        let p = fueter_polynomial(&o, &MultiIndex::new([1, 2, 0]), Association::RightToLeft).unwrap();
        let x: Vec<Rational> = vec![rat(1, 3), rat(-1, 2), rat(2, 5), rat(3, 4)];
        let exact = p.evaluate(&x).unwrap().to_f64();
        let xf: Vec<f64> = x.iter().map(f64::from_rational).collect();
        let approx = p.to_float().eval(&xf).unwrap();
        assert!(exact.max_abs_diff(&approx) < 1e-15);
    }
}
