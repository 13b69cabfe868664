use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{MultiIndex, Polynomial};
use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

/// One serialized term: exponents `(a_0, …, a_m)` and the coefficient vector
/// over the fitted basis as `p/q` strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialTerm {
    pub exponents: Vec<u32>,
    pub coeff: Vec<String>,
}

impl Polynomial {
    /// Terms in canonical (graded-lexicographic) order.
    pub fn to_terms(&self) -> Vec<PolynomialTerm> {
        self.terms()
            .map(|(k, c)| PolynomialTerm {
                exponents: k.as_slice().to_vec(),
                coeff: c.iter().map(format_rational).collect(),
            })
            .collect()
    }

    pub fn from_terms(spec: &Arc<AlgebraSpec>, terms: &[PolynomialTerm]) -> Result<Self> {
        let mut p = Polynomial::zero(spec);
        for term in terms {
            if term.exponents.len() != spec.dim_hyper() {
                return Err(Error::DimensionMismatch { expected: spec.dim_hyper(), got: term.exponents.len() });
            }
            if term.coeff.len() != spec.dim_total() {
                return Err(Error::DimensionMismatch { expected: spec.dim_total(), got: term.coeff.len() });
            }
            let coeff = term.coeff.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>>>()?;
            p.add_term(MultiIndex::from(term.exponents.clone()), &coeff);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_terms())?)
    }

    pub fn from_json(spec: &Arc<AlgebraSpec>, text: &str) -> Result<Self> {
        let terms: Vec<PolynomialTerm> = serde_json::from_str(text)?;
        Self::from_terms(spec, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraKind};
    use crate::polynomial::{fueter_polynomial, Association};

    #[test]
    fn ordering_is_canonical() {
        let o = build_algebra(&AlgebraKind::Octonion { m: 2 }).unwrap();
        let p = fueter_polynomial(&o, &MultiIndex::new([1, 1]), Association::RightToLeft).unwrap();
        let terms = p.to_terms();
        let keys: Vec<MultiIndex> = terms.iter().map(|t| MultiIndex::from(t.exponents.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(Polynomial::from_json(&o, &p.to_json().unwrap()).unwrap(), p);
    }

    #[test]
    fn rejects_wrong_shapes() {
        let o = build_algebra(&AlgebraKind::Octonion { m: 2 }).unwrap();
        let bad = r#"[{"exponents":[1,0],"coeff":["1/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1"]}]"#;
        assert!(Polynomial::from_json(&o, bad).is_err());
        assert!(Polynomial::from_json(&o, "[").is_err());
    }
}
