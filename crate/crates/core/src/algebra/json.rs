use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{check_algebra_axioms, AlgebraSpec, AxiomConfig};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational};

/// On-disk form of an [`AlgebraSpec`]; `structure` is the row-major
/// `[s][t][u]` tensor with every entry written as `p/q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpecDocument {
    pub name: String,
    pub dim_total: usize,
    pub dim_hyper: usize,
    pub structure: Vec<String>,
    pub involution_sign: Vec<i8>,
}

impl From<&AlgebraSpec> for AlgebraSpecDocument {
    fn from(spec: &AlgebraSpec) -> Self {
        Self {
            name: spec.name().to_string(),
            dim_total: spec.dim_total(),
            dim_hyper: spec.dim_hyper(),
            structure: spec.structure().iter().map(format_rational).collect(),
            involution_sign: spec.involution_sign().to_vec(),
        }
    }
}

impl AlgebraSpecDocument {
    pub fn into_spec(self) -> Result<AlgebraSpec> {
        let structure = self.structure.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        AlgebraSpec::new(self.name, self.dim_total, self.dim_hyper, structure, self.involution_sign)
    }
}

impl AlgebraSpec {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&AlgebraSpecDocument::from(self))?)
    }

    /// Parses a spec without checking the algebra axioms.
    pub fn from_json_unchecked(text: &str) -> Result<AlgebraSpec> {
        serde_json::from_str::<AlgebraSpecDocument>(text)?.into_spec()
    }

    /// Parses a spec and rejects it unless every axiom check passes.
    pub fn from_json(text: &str) -> Result<Arc<AlgebraSpec>> {
        let spec = Arc::new(Self::from_json_unchecked(text)?);
        let report = check_algebra_axioms(&spec, &AxiomConfig::default());
        if !report.all_passed() {
            return Err(Error::InvalidSpec(format!("axiom checks failed: {}", report.failures().join(", "))));
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraKind};

    #[test]
    fn round_trip_is_exact() {
        for kind in [AlgebraKind::Octonion { m: 7 }, AlgebraKind::Clifford { m: 3 }, AlgebraKind::DualQuaternion] {
            let spec = build_algebra(&kind).unwrap();
            let text = spec.to_json().unwrap();
            let back = AlgebraSpec::from_json(&text).unwrap();
            assert_eq!(*back, *spec);
            assert_eq!(back.to_json().unwrap(), text);
        }
    }

    #[test]
    fn entries_are_p_over_q() {
        let spec = build_algebra(&AlgebraKind::Complex).unwrap();
        let doc = AlgebraSpecDocument::from(&*spec);
        assert_eq!(doc.structure[0], "1/1");
        assert!(doc.structure.iter().all(|s| s.contains('/')));
    }

    #[test]
    fn rejects_malformed_and_non_alternative() {
        assert!(matches!(AlgebraSpec::from_json("{ not json"), Err(Error::Json(_))));
        let spec = build_algebra(&AlgebraKind::Quaternion).unwrap();
        let mut doc = AlgebraSpecDocument::from(&*spec);
        // i·j = k  ->  i·j = k + 1
        doc.structure[(4 + 2) * 4] = "1/1".into();
        let text = serde_json::to_string(&doc).unwrap();
        assert!(matches!(AlgebraSpec::from_json(&text), Err(Error::InvalidSpec(_))));
        assert!(AlgebraSpec::from_json_unchecked(&text).is_ok());
    }
}
