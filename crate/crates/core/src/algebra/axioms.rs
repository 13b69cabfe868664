use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AlgebraSpec, Element};
use crate::scalar::{rat, Rational};

#[derive(Debug, Clone, Copy)]
pub struct AxiomConfig {
    /// Number of sampled triples for the Moufang identities.
    pub sample_size: usize,
    pub seed: u64,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        Self { sample_size: 64, seed: 42 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoufangStatus {
    Passed,
    /// Basis-level associativity already implies the identities; the
    /// samples were still evaluated and agreed.
    ImpliedByAssociativity,
    Failed,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub unity: bool,
    /// The associator alternates on every basis triple (exhaustive).
    pub alternation: bool,
    pub alternation_failures: usize,
    /// Every basis associator vanishes.
    pub associative: bool,
    /// Sampled `a(b(ac)) = (aba)c`, `((ab)c)b = a(bcb)`, `(ab)(ca) = a(bc)a`.
    pub moufang: [bool; 3],
    pub moufang_status: MoufangStatus,
    pub anti_involution: bool,
    pub frame: bool,
    /// Largest sampled `|xy| / (|x||y|)` over `x ∈ M`, `y ∈ A`.
    pub submultiplicativity: f64,
    pub sample_size: usize,
    pub seed: u64,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.unity
            && self.alternation
            && self.moufang_status != MoufangStatus::Failed
            && self.anti_involution
            && self.frame
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.unity {
            out.push("unity");
        }
        if !self.alternation {
            out.push("alternation");
        }
        if self.moufang_status == MoufangStatus::Failed {
            out.push("moufang");
        }
        if !self.anti_involution {
            out.push("anti-involution");
        }
        if !self.frame {
            out.push("hypercomplex-frame");
        }
        out
    }
}

pub(crate) fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub(crate) fn random_element(spec: &Arc<AlgebraSpec>, rng: &mut impl Rng, len: usize) -> Element {
    let mut coeffs = vec![Rational::zero(); spec.dim_total()];
    for c in coeffs.iter_mut().take(len) {
        *c = random_rational(rng);
    }
    Element::from_coeffs_unchecked(spec, coeffs)
}

pub fn check_algebra_axioms(spec: &Arc<AlgebraSpec>, config: &AxiomConfig) -> AxiomReport {
    let dim = spec.dim_total();
    let m = spec.m();
    let basis: Vec<Element> = (0..dim).map(|i| Element::basis(spec, i)).collect();
    let mul = |a: &Element, b: &Element| Element::from_coeffs_unchecked(spec, spec.mul_coeffs(a.coeffs(), b.coeffs()));

    let unity = (0..dim).all(|t| {
        (0..dim).all(|u| {
            let expected = if t == u { Rational::one() } else { Rational::zero() };
            *spec.structure_constant(0, t, u) == expected && *spec.structure_constant(t, 0, u) == expected
        })
    });

    let products: Vec<Vec<Element>> =
        basis.iter().map(|a| basis.iter().map(|b| mul(a, b)).collect()).collect();
    let assoc = |s: usize, t: usize, u: usize| -> Element {
        let left = mul(&products[s][t], &basis[u]);
        let right = mul(&basis[s], &products[t][u]);
        left.sub(&right).expect("same spec")
    };
    let mut table = Vec::with_capacity(dim * dim * dim);
    for s in 0..dim {
        for t in 0..dim {
            for u in 0..dim {
                table.push(assoc(s, t, u));
            }
        }
    }
    let at = |s: usize, t: usize, u: usize| &table[(s * dim + t) * dim + u];
    let associative = table.iter().all(Element::is_zero);

    let mut alternation_failures = 0;
    for s in 0..dim {
        for t in 0..dim {
            for u in 0..dim {
                let a = at(s, t, u);
                let ok = a.add(at(t, s, u)).unwrap().is_zero()
                    && a.add(at(s, u, t)).unwrap().is_zero()
                    && a.add(at(u, t, s)).unwrap().is_zero();
                if !ok {
                    alternation_failures += 1;
                }
            }
        }
    }

    let anti_involution = (0..dim).all(|s| {
        (0..dim).all(|t| {
            let lhs = products[s][t].conjugate();
            let rhs = mul(&basis[t].conjugate(), &basis[s].conjugate());
            lhs == rhs
        })
    });

    let one = Element::<Rational>::one(spec);
    let frame = (1..=m).all(|s| {
        let v = &basis[s];
        v.trace().is_zero() && v.norm_q() == one
    }) && (1..=m).all(|s| {
        (1..=m).filter(|&t| t != s).all(|t| {
            mul(&basis[s], &basis[t].conjugate()).trace().is_zero()
                && products[s][t].add(&products[t][s]).unwrap().is_zero()
        })
    });

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut moufang = [true; 3];
    let mut submultiplicativity: f64 = 0.0;
    for _ in 0..config.sample_size {
        let a = random_element(spec, &mut rng, dim);
        let b = random_element(spec, &mut rng, dim);
        let c = random_element(spec, &mut rng, dim);
        let aba = mul(&mul(&a, &b), &a);
        let bcb = mul(&mul(&b, &c), &b);
        moufang[0] &= mul(&a, &mul(&b, &mul(&a, &c))) == mul(&aba, &c);
        moufang[1] &= mul(&mul(&mul(&a, &b), &c), &b) == mul(&a, &bcb);
        moufang[2] &= mul(&mul(&a, &b), &mul(&c, &a)) == mul(&mul(&a, &mul(&b, &c)), &a);

        let x = random_element(spec, &mut rng, m + 1);
        let y = random_element(spec, &mut rng, dim);
        let (xf, yf) = (x.to_f64(), y.to_f64());
        let denom = xf.norm() * yf.norm();
        if denom > 0.0 {
            submultiplicativity = submultiplicativity.max(mul(&x, &y).to_f64().norm() / denom);
        }
    }
    let moufang_status = match (moufang.iter().all(|&b| b), associative) {
        (false, _) => MoufangStatus::Failed,
        (true, true) => MoufangStatus::ImpliedByAssociativity,
        (true, false) => MoufangStatus::Passed,
    };

    AxiomReport {
        algebra: spec.name().to_string(),
        unity,
        alternation: alternation_failures == 0,
        alternation_failures,
        associative,
        moufang,
        moufang_status,
        anti_involution,
        frame,
        submultiplicativity,
        sample_size: config.sample_size,
        seed: config.seed,
    }
}
