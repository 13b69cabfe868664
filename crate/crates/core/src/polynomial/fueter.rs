use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;

use super::{multi_indices_up_to, MultiIndex, Polynomial};
use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::scalar::{factorial, Rational};

/// The left Fueter variable `z_ℓ = x_ℓ - x_0 v_ℓ`, `1 <= ℓ <= m`.
pub fn fueter_variable(spec: &Arc<AlgebraSpec>, l: usize) -> Result<Polynomial> {
    if l == 0 || l > spec.m() {
        return Err(Error::IndexOutOfRange { index: l, max: spec.m() });
    }
    let x_l = Polynomial::coordinate(spec, l)?;
    let x0_vl = Polynomial::monomial(MultiIndex::unit(spec.dim_hyper(), 0), &Element::basis(spec, l));
    x_l.sub(&x0_vl)
}

/// How a product of several factors is parenthesized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Association {
    /// `x_1(x_2(⋯(x_{n-1} x_n)))`
    RightToLeft,
    /// `((x_1 x_2)x_3)⋯x_n`
    LeftToRight,
}

/// A full binary bracketing of a sequence of factors; leaves are consumed
/// left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bracketing {
    Leaf,
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn right_to_left(n: usize) -> Self {
        assert!(n > 0);
        if n == 1 {
            Bracketing::Leaf
        } else {
            Bracketing::Node(Box::new(Bracketing::Leaf), Box::new(Self::right_to_left(n - 1)))
        }
    }

    pub fn left_to_right(n: usize) -> Self {
        assert!(n > 0);
        if n == 1 {
            Bracketing::Leaf
        } else {
            Bracketing::Node(Box::new(Self::left_to_right(n - 1)), Box::new(Bracketing::Leaf))
        }
    }

    /// A random bracketing of `n` factors, split point uniform at each node.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        assert!(n > 0);
        if n == 1 {
            return Bracketing::Leaf;
        }
        let left = rng.gen_range(1..n);
        Bracketing::Node(Box::new(Self::random(left, rng)), Box::new(Self::random(n - left, rng)))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Bracketing::Leaf => 1,
            Bracketing::Node(l, r) => l.leaves() + r.leaves(),
        }
    }
}

/// Multiplies `factors` in the order given, parenthesized by `tree`.
pub fn bracketed_product(factors: &[Polynomial], tree: &Bracketing) -> Result<Polynomial> {
    if tree.leaves() != factors.len() {
        return Err(Error::InvalidParameter(format!(
            "bracketing has {} leaves for {} factors",
            tree.leaves(),
            factors.len()
        )));
    }
    fn go(factors: &[Polynomial], tree: &Bracketing) -> Result<Polynomial> {
        match tree {
            Bracketing::Leaf => Ok(factors[0].clone()),
            Bracketing::Node(l, r) => {
                let n = l.leaves();
                go(&factors[..n], l)?.mul(&go(&factors[n..], r)?)
            }
        }
    }
    go(factors, tree)
}

/// Sum over the distinguishable permutations of `k`'s alignment of the
/// nested product of Fueter variables, *without* the `1/|k|!` factor.
pub(crate) fn fueter_permutation_sum(
    spec: &Arc<AlgebraSpec>,
    k: &MultiIndex,
    assoc: Association,
) -> Result<Polynomial> {
    let vars: Vec<Polynomial> = (1..=spec.m()).map(|l| fueter_variable(spec, l)).collect::<Result<_>>()?;
    let mut memo: HashMap<Vec<usize>, Polynomial> = HashMap::new();

    // RightToLeft shares suffixes between permutations, LeftToRight prefixes.
    fn nested(
        seq: &[usize],
        vars: &[Polynomial],
        assoc: Association,
        memo: &mut HashMap<Vec<usize>, Polynomial>,
    ) -> Result<Polynomial> {
        if seq.len() == 1 {
            return Ok(vars[seq[0]].clone());
        }
        if let Some(p) = memo.get(seq) {
            return Ok(p.clone());
        }
        let p = match assoc {
            Association::RightToLeft => vars[seq[0]].mul(&nested(&seq[1..], vars, assoc, memo)?)?,
            Association::LeftToRight => {
                let n = seq.len();
                nested(&seq[..n - 1], vars, assoc, memo)?.mul(&vars[seq[n - 1]])?
            }
        };
        memo.insert(seq.to_vec(), p.clone());
        Ok(p)
    }

    if k.total() == 0 {
        return Ok(Polynomial::one(spec));
    }
    let mut sum = Polynomial::zero(spec);
    for perm in super::distinguishable_permutations(k) {
        sum = sum.add(&nested(&perm, &vars, assoc, &mut memo)?)?;
    }
    Ok(sum)
}

/// The Fueter polynomial `P_k = (1/|k|!) Σ_σ z_{i_1} ⋯ z_{i_|k|}`, with the
/// sum over distinguishable permutations of the alignment of `k` and each
/// product parenthesized by `assoc`. `P_0 = 1`.
pub fn fueter_polynomial(spec: &Arc<AlgebraSpec>, k: &MultiIndex, assoc: Association) -> Result<Polynomial> {
    if k.len() != spec.m() {
        return Err(Error::DimensionMismatch { expected: spec.m(), got: k.len() });
    }
    let sum = fueter_permutation_sum(spec, k, assoc)?;
    Ok(sum.scale(&Rational::new(BigInt::from(1), factorial(k.total()))))
}

/// `P_k` for every `|k| <= max_degree`, built once and shared read-only.
#[derive(Debug, Clone)]
pub struct FueterTable {
    spec: Arc<AlgebraSpec>,
    max_degree: u32,
    polys: BTreeMap<MultiIndex, Polynomial>,
}

impl FueterTable {
    pub fn build(spec: &Arc<AlgebraSpec>, max_degree: u32) -> Result<Self> {
        let indices = multi_indices_up_to(spec.m(), max_degree);
        let polys = indices
            .into_par_iter()
            .map(|k| fueter_polynomial(spec, &k, Association::RightToLeft).map(|p| (k, p)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { spec: spec.clone(), max_degree, polys })
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn get(&self, k: &MultiIndex) -> Option<&Polynomial> {
        self.polys.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.polys.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraKind};
    use crate::polynomial::{apply_operator, Operator};
    use crate::scalar::{int, rat};
    use rand::SeedableRng;

    #[test]
    fn fueter_variable_shape() {
        let h = build_algebra(&AlgebraKind::Quaternion).unwrap();
        let z1 = fueter_variable(&h, 1).unwrap();
        let i = Element::basis(&h, 1);
        assert_eq!(z1.coefficient(&MultiIndex::new([0, 1, 0, 0])), Element::one(&h));
        assert_eq!(z1.coefficient(&MultiIndex::new([1, 0, 0, 0])), i.neg());
        assert!(apply_operator(Operator::DbarLeft, &z1).is_zero());
        // z_1(v_1) = 1
        assert_eq!(z1.evaluate(&[int(0), int(1), int(0), int(0)]).unwrap(), Element::one(&h));
        // z_1(1 + 2 v_1) = 2 - v_1
        let expected = Element::real(&h, int(2)).sub(&i).unwrap();
        assert_eq!(z1.evaluate(&[int(1), int(2), int(0), int(0)]).unwrap(), expected);
        assert!(fueter_variable(&h, 0).is_err());
        assert!(fueter_variable(&h, 4).is_err());
    }

    #[test]
    fn p11_is_symmetrized_product() {
        let o = build_algebra(&AlgebraKind::Octonion { m: 7 }).unwrap();
        let z1 = fueter_variable(&o, 1).unwrap();
        let z2 = fueter_variable(&o, 2).unwrap();
        let expected = z1.mul(&z2).unwrap().add(&z2.mul(&z1).unwrap()).unwrap().scale(&rat(1, 2));
        let k = MultiIndex::new([1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(fueter_polynomial(&o, &k, Association::RightToLeft).unwrap(), expected);
    }

    #[test]
    fn p20_is_z1_squared() {
        let o = build_algebra(&AlgebraKind::Octonion { m: 2 }).unwrap();
        let z1 = fueter_variable(&o, 1).unwrap();
        let k = MultiIndex::new([2, 0]);
        let expected = z1.mul(&z1).unwrap().scale(&rat(1, 2));
        assert_eq!(fueter_polynomial(&o, &k, Association::RightToLeft).unwrap(), expected);
        assert_eq!(fueter_polynomial(&o, &k, Association::LeftToRight).unwrap(), expected);
    }

    #[test]
    fn p0_is_one() {
        let o = build_algebra(&AlgebraKind::Octonion { m: 3 }).unwrap();
        let p = fueter_polynomial(&o, &MultiIndex::zeros(3), Association::RightToLeft).unwrap();
        assert_eq!(p, Polynomial::one(&o));
        assert!(fueter_polynomial(&o, &MultiIndex::zeros(2), Association::RightToLeft).is_err());
    }

    #[test]
    fn random_bracketings_agree_for_degree_three() {
        // Permutation sums are independent of the parenthesization.
        let o = build_algebra(&AlgebraKind::Octonion { m: 3 }).unwrap();
        let k = MultiIndex::new([1, 1, 1]);
        let reference = fueter_permutation_sum(&o, &k, Association::RightToLeft).unwrap();
        let vars: Vec<Polynomial> = (1..=3).map(|l| fueter_variable(&o, l).unwrap()).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2 {
            let tree = Bracketing::random(3, &mut rng);
            let mut sum = Polynomial::zero(&o);
            for perm in crate::polynomial::distinguishable_permutations(&k) {
                let factors: Vec<Polynomial> = perm.iter().map(|&i| vars[i].clone()).collect();
                sum = sum.add(&bracketed_product(&factors, &tree).unwrap()).unwrap();
            }
            assert_eq!(sum, reference);
        }
    }

    #[test]
    fn single_product_depends_on_bracketing() {
        // Individual products z1(z2 z3) and (z1 z2)z3 differ in the octonions.
        let o = build_algebra(&AlgebraKind::Octonion { m: 3 }).unwrap();
        let vars: Vec<Polynomial> = (1..=3).map(|l| fueter_variable(&o, l).unwrap()).collect();
        let r = bracketed_product(&vars, &Bracketing::right_to_left(3)).unwrap();
        let l = bracketed_product(&vars, &Bracketing::left_to_right(3)).unwrap();
        assert_ne!(r, l);
    }
}
