use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use smallvec::SmallVec;

use crate::scalar::factorial;

/// A vector of nonnegative exponents.
///
/// Used both for monomials `x_0^{a_0}⋯x_m^{a_m}` of a polynomial (m + 1
/// slots) and for the Fueter multi-indices `k = (k_1, …, k_m)` (m slots).
/// The total order is graded lexicographic: total degree first, then the
/// exponent vectors compared lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(SmallVec<[u32; 8]>);

impl MultiIndex {
    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Self {
        Self(exponents.into_iter().collect())
    }

    pub fn zeros(slots: usize) -> Self {
        Self(SmallVec::from_elem(0, slots))
    }

    /// The index with a single 1 in `slot`.
    pub fn unit(slots: usize, slot: usize) -> Self {
        let mut k = Self::zeros(slots);
        k.0[slot] = 1;
        k
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|k|`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `k! = k_1!⋯k_m!`.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&k| factorial(k)).product()
    }

    /// `(0, k_1, …, k_m)`: lifts a Fueter index to a derivative index on all
    /// m + 1 coordinates.
    pub fn with_leading_zero(&self) -> Self {
        let mut v = SmallVec::with_capacity(self.0.len() + 1);
        v.push(0);
        v.extend_from_slice(&self.0);
        Self(v)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn get(&self, slot: usize) -> u32 {
        self.0[slot]
    }

    pub(crate) fn set(&mut self, slot: usize, value: u32) {
        self.0[slot] = value;
    }

    /// The nondecreasing alignment `(j_1 ≤ … ≤ j_|k|)` with slot `s`
    /// repeated `k_s` times (0-based slots).
    pub fn alignment(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(s, &k)| std::iter::repeat_n(s, k as usize)).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v.into())
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        Self(v.into())
    }
}

/// All indices over `slots` slots with `|k| = degree`, in canonical order.
pub fn multi_indices(slots: usize, degree: u32) -> Vec<MultiIndex> {
    fn fill(slot: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if slot + 1 == current.len() {
            current[slot] = remaining;
            out.push(MultiIndex::from(current.as_slice()));
            return;
        }
        for k in (0..=remaining).rev() {
            current[slot] = k;
            fill(slot + 1, remaining - k, current, out);
        }
    }
    if slots == 0 {
        return if degree == 0 { vec![MultiIndex::zeros(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    fill(0, degree, &mut vec![0; slots], &mut out);
    out.sort();
    out
}

/// All indices with `|k| <= max_degree`, in canonical order.
pub fn multi_indices_up_to(slots: usize, max_degree: u32) -> Vec<MultiIndex> {
    (0..=max_degree).flat_map(|d| multi_indices(slots, d)).collect()
}

/// Advances `v` to the next lexicographic permutation; false when `v` was
/// the last one. Repeated entries yield only distinguishable permutations.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Distinguishable permutations of the alignment of `k`.
pub fn distinguishable_permutations(k: &MultiIndex) -> Vec<Vec<usize>> {
    let mut current = k.alignment();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}
