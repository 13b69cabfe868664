//! Finite-dimensional real alternative *-algebras given by structure constants.
//!
//! An algebra is stored in a fitted basis `(v_0, ..., v_d)` where `v_0 = 1`,
//! every basis element satisfies `v_s^c = ±v_s`, and the first `m + 1`
//! elements form the hypercomplex basis of the subspace `M`.

mod axioms;
mod builders;
mod cone;
mod element;
mod json;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

pub use axioms::{check_algebra_axioms, AxiomConfig, AxiomReport, MoufangStatus};
pub(crate) use axioms::{random_element, random_rational};
pub use builders::{build_algebra, AlgebraKind, OCTONION_FRAME};
pub use cone::{complex_lines_meet_in_reals, cone_membership, ConeReport};
pub use element::Element;
pub use json::AlgebraSpecDocument;

/// Nonzero structure constants `v_s v_t = Σ_u c_u v_u`, keyed by `(s, t)`.
#[derive(Debug, Clone)]
pub struct ProductTable<S> {
    dim: usize,
    entries: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> ProductTable<S> {
    fn from_dense(dim: usize, dense: &[Rational]) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for s in 0..dim {
            for t in 0..dim {
                let row = (0..dim)
                    .filter_map(|u| {
                        let c = &dense[(s * dim + t) * dim + u];
                        (!c.is_zero()).then(|| (u, S::from_rational(c)))
                    })
                    .collect();
                entries.push(row);
            }
        }
        Self { dim, entries }
    }

    #[inline]
    pub fn get(&self, s: usize, t: usize) -> &[(usize, S)] {
        &self.entries[s * self.dim + t]
    }
}

/// A real alternative *-algebra with a distinguished hypercomplex frame.
///
/// Immutable after construction; share it through `Arc`.
#[derive(Clone)]
pub struct AlgebraSpec {
    name: String,
    dim_total: usize,
    dim_hyper: usize,
    structure: Vec<Rational>,
    involution_sign: Vec<i8>,
    pub(crate) exact_table: ProductTable<Rational>,
    pub(crate) float_table: ProductTable<f64>,
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("name", &self.name)
            .field("dim_total", &self.dim_total)
            .field("dim_hyper", &self.dim_hyper)
            .finish_non_exhaustive()
    }
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.dim_total == other.dim_total
            && self.dim_hyper == other.dim_hyper
            && self.involution_sign == other.involution_sign
            && self.structure == other.structure
    }
}

impl AlgebraSpec {
    /// Builds a spec from a dense row-major tensor `c[s][t][u]`.
    ///
    /// Only shape and the sign pattern of the frame are checked here; the
    /// algebraic axioms are checked by [`check_algebra_axioms`] (and on load
    /// by [`AlgebraSpec::from_json`]).
    pub fn new(
        name: impl Into<String>,
        dim_total: usize,
        dim_hyper: usize,
        structure: Vec<Rational>,
        involution_sign: Vec<i8>,
    ) -> Result<Self> {
        if dim_total < 2 {
            return Err(Error::InvalidSpec(format!("dim_total must be at least 2, got {dim_total}")));
        }
        if dim_hyper < 2 || dim_hyper > dim_total {
            return Err(Error::InvalidSpec(format!(
                "dim_hyper must lie in 2..={dim_total}, got {dim_hyper}"
            )));
        }
        if structure.len() != dim_total.pow(3) {
            return Err(Error::InvalidSpec(format!(
                "structure has {} entries, expected {}",
                structure.len(),
                dim_total.pow(3)
            )));
        }
        if involution_sign.len() != dim_total {
            return Err(Error::InvalidSpec(format!(
                "involution_sign has {} entries, expected {dim_total}",
                involution_sign.len()
            )));
        }
        if involution_sign.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidSpec("involution signs must be +1 or -1".into()));
        }
        if involution_sign[0] != 1 || involution_sign[1..dim_hyper].iter().any(|&s| s != -1) {
            return Err(Error::InvalidSpec(
                "involution must fix v_0 and negate the hypercomplex units v_1..v_m".into(),
            ));
        }
        let exact_table = ProductTable::from_dense(dim_total, &structure);
        let float_table = ProductTable::from_dense(dim_total, &structure);
        Ok(Self {
            name: name.into(),
            dim_total,
            dim_hyper,
            structure,
            involution_sign,
            exact_table,
            float_table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `d + 1`, the size of the fitted basis.
    pub fn dim_total(&self) -> usize {
        self.dim_total
    }

    /// `m + 1`, the size of the hypercomplex basis of `M`.
    pub fn dim_hyper(&self) -> usize {
        self.dim_hyper
    }

    /// `m`, the number of imaginary units in the frame.
    pub fn m(&self) -> usize {
        self.dim_hyper - 1
    }

    pub fn structure(&self) -> &[Rational] {
        &self.structure
    }

    pub fn involution_sign(&self) -> &[i8] {
        &self.involution_sign
    }

    pub fn structure_constant(&self, s: usize, t: usize, u: usize) -> &Rational {
        &self.structure[(s * self.dim_total + t) * self.dim_total + u]
    }

    /// Accumulates `a · b` into `out`.
    #[inline]
    pub fn mul_acc<S: Scalar>(&self, a: &[S], b: &[S], out: &mut [S]) {
        let table = S::table(self);
        for (s, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.clone() * y.clone();
                for (u, c) in table.get(s, t) {
                    out[*u] = out[*u].clone() + xy.clone() * c.clone();
                }
            }
        }
    }

    pub fn mul_coeffs<S: Scalar>(&self, a: &[S], b: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim_total];
        self.mul_acc(a, b, &mut out);
        out
    }

    /// `v_s · b` without materializing `v_s`.
    pub fn basis_left_mul<S: Scalar>(&self, s: usize, b: &[S]) -> Vec<S> {
        let table = S::table(self);
        let mut out = vec![S::zero(); self.dim_total];
        for (t, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (u, c) in table.get(s, t) {
                out[*u] = out[*u].clone() + y.clone() * c.clone();
            }
        }
        out
    }

    /// `b · v_s` without materializing `v_s`.
    pub fn basis_right_mul<S: Scalar>(&self, b: &[S], s: usize) -> Vec<S> {
        let table = S::table(self);
        let mut out = vec![S::zero(); self.dim_total];
        for (t, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (u, c) in table.get(t, s) {
                out[*u] = out[*u].clone() + y.clone() * c.clone();
            }
        }
        out
    }

    pub fn conj_coeffs<S: Scalar>(&self, a: &[S]) -> Vec<S> {
        a.iter()
            .zip(&self.involution_sign)
            .map(|(x, &sg)| if sg < 0 { -x.clone() } else { x.clone() })
            .collect()
    }

    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    pub(crate) fn check_same(self: &Arc<Self>, other: &Arc<Self>) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::SpecMismatch { left: self.name.clone(), right: other.name.clone() })
        }
    }
}
