use num_traits::{Signed, Zero};
use serde::Serialize;

use super::Element;
use crate::scalar::{format_rational, int, Rational};

/// Membership of an element in the quadratic cone `Q_A`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeReport {
    pub in_cone: bool,
    pub trace_real: bool,
    pub norm_real: bool,
    /// `4 n(x) - t(x)^2` taken on the real parts.
    #[serde(serialize_with = "ser_rational")]
    pub discriminant: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn cone_membership(x: &Element) -> ConeReport {
    let t = x.trace();
    let n = x.norm_q();
    let trace_real = t.is_real();
    let norm_real = n.is_real();
    let t0 = &t.coeffs()[0];
    let discriminant = int(4) * &n.coeffs()[0] - t0 * t0;
    let in_cone = x.is_real() || (trace_real && norm_real && discriminant.is_positive());
    ConeReport { in_cone, trace_real, norm_real, discriminant }
}

/// Rank of a set of rational vectors by fraction-exact elimination.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &lead;
                let pivot = rows[rank].clone();
                for (v, p) in rows[r].iter_mut().zip(&pivot).skip(col) {
                    *v -= &factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether `C_J ∩ C_K = R` for the complex lines through `J` and `K`,
/// i.e. whether `1, J, K` are linearly independent.
pub fn complex_lines_meet_in_reals(j: &Element, k: &Element) -> bool {
    let one = Element::<Rational>::one(j.spec());
    rank(&[one.coeffs().to_vec(), j.coeffs().to_vec(), k.coeffs().to_vec()]) == 3
}
