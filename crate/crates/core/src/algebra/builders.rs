use std::fmt;
use std::sync::Arc;

use super::AlgebraSpec;
use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

/// Cayley–Dickson indices of the octonion units used, in order, as the
/// hypercomplex frame `v_1..v_m`. `e4` comes third so that any frame with
/// `m >= 3` already spans a non-associative triple.
pub const OCTONION_FRAME: [usize; 7] = [1, 2, 4, 3, 5, 6, 7];

const MAX_CLIFFORD_M: usize = 6;

/// The shipped algebra families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraKind {
    Complex,
    Quaternion,
    /// Octonions with the frame `OCTONION_FRAME[..m]`, `1 <= m <= 7`.
    Octonion { m: usize },
    /// `R_{0,m}` with `M` the paravectors `1, e_1, ..., e_m`.
    Clifford { m: usize },
    /// `H + εH` with `M = H`.
    DualQuaternion,
}

impl AlgebraKind {
    /// Parses a kind name; `m` is required for `clifford` and optional for
    /// `octonion` (default 7). It is ignored by the fixed-frame kinds only
    /// when it matches their frame size.
    pub fn parse(kind: &str, m: Option<usize>) -> Result<Self> {
        let fixed = |k: AlgebraKind, frame: usize| match m {
            Some(mm) if mm != frame => Err(Error::InvalidParameter(format!(
                "{kind} has a fixed hypercomplex frame of size m = {frame}, got m = {mm}"
            ))),
            _ => Ok(k),
        };
        match kind.to_ascii_lowercase().replace('-', "_").as_str() {
            "complex" => fixed(AlgebraKind::Complex, 1),
            "quaternion" => fixed(AlgebraKind::Quaternion, 3),
            "dual_quaternion" => fixed(AlgebraKind::DualQuaternion, 3),
            "octonion" => Ok(AlgebraKind::Octonion { m: m.unwrap_or(7) }),
            "clifford" => match m {
                Some(m) => Ok(AlgebraKind::Clifford { m }),
                None => Err(Error::InvalidParameter("clifford needs --m".into())),
            },
            other => Err(Error::UnsupportedKind(other.to_string())),
        }
    }

    pub fn m(&self) -> usize {
        match *self {
            AlgebraKind::Complex => 1,
            AlgebraKind::Quaternion | AlgebraKind::DualQuaternion => 3,
            AlgebraKind::Octonion { m } | AlgebraKind::Clifford { m } => m,
        }
    }

    pub fn is_associative(&self) -> bool {
        !matches!(self, AlgebraKind::Octonion { .. })
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Complex => write!(f, "complex"),
            AlgebraKind::Quaternion => write!(f, "quaternion"),
            AlgebraKind::Octonion { m: 7 } => write!(f, "octonion"),
            AlgebraKind::Octonion { m } => write!(f, "octonion(m={m})"),
            AlgebraKind::Clifford { m } => write!(f, "clifford(0,{m})"),
            AlgebraKind::DualQuaternion => write!(f, "dual_quaternion"),
        }
    }
}

pub fn build_algebra(kind: &AlgebraKind) -> Result<Arc<AlgebraSpec>> {
    let name = kind.to_string();
    let spec = match *kind {
        AlgebraKind::Complex => cayley_dickson(name, 1, &[1])?,
        AlgebraKind::Quaternion => cayley_dickson(name, 2, &[1, 2, 3])?,
        AlgebraKind::Octonion { m } => {
            if m == 0 || m > 7 {
                return Err(Error::InvalidParameter(format!("octonion frame size m must be in 1..=7, got {m}")));
            }
            cayley_dickson(name, 3, &OCTONION_FRAME[..m])?
        }
        AlgebraKind::Clifford { m } => {
            if m == 0 || m > MAX_CLIFFORD_M {
                return Err(Error::InvalidParameter(format!(
                    "clifford needs 1 <= m <= {MAX_CLIFFORD_M}, got {m}"
                )));
            }
            clifford(name, m)?
        }
        AlgebraKind::DualQuaternion => dual_quaternion(name)?,
    };
    Ok(Arc::new(spec))
}

fn cd_conj(a: &[i64]) -> Vec<i64> {
    let mut out = a.to_vec();
    for c in out.iter_mut().skip(1) {
        *c = -*c;
    }
    out
}

/// Cayley–Dickson product `(p, q)(r, s) = (pr - s*q, sp + qr*)`.
fn cd_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let (p, q) = a.split_at(h);
    let (r, s) = b.split_at(h);
    let first: Vec<i64> =
        cd_mul(p, r).iter().zip(cd_mul(&cd_conj(s), q)).map(|(x, y)| x - y).collect();
    let second: Vec<i64> =
        cd_mul(s, p).iter().zip(cd_mul(q, &cd_conj(r))).map(|(x, y)| x + y).collect();
    [first, second].concat()
}

/// Doubles the reals `levels` times and reorders the basis so that `frame`
/// becomes `v_1..v_m`, followed by the remaining units in ascending order.
fn cayley_dickson(name: String, levels: u32, frame: &[usize]) -> Result<AlgebraSpec> {
    let dim = 1usize << levels;
    let mut order = vec![0usize];
    order.extend_from_slice(frame);
    order.extend((1..dim).filter(|i| !frame.contains(i)));

    let unit = |i: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v
    };
    let mut structure = vec![int(0); dim * dim * dim];
    for (a, &oa) in order.iter().enumerate() {
        for (b, &ob) in order.iter().enumerate() {
            let prod = cd_mul(&unit(oa), &unit(ob));
            for (c, &oc) in order.iter().enumerate() {
                structure[(a * dim + b) * dim + c] = int(prod[oc]);
            }
        }
    }
    let mut signs = vec![-1i8; dim];
    signs[0] = 1;
    AlgebraSpec::new(name, dim, frame.len() + 1, structure, signs)
}

/// Blades ordered by grade, then by bit pattern, so `e_1..e_m` occupy
/// indices `1..=m`.
fn clifford_blades(m: usize) -> Vec<u32> {
    let mut blades: Vec<u32> = (0..1u32 << m).collect();
    blades.sort_by_key(|b| (b.count_ones(), *b));
    blades
}

fn blade_product_sign(a: u32, b: u32) -> i64 {
    let mut swaps = 0;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    // every shared generator contributes e_i^2 = -1
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

fn clifford(name: String, m: usize) -> Result<AlgebraSpec> {
    let blades = clifford_blades(m);
    let dim = blades.len();
    let mut index = vec![0usize; dim];
    for (i, &b) in blades.iter().enumerate() {
        index[b as usize] = i;
    }
    let mut structure = vec![int(0); dim * dim * dim];
    for (s, &a) in blades.iter().enumerate() {
        for (t, &b) in blades.iter().enumerate() {
            let u = index[(a ^ b) as usize];
            structure[(s * dim + t) * dim + u] = int(blade_product_sign(a, b));
        }
    }
    let signs = blades
        .iter()
        .map(|b| {
            let k = b.count_ones();
            if (k * (k + 1) / 2) % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    AlgebraSpec::new(name, dim, m + 1, structure, signs)
}

fn dual_quaternion(name: String) -> Result<AlgebraSpec> {
    let h = cayley_dickson(String::new(), 2, &[1, 2, 3])?;
    let dim = 8;
    let mut structure = vec![Rational::from_integer(0.into()); dim * dim * dim];
    for s in 0..dim {
        for t in 0..dim {
            let (bs, qs) = (s / 4, s % 4);
            let (bt, qt) = (t / 4, t % 4);
            if bs + bt > 1 {
                continue;
            }
            for qu in 0..4 {
                let u = (bs + bt) * 4 + qu;
                structure[(s * dim + t) * dim + u] = h.structure_constant(qs, qt, qu).clone();
            }
        }
    }
    AlgebraSpec::new(name, dim, 4, structure, vec![1, -1, -1, -1, 1, -1, -1, -1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Element;

    #[test]
    fn dimensions() {
        let cases = [
            (AlgebraKind::Complex, 2, 2),
            (AlgebraKind::Quaternion, 4, 4),
            (AlgebraKind::Octonion { m: 7 }, 8, 8),
            (AlgebraKind::Octonion { m: 2 }, 8, 3),
            (AlgebraKind::Clifford { m: 3 }, 8, 4),
            (AlgebraKind::DualQuaternion, 8, 4),
        ];
        for (kind, total, hyper) in cases {
            let spec = build_algebra(&kind).unwrap();
            assert_eq!((spec.dim_total(), spec.dim_hyper()), (total, hyper), "{kind}");
        }
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(build_algebra(&AlgebraKind::Clifford { m: 0 }).is_err());
        assert!(build_algebra(&AlgebraKind::Octonion { m: 0 }).is_err());
        assert!(build_algebra(&AlgebraKind::Octonion { m: 8 }).is_err());
        assert!(matches!(AlgebraKind::parse("sedenion", None), Err(Error::UnsupportedKind(_))));
        assert!(AlgebraKind::parse("clifford", None).is_err());
        assert!(AlgebraKind::parse("quaternion", Some(2)).is_err());
        assert_eq!(AlgebraKind::parse("dual-quaternion", None).unwrap(), AlgebraKind::DualQuaternion);
    }

    #[test]
    fn octonion_is_not_associative() {
        // frame order puts Cayley–Dickson e4 at index 3
        let o = build_algebra(&AlgebraKind::Octonion { m: 7 }).unwrap();
        let e = |i| Element::<Rational>::basis(&o, i);
        let lhs = e(1).mul(&e(2)).unwrap().mul(&e(3)).unwrap();
        let rhs = e(1).mul(&e(2).mul(&e(3)).unwrap()).unwrap();
        assert_ne!(lhs, rhs);
        assert_eq!(lhs, rhs.neg());
    }

    #[test]
    fn clifford_conjugation_signs() {
        let cl = build_algebra(&AlgebraKind::Clifford { m: 3 }).unwrap();
        // grades 0,1,1,1,2,2,2,3
        assert_eq!(cl.involution_sign(), &[1, -1, -1, -1, -1, -1, -1, 1]);
    }
}
