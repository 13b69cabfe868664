use super::Polynomial;

/// First- and second-order operators induced by the hypercomplex basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operator {
    /// `∂̄ p = Σ_{s=0}^m v_s ∂_s p`
    DbarLeft,
    /// `p ∂̄ = Σ_{s=0}^m ∂_s p · v_s`
    DbarRight,
    /// `∂ p = ∂_0 p - Σ_{s=1}^m v_s ∂_s p`
    DconjLeft,
    /// `p ∂ = ∂_0 p - Σ_{s=1}^m ∂_s p · v_s`
    DconjRight,
    /// `Δ p = Σ_{s=0}^m ∂_s² p`
    Laplacian,
}

pub fn apply_operator(op: Operator, p: &Polynomial) -> Polynomial {
    let n = p.nvars();
    let mut out = Polynomial::zero(p.spec());
    let accumulate = |out: &mut Polynomial, q: Polynomial, sign_negative: bool| {
        for (k, c) in q.terms {
            if sign_negative {
                let neg: Vec<_> = c.iter().map(|x| -x).collect();
                out.add_term(k, &neg);
            } else {
                out.add_term(k, &c);
            }
        }
    };
    for s in 0..n {
        let d = p.partial(s);
        if d.is_zero() {
            continue;
        }
        match op {
            Operator::DbarLeft => accumulate(&mut out, d.left_mul_basis(s), false),
            Operator::DbarRight => accumulate(&mut out, d.right_mul_basis(s), false),
            Operator::DconjLeft => accumulate(&mut out, d.left_mul_basis(s), s > 0),
            Operator::DconjRight => accumulate(&mut out, d.right_mul_basis(s), s > 0),
            Operator::Laplacian => accumulate(&mut out, d.partial(s), false),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraKind, Element};
    use crate::scalar::int;

    #[test]
    fn dbar_of_x0_is_one() {
        let o = build_algebra(&AlgebraKind::Octonion { m: 7 }).unwrap();
        let x0 = Polynomial::coordinate(&o, 0).unwrap();
        assert_eq!(apply_operator(Operator::DbarLeft, &x0), Polynomial::one(&o));
        assert_eq!(apply_operator(Operator::DbarRight, &x0), Polynomial::one(&o));
    }

    #[test]
    fn dbar_of_conjugate_identity() {
        // x^c = x_0 - Σ x_s v_s has ∂̄ x^c = 1 + m
        let h = build_algebra(&AlgebraKind::Quaternion).unwrap();
        let mut p = Polynomial::coordinate(&h, 0).unwrap();
        for s in 1..=3 {
            let term = Polynomial::coordinate(&h, s).unwrap().right_mul(&Element::basis(&h, s)).unwrap();
            p = p.sub(&term).unwrap();
        }
        assert_eq!(apply_operator(Operator::DbarLeft, &p), Polynomial::one(&h).scale(&int(4)));
        assert!(apply_operator(Operator::Laplacian, &p).is_zero());
    }
}
