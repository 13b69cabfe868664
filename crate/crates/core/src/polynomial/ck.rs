use num_bigint::BigInt;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::{factorial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Cauchy–Kovalevskaya extension of polynomial data on `x_0 = 0`:
/// `CK[f0] = Σ_k (-x_0)^k / k! · D^k f0` with `D = Σ_{s=1}^m v_s ∂_s`
/// applied from the left (or `f0 D^k` from the right). The series stops once
/// `D^k f0` vanishes.
pub fn ck_extension(f0: &Polynomial, side: Side) -> Result<Polynomial> {
    if f0.depends_on_x0() {
        return Err(Error::DependsOnX0);
    }
    let m = f0.nvars() - 1;
    let mut out = Polynomial::zero(f0.spec());
    let mut current = f0.clone();
    let mut k: u32 = 0;
    while !current.is_zero() {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        let coef = Rational::new(BigInt::from(sign), factorial(k));
        out = out.add(&current.mul_coordinate_power(0, k).scale(&coef))?;

        let mut next = Polynomial::zero(f0.spec());
        for s in 1..=m {
            let d = current.partial(s);
            if d.is_zero() {
                continue;
            }
            let term = match side {
                Side::Left => d.left_mul_basis(s),
                Side::Right => d.right_mul_basis(s),
            };
            next = next.add(&term)?;
        }
        current = next;
        k += 1;
    }
    Ok(out)
}
