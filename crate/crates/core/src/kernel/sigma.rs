use std::f64::consts::PI;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{factorial, format_rational, Rational, Scalar};

/// `σ_m = 2 Γ(1/2)^{m+1} / Γ((m+1)/2)`, the area of the unit sphere in
/// `R^{m+1}`, held exactly as `rational · π^{pi_power}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceConstant {
    pub m: usize,
    #[serde(serialize_with = "ser_rational")]
    rational: Rational,
    pi_power: u32,
    pub value: f64,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl SurfaceConstant {
    pub fn rational(&self) -> &Rational {
        &self.rational
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }
}

pub fn surface_area_sigma(m: usize) -> Result<SurfaceConstant> {
    if m == 0 {
        return Err(Error::InvalidParameter("surface constant needs m >= 1".into()));
    }
    let (rational, pi_power) = if m % 2 == 1 {
        // Γ(n) = (n-1)! with n = (m+1)/2
        let n = (m as u32).div_ceil(2);
        (Rational::new(BigInt::from(2), factorial(n - 1)), n)
    } else {
        // Γ(n + 1/2) = (2n)! √π / (4^n n!) with n = m/2
        let n = m as u32 / 2;
        let num = BigInt::from(2) * BigInt::from(4).pow(n) * factorial(n);
        (Rational::new(num, factorial(2 * n)), n)
    };
    let value = f64::from_rational(&rational) * PI.powi(pi_power as i32);
    Ok(SurfaceConstant { m, rational, pi_power, value })
}
