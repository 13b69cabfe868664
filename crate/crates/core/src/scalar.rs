//! Scalar tracks: exact rationals for identities, binary64 for quadrature.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive};

use crate::algebra::{AlgebraSpec, ProductTable};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A real scalar field usable as algebra coefficients.
pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialEq + Debug + Send + Sync + 'static {
    fn from_rational(r: &Rational) -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// The sparse product table of `spec` on this track.
    fn table(spec: &AlgebraSpec) -> &ProductTable<Self>;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn table(spec: &AlgebraSpec) -> &ProductTable<Self> {
        &spec.exact_table
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn table(spec: &AlgebraSpec) -> &ProductTable<Self> {
        &spec.float_table
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact conversion of a finite binary64 value.
pub fn rational_from_f64(v: f64) -> Result<Rational> {
    Rational::from_f64(v).ok_or_else(|| Error::Parse(format!("non-finite value {v}")))
}

/// Serializes as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| Error::Parse(format!("`{s}` is not a rational of the form p/q")))
}

/// Exact square root of a nonnegative rational, if it exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
