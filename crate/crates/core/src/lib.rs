//! Monogenic functions over finite-dimensional real alternative *-algebras.
//!
//! The crate is organized bottom-up:
//!
//! * [`algebra`]: structure-constant algebras (octonions, Clifford algebras,
//!   dual quaternions, ...) with exact arithmetic and axiom checks.
//! * [`polynomial`]: exact polynomials on the hypercomplex subspace `M`,
//!   Fueter variables and polynomials, CK-extension and the Cauchy–Riemann
//!   family of differential operators.
//! * [`kernel`]: the Cauchy kernel and its derivatives as exact
//!   radial-rational functions.
//! * [`integration`]: quadrature on balls and spheres and the integral
//!   formulas built on it (Cauchy, Cauchy–Pompeiu, Teodorescu, mean value,
//!   derivative formula, Taylor evaluation).
//! * [`cli`]: the verification suites behind the `monogenic` binary.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod integration;
pub mod kernel;
pub mod polynomial;
pub mod scalar;

pub use algebra::{build_algebra, AlgebraKind, AlgebraSpec, Element};
pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
