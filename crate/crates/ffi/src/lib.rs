//! C ABI over the `monogenic` crate.
//!
//! Objects are opaque handles created by `mono_*_new`-style constructors and
//! released with the matching `*_free`. Every fallible call returns a
//! [`MonoStatus`]; on failure [`mono_last_error`] describes the cause for the
//! calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use monogenic::algebra::{check_algebra_axioms, AxiomConfig};
use monogenic::integration::{build_quadrature, cauchy_integral, integrate, QuadratureRule, RuleKind};
use monogenic::kernel::{cauchy_kernel, FloatRadial};
use monogenic::polynomial::{
    apply_operator, ck_extension, fueter_polynomial, Association, FloatPolynomial, MultiIndex, Operator, Polynomial,
    Side,
};
use monogenic::{build_algebra, AlgebraKind, AlgebraSpec, Error};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    DimensionMismatch = 4,
    Singular = 5,
    Guard = 6,
    DegreeTooLarge = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoRuleKind {
    Sphere = 0,
    Ball = 1,
}

/// Opaque algebra handle.
pub struct MonoAlgebra {
    spec: Arc<AlgebraSpec>,
}

/// Opaque exact polynomial handle with a cached float evaluator.
pub struct MonoPolynomial {
    exact: Polynomial,
    float: FloatPolynomial,
}

/// Opaque Cauchy kernel handle.
pub struct MonoKernel {
    float: FloatRadial,
}

/// Opaque quadrature rule handle.
pub struct MonoRule {
    rule: QuadratureRule,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> MonoStatus {
    match e {
        Error::Json(_) | Error::Parse(_) | Error::InvalidSpec(_) => MonoStatus::Parse,
        Error::DimensionMismatch { .. } | Error::SpecMismatch { .. } => MonoStatus::DimensionMismatch,
        Error::SingularPoint | Error::ZeroNorm => MonoStatus::Singular,
        Error::Guard(_) => MonoStatus::Guard,
        Error::DegreeTooLarge { .. } => MonoStatus::DegreeTooLarge,
        _ => MonoStatus::InvalidArgument,
    }
}

struct Fail(MonoStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(MonoStatus::NullPointer, format!("`{what}` is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MonoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MonoStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MonoStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn as_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(MonoStatus::InvalidArgument, format!("`{what}` is not UTF-8")))
}

unsafe fn as_slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_coeffs(out: *mut f64, out_len: usize, coeffs: &[f64]) -> Result<(), Fail> {
    if out_len != coeffs.len() {
        return Err(Fail(
            MonoStatus::DimensionMismatch,
            format!("output buffer holds {out_len} values, need {}", coeffs.len()),
        ));
    }
    if out.is_null() {
        return Err(null("out"));
    }
    ptr::copy_nonoverlapping(coeffs.as_ptr(), out, coeffs.len());
    Ok(())
}

unsafe fn boxed<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    write_out(out, Box::into_raw(Box::new(value)), "out")
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mono_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mono_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from a `mono_*` function documented as returning an owned
/// string, or be null.
#[no_mangle]
pub unsafe extern "C" fn mono_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn owned_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(MonoStatus::InvalidArgument, "interior NUL".into()))?;
    write_out(out, c.into_raw(), "out")
}

// ---- algebras ------------------------------------------------------------

/// Builds a shipped algebra. `kind` is one of `complex`, `quaternion`,
/// `octonion`, `clifford`, `dual-quaternion`; `m < 0` selects the default.
///
/// # Safety
/// `kind` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_algebra_new(kind: *const c_char, m: i32, out: *mut *mut MonoAlgebra) -> MonoStatus {
    guard(|| {
        let kind = as_str(kind, "kind")?;
        let m = usize::try_from(m).ok();
        let spec = build_algebra(&AlgebraKind::parse(kind, m)?)?;
        boxed(out, MonoAlgebra { spec })
    })
}

/// Loads and validates an algebra from its JSON spec.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_algebra_from_json(json: *const c_char, out: *mut *mut MonoAlgebra) -> MonoStatus {
    guard(|| {
        let spec = AlgebraSpec::from_json(as_str(json, "json")?)?;
        boxed(out, MonoAlgebra { spec })
    })
}

/// Serializes the algebra as JSON; release the result with [`mono_string_free`].
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_algebra_to_json(alg: *const MonoAlgebra, out: *mut *mut c_char) -> MonoStatus {
    guard(|| {
        let alg = as_ref(alg, "alg")?;
        owned_string(out, alg.spec.to_json()?)
    })
}

/// # Safety
/// `alg` must be a handle from this library or null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn mono_algebra_free(alg: *mut MonoAlgebra) {
    free(alg)
}

/// Basis size of the algebra, or 0 for a null handle.
///
/// # Safety
/// `alg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mono_algebra_dim(alg: *const MonoAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.spec.dim_total())
}

/// `m`, the number of imaginary frame units, or 0 for a null handle.
///
/// # Safety
/// `alg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mono_algebra_m(alg: *const MonoAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.spec.m())
}

/// Runs the sampled axiom checks; `*all_passed` receives the verdict.
///
/// # Safety
/// `alg` must be a live handle and `all_passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_algebra_check(alg: *const MonoAlgebra, seed: u64, all_passed: *mut bool) -> MonoStatus {
    guard(|| {
        let alg = as_ref(alg, "alg")?;
        let report = check_algebra_axioms(&alg.spec, &AxiomConfig { sample_size: 32, seed });
        if !report.all_passed() {
            set_error(format!("failed: {}", report.failures().join(", ")));
        }
        write_out(all_passed, report.all_passed(), "all_passed")
    })
}

/// `out = a * b` in floating point; all buffers have `mono_algebra_dim` entries.
///
/// # Safety
/// Buffers must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn mono_algebra_mul(
    alg: *const MonoAlgebra,
    a: *const f64,
    b: *const f64,
    out: *mut f64,
    len: usize,
) -> MonoStatus {
    guard(|| {
        let alg = as_ref(alg, "alg")?;
        let d = alg.spec.dim_total();
        if len != d {
            return Err(Error::DimensionMismatch { expected: d, got: len }.into());
        }
        let product = alg.spec.mul_coeffs(as_slice(a, len, "a")?, as_slice(b, len, "b")?);
        write_coeffs(out, len, &product)
    })
}

// ---- polynomials ---------------------------------------------------------

fn wrap(exact: Polynomial) -> MonoPolynomial {
    let float = exact.to_float();
    MonoPolynomial { exact, float }
}

/// Fueter polynomial `P_k`; `k` has `m` entries.
///
/// # Safety
/// `k` must hold `len` values and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_fueter_polynomial(
    alg: *const MonoAlgebra,
    k: *const u32,
    len: usize,
    out: *mut *mut MonoPolynomial,
) -> MonoStatus {
    guard(|| {
        let alg = as_ref(alg, "alg")?;
        let k = MultiIndex::new(as_slice(k, len, "k")?.iter().copied());
        let p = fueter_polynomial(&alg.spec, &k, Association::RightToLeft)?;
        boxed(out, wrap(p))
    })
}

/// Left CK-extension of the monomial `x_1^k_1 ... x_m^k_m`.
///
/// # Safety
/// `k` must hold `len` values and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_ck_monomial(
    alg: *const MonoAlgebra,
    k: *const u32,
    len: usize,
    out: *mut *mut MonoPolynomial,
) -> MonoStatus {
    guard(|| {
        let alg = as_ref(alg, "alg")?;
        let k = MultiIndex::new(as_slice(k, len, "k")?.iter().copied());
        if k.len() != alg.spec.m() {
            return Err(Error::DimensionMismatch { expected: alg.spec.m(), got: k.len() }.into());
        }
        let one = monogenic::Element::one(&alg.spec);
        let p = ck_extension(&Polynomial::monomial(k.with_leading_zero(), &one), Side::Left)?;
        boxed(out, wrap(p))
    })
}

/// Parses a polynomial from JSON over `alg`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_polynomial_from_json(
    alg: *const MonoAlgebra,
    json: *const c_char,
    out: *mut *mut MonoPolynomial,
) -> MonoStatus {
    guard(|| {
        let alg = as_ref(alg, "alg")?;
        let p = Polynomial::from_json(&alg.spec, as_str(json, "json")?)?;
        boxed(out, wrap(p))
    })
}

/// Serializes a polynomial; release the result with [`mono_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_polynomial_to_json(p: *const MonoPolynomial, out: *mut *mut c_char) -> MonoStatus {
    guard(|| owned_string(out, as_ref(p, "p")?.exact.to_json()?))
}

/// Whether `dbar p` (left, or right when `right` is set) is exactly zero.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_polynomial_is_monogenic(
    p: *const MonoPolynomial,
    right: bool,
    out: *mut bool,
) -> MonoStatus {
    guard(|| {
        let p = as_ref(p, "p")?;
        let op = if right { Operator::DbarRight } else { Operator::DbarLeft };
        write_out(out, apply_operator(op, &p.exact).is_zero(), "out")
    })
}

/// Evaluates at `x` (`m + 1` coordinates) into `out` (`dim` values).
///
/// # Safety
/// `x` must hold `x_len` and `out` `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn mono_polynomial_eval(
    p: *const MonoPolynomial,
    x: *const f64,
    x_len: usize,
    out: *mut f64,
    out_len: usize,
) -> MonoStatus {
    guard(|| {
        let p = as_ref(p, "p")?;
        let value = p.float.eval(as_slice(x, x_len, "x")?)?;
        write_coeffs(out, out_len, value.coeffs())
    })
}

/// # Safety
/// `p` must be a handle from this library or null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn mono_polynomial_free(p: *mut MonoPolynomial) {
    free(p)
}

// ---- kernel --------------------------------------------------------------

/// The Cauchy kernel `E` of the algebra.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_kernel_new(alg: *const MonoAlgebra, out: *mut *mut MonoKernel) -> MonoStatus {
    guard(|| {
        let alg = as_ref(alg, "alg")?;
        let float = cauchy_kernel(&alg.spec)?.to_float();
        boxed(out, MonoKernel { float })
    })
}

/// Evaluates `E(x)`; returns `MONO_STATUS_SINGULAR` at the origin.
///
/// # Safety
/// `x` must hold `x_len` and `out` `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn mono_kernel_eval(
    kernel: *const MonoKernel,
    x: *const f64,
    x_len: usize,
    out: *mut f64,
    out_len: usize,
) -> MonoStatus {
    guard(|| {
        let k = as_ref(kernel, "kernel")?;
        let value = k.float.evaluate(as_slice(x, x_len, "x")?)?;
        write_coeffs(out, out_len, value.coeffs())
    })
}

/// # Safety
/// `kernel` must be a handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn mono_kernel_free(kernel: *mut MonoKernel) {
    free(kernel)
}

// ---- quadrature ----------------------------------------------------------

/// Quadrature rule on the sphere or ball of `radius` about `center`
/// (`m + 1` coordinates).
///
/// # Safety
/// `center` must hold `center_len` doubles and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mono_rule_new(
    kind: MonoRuleKind,
    center: *const f64,
    center_len: usize,
    radius: f64,
    resolution: usize,
    seed: u64,
    out: *mut *mut MonoRule,
) -> MonoStatus {
    guard(|| {
        let center = as_slice(center, center_len, "center")?;
        if center.is_empty() {
            return Err(Fail(MonoStatus::InvalidArgument, "center must have m + 1 >= 2 coordinates".into()));
        }
        let kind = match kind {
            MonoRuleKind::Sphere => RuleKind::SphereSurface,
            MonoRuleKind::Ball => RuleKind::BallVolume,
        };
        let rule = build_quadrature(kind, center, radius, center.len() - 1, resolution, seed)?;
        boxed(out, MonoRule { rule })
    })
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `rule` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mono_rule_len(rule: *const MonoRule) -> usize {
    rule.as_ref().map_or(0, |r| r.rule.len())
}

/// Sum of the weights, or NaN for a null handle.
///
/// # Safety
/// `rule` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mono_rule_weight_sum(rule: *const MonoRule) -> f64 {
    rule.as_ref().map_or(f64::NAN, |r| r.rule.weight_sum())
}

/// `∫ p` over the rule.
///
/// # Safety
/// Handles must be live; `out` must hold `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn mono_integrate(
    rule: *const MonoRule,
    p: *const MonoPolynomial,
    out: *mut f64,
    out_len: usize,
) -> MonoStatus {
    guard(|| {
        let value = integrate(&as_ref(rule, "rule")?.rule, &as_ref(p, "p")?.float)?;
        write_coeffs(out, out_len, value.coeffs())
    })
}

/// Cauchy integral of `p` over a sphere rule at `x`. `*reliable` is false
/// when `x` lies within a tenth of the radius of the sphere.
///
/// # Safety
/// Handles must be live; `x` holds `x_len`, `out` holds `out_len` doubles;
/// `reliable` may be null.
#[no_mangle]
pub unsafe extern "C" fn mono_cauchy_integral(
    rule: *const MonoRule,
    p: *const MonoPolynomial,
    x: *const f64,
    x_len: usize,
    out: *mut f64,
    out_len: usize,
    reliable: *mut bool,
) -> MonoStatus {
    guard(|| {
        let rule = &as_ref(rule, "rule")?.rule;
        let p = as_ref(p, "p")?;
        let e = cauchy_integral(rule, &p.float, as_slice(x, x_len, "x")?)?;
        write_coeffs(out, out_len, e.value.coeffs())?;
        if !reliable.is_null() {
            reliable.write(e.reliable);
        }
        Ok(())
    })
}

/// # Safety
/// `rule` must be a handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn mono_rule_free(rule: *mut MonoRule) {
    free(rule)
}
