//! C ABI for the `qtheight` library.
//!
//! Conventions:
//! - Every fallible call returns a [`QthStatus`]; `QTH_OK` (0) means success.
//! - On failure, a thread-local message is readable via [`qth_last_error`]
//!   until the next failing call on the same thread.
//! - Polynomials are opaque handles created by [`qth_poly_parse`] and released
//!   with [`qth_poly_free`]. Strings returned by the library are released with
//!   [`qth_string_free`]. Handles are not thread-safe; share nothing, or guard
//!   each handle with a mutex.
//! - Expression syntax matches the `qth` CLI: integer literals, variables
//!   `x y z T`, operators `+ - * / ^`, parentheses.
//!
//! The C header is generated into `include/qtheight.h` at build time.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use qtheight::adelic::{height_p1, height_pn, product_formula_defect, ProjectivePointQT};
use qtheight::cyclotomic::{is_cyclotomic_product, TorsionStatus};
use qtheight::error::Error;
use qtheight::exact::{IntPoly, RatFunc};
use qtheight::harness::{scan, write_rows, CorpusSpec, HarnessConfig, OutputFormat};
use qtheight::mahler::{
    height_from_minpoly, mahler_roots_bits, MeasureResult, TorusQuadratureConfig,
};
use qtheight::parse::parse_expression;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum QthStatus {
    /// Success.
    QTH_OK = 0,
    /// A required pointer argument was null.
    QTH_NULL_ARGUMENT = 1,
    /// Expression syntax error; see qth_last_error().
    QTH_PARSE_ERROR = 2,
    /// Input outside the mathematical domain of the operation.
    QTH_DOMAIN_ERROR = 3,
    /// Evaluation at a pole.
    QTH_POLE_ERROR = 4,
    /// A numeric routine did not reach the requested accuracy.
    QTH_NONCONVERGENCE = 5,
    /// A configured size bound was exceeded.
    QTH_CAPACITY_EXCEEDED = 6,
    /// An internal invariant failed; the operation was aborted safely.
    QTH_INTERNAL_PANIC = 7,
}

/// A univariate integer polynomial (opaque).
pub struct QthPoly {
    inner: IntPoly,
}

/// A computed measure: value with a rigorous error bound.
#[repr(C)]
pub struct QthMeasure {
    /// The computed value (a natural logarithm).
    pub value: f64,
    /// Absolute error bound on `value`.
    pub error_bound: f64,
    /// Number of integrand or root evaluations spent.
    pub evals: u64,
    /// True when the requested tolerance was not met; `error_bound` stays honest.
    pub warning: bool,
}

/// Torsion verdicts for qth_cyclotomic_test.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum QthTorsion {
    /// All roots are roots of unity (certified exactly).
    QTH_TORSION = 0,
    /// Some root lies off the unit circle (measure exceeds 3x its bound).
    QTH_NOT_TORSION = 1,
    /// Neither certificate could be established.
    QTH_TORSION_INCONCLUSIVE = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> QthStatus {
    match e {
        Error::Parse { .. } => QthStatus::QTH_PARSE_ERROR,
        Error::Domain(_) => QthStatus::QTH_DOMAIN_ERROR,
        Error::Pole(_) => QthStatus::QTH_POLE_ERROR,
        Error::Precision { .. } => QthStatus::QTH_NONCONVERGENCE,
        Error::Capacity(_) => QthStatus::QTH_CAPACITY_EXCEEDED,
    }
}

fn fail(e: &Error) -> QthStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// Wraps an FFI body: catches panics so they never unwind across the ABI.
fn guarded(body: impl FnOnce() -> QthStatus) -> QthStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".to_string());
            set_error(&msg);
            QthStatus::QTH_INTERNAL_PANIC
        }
    }
}

/// Reads a required UTF-8 C string argument.
///
/// # Safety
/// `text` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, QthStatus> {
    if text.is_null() {
        set_error("null string argument");
        return Err(QthStatus::QTH_NULL_ARGUMENT);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        QthStatus::QTH_PARSE_ERROR
    })
}

fn write_measure(out: *mut QthMeasure, m: &MeasureResult) {
    unsafe {
        (*out).value = m.value;
        (*out).error_bound = m.error_bound;
        (*out).evals = m.evals;
        (*out).warning = m.warning;
    }
}

fn give_string(out: *mut *mut c_char, s: String) -> QthStatus {
    let sanitized: String = s.chars().filter(|&c| c != '\0').collect();
    match CString::new(sanitized) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            QthStatus::QTH_OK
        }
        Err(_) => {
            set_error("string conversion failed");
            QthStatus::QTH_INTERNAL_PANIC
        }
    }
}

/// Returns the message for the most recent failure on this thread.
/// The pointer is valid until the next failing call on the same thread.
/// Never null; empty string when no failure has occurred.
#[no_mangle]
pub extern "C" fn qth_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses a univariate integer polynomial (variable `x` or `T`) into a handle.
/// On success writes a handle to `*out`; release it with qth_poly_free.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid to write.
#[no_mangle]
pub unsafe extern "C" fn qth_poly_parse(text: *const c_char, out: *mut *mut QthPoly) -> QthStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output argument");
            return QthStatus::QTH_NULL_ARGUMENT;
        }
        let s = match read_str(text) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let parsed = match parse_expression(s).and_then(|p| p.to_int_poly()) {
            Ok((p, _var)) => p,
            Err(e) => return fail(&e),
        };
        *out = Box::into_raw(Box::new(QthPoly { inner: parsed }));
        QthStatus::QTH_OK
    })
}

/// Releases a polynomial handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle obtained from this library, released once.
#[no_mangle]
pub unsafe extern "C" fn qth_poly_free(p: *mut QthPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree of the polynomial (0 for constants, including the zero polynomial).
///
/// # Safety
/// `p` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn qth_poly_degree(p: *const QthPoly) -> u64 {
    if p.is_null() {
        return 0;
    }
    (*p).inner.deg_or_zero() as u64
}

/// Renders the polynomial in the expression syntax (variable `x`).
/// Release the string with qth_string_free.
///
/// # Safety
/// `p` must be a valid handle; `out` must be valid to write.
#[no_mangle]
pub unsafe extern "C" fn qth_poly_render(p: *const QthPoly, out: *mut *mut c_char) -> QthStatus {
    guarded(|| {
        if p.is_null() || out.is_null() {
            set_error("null argument");
            return QthStatus::QTH_NULL_ARGUMENT;
        }
        give_string(out, (*p).inner.render("x"))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, released once.
#[no_mangle]
pub unsafe extern "C" fn qth_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Mahler measure of the polynomial via certified root isolation at the given
/// working precision (pass 0 for the default of 128 bits).
///
/// # Safety
/// `f` must be a valid handle; `out` must be valid to write.
#[no_mangle]
pub unsafe extern "C" fn qth_mahler(
    f: *const QthPoly,
    precision_bits: u32,
    out: *mut QthMeasure,
) -> QthStatus {
    guarded(|| {
        if f.is_null() || out.is_null() {
            set_error("null argument");
            return QthStatus::QTH_NULL_ARGUMENT;
        }
        let bits = if precision_bits == 0 { 128 } else { precision_bits };
        match mahler_roots_bits(&(*f).inner, bits) {
            Ok(m) => {
                write_measure(out, &m);
                QthStatus::QTH_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Classical Weil height of a root of the (irreducible) polynomial:
/// the Mahler measure divided by the degree.
///
/// # Safety
/// `f` must be a valid handle; `out` must be valid to write.
#[no_mangle]
pub unsafe extern "C" fn qth_weil_height(f: *const QthPoly, out: *mut QthMeasure) -> QthStatus {
    guarded(|| {
        if f.is_null() || out.is_null() {
            set_error("null argument");
            return QthStatus::QTH_NULL_ARGUMENT;
        }
        match height_from_minpoly(&(*f).inner) {
            Ok(m) => {
                write_measure(out, &m);
                QthStatus::QTH_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Exact test whether every root of the polynomial is a root of unity
/// (equivalently, the polynomial is a signed monomial times a product of
/// cyclotomic polynomials). Writes the verdict and the numeric measure used
/// for the negative direction.
///
/// # Safety
/// `f` must be a valid handle; `verdict` and `measure` must be valid to write.
#[no_mangle]
pub unsafe extern "C" fn qth_cyclotomic_test(
    f: *const QthPoly,
    verdict: *mut QthTorsion,
    measure: *mut QthMeasure,
) -> QthStatus {
    guarded(|| {
        if f.is_null() || verdict.is_null() || measure.is_null() {
            set_error("null argument");
            return QthStatus::QTH_NULL_ARGUMENT;
        }
        match is_cyclotomic_product(&(*f).inner) {
            Ok(v) => {
                *verdict = match v.status {
                    TorsionStatus::Torsion => QthTorsion::QTH_TORSION,
                    TorsionStatus::NotTorsion => QthTorsion::QTH_NOT_TORSION,
                    TorsionStatus::Inconclusive => QthTorsion::QTH_TORSION_INCONCLUSIVE,
                };
                write_measure(measure, &v.numeric_measure);
                QthStatus::QTH_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Sum of log|phi| over all places of the adelic structure on Q(T); vanishes
/// within the error bound. `phi_text` is a rational function of `T`;
/// `tol` <= 0 selects the default quadrature tolerance of 1e-8.
///
/// # Safety
/// `phi_text` must be a valid NUL-terminated string; `out` valid to write.
#[no_mangle]
pub unsafe extern "C" fn qth_product_formula_defect(
    phi_text: *const c_char,
    tol: f64,
    out: *mut QthMeasure,
) -> QthStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output argument");
            return QthStatus::QTH_NULL_ARGUMENT;
        }
        let s = match read_str(phi_text) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let phi = match parse_expression(s).and_then(|p| p.to_ratfunc()) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        let cfg = TorusQuadratureConfig::with_tol(if tol > 0.0 { tol } else { 1e-8 });
        match product_formula_defect(&phi, &cfg) {
            Ok(m) => {
                write_measure(out, &m);
                QthStatus::QTH_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Height of a projective point over Q(T). `coords_text` holds comma-separated
/// coordinates, each a rational function of `T` (at least two);
/// `tol` <= 0 selects the default tolerance.
///
/// # Safety
/// `coords_text` must be a valid NUL-terminated string; `out` valid to write.
#[no_mangle]
pub unsafe extern "C" fn qth_point_height(
    coords_text: *const c_char,
    tol: f64,
    out: *mut QthMeasure,
) -> QthStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output argument");
            return QthStatus::QTH_NULL_ARGUMENT;
        }
        let s = match read_str(coords_text) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let mut coords: Vec<RatFunc> = Vec::new();
        for part in s.split(',') {
            match parse_expression(part.trim()).and_then(|p| p.to_ratfunc()) {
                Ok(r) => coords.push(r),
                Err(e) => return fail(&e),
            }
        }
        let n = coords.len();
        let point = match ProjectivePointQT::new(coords) {
            Ok(p) => p,
            Err(e) => return fail(&e),
        };
        let cfg = if tol > 0.0 {
            TorusQuadratureConfig::with_tol(tol)
        } else {
            TorusQuadratureConfig::default()
        };
        let r = if n == 2 {
            height_p1(&point, &cfg)
        } else {
            height_pn(&point, &cfg)
        };
        match r {
            Ok(m) => {
                write_measure(out, &m);
                QthStatus::QTH_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Exhaustive scan of primitive irreducible integer polynomials of degree at
/// most `deg_max` with |coefficients| <= `coeff_bound`: measure, height, and
/// margin against the bound (c/d)(log log 3d / log 3d)^3 with c = 1/4.
/// Writes the full report as JSON lines; release with qth_string_free.
/// Output is byte-identical across runs for identical arguments.
///
/// # Safety
/// `jsonl_out` must be valid to write.
#[no_mangle]
pub unsafe extern "C" fn qth_scan_exhaustive(
    deg_max: u64,
    coeff_bound: i64,
    jsonl_out: *mut *mut c_char,
) -> QthStatus {
    guarded(|| {
        if jsonl_out.is_null() {
            set_error("null output argument");
            return QthStatus::QTH_NULL_ARGUMENT;
        }
        let cfg = HarnessConfig::default();
        let spec = CorpusSpec::Exhaustive {
            deg_max: deg_max as usize,
            coeff_bound,
        };
        let rows = match scan(&spec, &cfg) {
            Ok(rows) => rows,
            Err(e) => return fail(&e),
        };
        let mut buf: Vec<u8> = Vec::new();
        if let Err(e) = write_rows(&rows, OutputFormat::Jsonl, &mut buf) {
            return fail(&e);
        }
        match String::from_utf8(buf) {
            Ok(s) => give_string(jsonl_out, s),
            Err(_) => {
                set_error("report is not valid UTF-8");
                QthStatus::QTH_INTERNAL_PANIC
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn measure_zeroed() -> QthMeasure {
        QthMeasure {
            value: 0.0,
            error_bound: 0.0,
            evals: 0,
            warning: false,
        }
    }

    #[test]
    fn poly_lifecycle_and_mahler() {
        unsafe {
            let text = c("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");
            let mut p: *mut QthPoly = ptr::null_mut();
            assert!(qth_poly_parse(text.as_ptr(), &mut p) == QthStatus::QTH_OK);
            assert_eq!(qth_poly_degree(p), 10);

            let mut rendered: *mut c_char = ptr::null_mut();
            assert!(qth_poly_render(p, &mut rendered) == QthStatus::QTH_OK);
            let s = CStr::from_ptr(rendered).to_str().unwrap().to_string();
            assert!(s.starts_with("x^10"));
            qth_string_free(rendered);

            let mut m = measure_zeroed();
            assert!(qth_mahler(p, 0, &mut m) == QthStatus::QTH_OK);
            assert!((m.value - 0.1623576120).abs() < 1e-9);
            assert!(!m.warning);

            let mut h = measure_zeroed();
            assert!(qth_weil_height(p, &mut h) == QthStatus::QTH_OK);
            assert!((h.value - m.value / 10.0).abs() < 1e-12);

            qth_poly_free(p);
        }
    }

    #[test]
    fn error_paths_set_messages() {
        unsafe {
            let mut p: *mut QthPoly = ptr::null_mut();
            let bad = c("x + + ) 1");
            let st = qth_poly_parse(bad.as_ptr(), &mut p);
            assert!(st == QthStatus::QTH_PARSE_ERROR);
            let msg = CStr::from_ptr(qth_last_error()).to_str().unwrap();
            assert!(msg.contains("parse error"), "{msg}");

            assert!(qth_poly_parse(ptr::null(), &mut p) == QthStatus::QTH_NULL_ARGUMENT);

            // reducible input to the height
            let sq = c("x^2-1");
            assert!(qth_poly_parse(sq.as_ptr(), &mut p) == QthStatus::QTH_OK);
            let mut m = measure_zeroed();
            assert!(qth_weil_height(p, &mut m) == QthStatus::QTH_DOMAIN_ERROR);
            let msg = CStr::from_ptr(qth_last_error()).to_str().unwrap();
            assert!(msg.contains("irreducible"), "{msg}");
            qth_poly_free(p);
        }
    }

    #[test]
    fn torsion_product_formula_and_point_height() {
        unsafe {
            let mut p: *mut QthPoly = ptr::null_mut();
            let cyc = c("x^4+x^3+x^2+x+1");
            assert!(qth_poly_parse(cyc.as_ptr(), &mut p) == QthStatus::QTH_OK);
            let mut v = QthTorsion::QTH_NOT_TORSION;
            let mut m = measure_zeroed();
            assert!(qth_cyclotomic_test(p, &mut v, &mut m) == QthStatus::QTH_OK);
            assert!(v == QthTorsion::QTH_TORSION);
            assert!(m.value.abs() <= 1e-10);
            qth_poly_free(p);

            let phi = c("(T^2-2)/(3*T)");
            let mut d = measure_zeroed();
            assert!(qth_product_formula_defect(phi.as_ptr(), 0.0, &mut d) == QthStatus::QTH_OK);
            assert!(d.value.abs() <= 1e-6, "{}", d.value);

            let coords = c("1, T+1");
            let mut h = measure_zeroed();
            assert!(qth_point_height(coords.as_ptr(), 1e-8, &mut h) == QthStatus::QTH_OK);
            assert!((h.value - 0.3230659472).abs() <= 1e-6, "{}", h.value);
        }
    }

    #[test]
    fn scan_is_deterministic_through_ffi() {
        unsafe {
            let mut a: *mut c_char = ptr::null_mut();
            let mut b: *mut c_char = ptr::null_mut();
            assert!(qth_scan_exhaustive(3, 1, &mut a) == QthStatus::QTH_OK);
            assert!(qth_scan_exhaustive(3, 1, &mut b) == QthStatus::QTH_OK);
            let sa = CStr::from_ptr(a).to_str().unwrap().to_string();
            let sb = CStr::from_ptr(b).to_str().unwrap().to_string();
            assert_eq!(sa, sb);
            assert!(sa.lines().count() > 10);
            assert!(sa.lines().all(|l| l.starts_with("{\"polynomial\":")));
            qth_string_free(a);
            qth_string_free(b);
        }
    }
}
