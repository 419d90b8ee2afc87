//! C ABI for keypoly.
//!
//! Every function returns a [`KpStatus`]; results come back through out
//! pointers. Handles are opaque and owned by the caller until passed to the
//! matching `_free`. On failure, [`kp_last_error`] describes what went wrong
//! on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use keypoly::classify;
use keypoly::compositions::avoids_km;
use keypoly::{Error, Model, Polynomial, WeakComposition};

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    OutOfRange = 5,
    BufferTooSmall = 6,
    /// A Rust panic was caught, e.g. coefficient overflow.
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KpModel {
    Demazure = 0,
    Kohnert = 1,
    Quasikey = 2,
}

impl From<KpModel> for Model {
    fn from(m: KpModel) -> Model {
        match m {
            KpModel::Demazure => Model::Demazure,
            KpModel::Kohnert => Model::Kohnert,
            KpModel::Quasikey => Model::Quasikey,
        }
    }
}

/// Opaque weak composition.
pub struct KpComposition(WeakComposition);

/// Opaque polynomial with integer coefficients.
pub struct KpPolynomial(Polynomial);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: KpStatus, msg: impl Into<String>) -> KpStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> KpStatus {
    let status = match e {
        Error::Parse { .. } => KpStatus::ParseError,
        Error::IndexOutOfRange { .. } => KpStatus::OutOfRange,
        _ => KpStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into [`KpStatus::Internal`].
fn guard(f: impl FnOnce() -> KpStatus) -> KpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(KpStatus::Internal, msg)
        }
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(KpStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

fn string_out(s: String, out: *mut *mut c_char) -> KpStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: caller checked `out` for null.
            unsafe { *out = c.into_raw() };
            KpStatus::Ok
        }
        Err(_) => fail(KpStatus::Internal, "string contains a nul byte"),
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn kp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses text such as `"0,2,1,2"` or `"[0,2,1,2]"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_composition_parse(text: *const c_char, out: *mut *mut KpComposition) -> KpStatus {
    guard(|| {
        non_null!(text, out);
        let Ok(s) = unsafe { CStr::from_ptr(text) }.to_str() else {
            return fail(KpStatus::InvalidUtf8, "text is not UTF-8");
        };
        match s.parse::<WeakComposition>() {
            Ok(alpha) => {
                unsafe { *out = Box::into_raw(Box::new(KpComposition(alpha))) };
                KpStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Builds a composition from `len` parts.
///
/// # Safety
/// `parts` must point to `len` readable values (it may be null when `len` is
/// 0) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kp_composition_from_parts(
    parts: *const u32,
    len: usize,
    out: *mut *mut KpComposition,
) -> KpStatus {
    guard(|| {
        non_null!(out);
        let parts = if len == 0 {
            Vec::new()
        } else {
            non_null!(parts);
            unsafe { std::slice::from_raw_parts(parts, len) }.to_vec()
        };
        unsafe { *out = Box::into_raw(Box::new(KpComposition(WeakComposition::new(parts)))) };
        KpStatus::Ok
    })
}

/// # Safety
/// `alpha` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kp_composition_free(alpha: *mut KpComposition) {
    if !alpha.is_null() {
        drop(unsafe { Box::from_raw(alpha) });
    }
}

/// # Safety
/// `alpha` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_composition_len(alpha: *const KpComposition, out: *mut usize) -> KpStatus {
    guard(|| {
        non_null!(alpha, out);
        unsafe { *out = (*alpha).0.len() };
        KpStatus::Ok
    })
}

/// Writes whether `alpha` avoids every KM pattern, i.e. whether its key
/// polynomial is multiplicity-free.
///
/// # Safety
/// `alpha` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_avoids_km(alpha: *const KpComposition, out: *mut bool) -> KpStatus {
    guard(|| {
        non_null!(alpha, out);
        unsafe { *out = avoids_km(&(*alpha).0) };
        KpStatus::Ok
    })
}

/// Expands the key polynomial of `alpha` with the chosen model.
///
/// # Safety
/// `alpha` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_key_polynomial(
    alpha: *const KpComposition,
    model: KpModel,
    out: *mut *mut KpPolynomial,
) -> KpStatus {
    guard(|| {
        non_null!(alpha, out);
        let p = Model::from(model).key_polynomial(unsafe { &(*alpha).0 });
        unsafe { *out = Box::into_raw(Box::new(KpPolynomial(p))) };
        KpStatus::Ok
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kp_polynomial_free(p: *mut KpPolynomial) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// # Safety
/// `p` must be a live handle; `nvars` and `nterms` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kp_polynomial_shape(
    p: *const KpPolynomial,
    nvars: *mut usize,
    nterms: *mut usize,
) -> KpStatus {
    guard(|| {
        non_null!(p, nvars, nterms);
        let p = unsafe { &(*p).0 };
        unsafe {
            *nvars = p.nvars();
            *nterms = p.len();
        }
        KpStatus::Ok
    })
}

/// Copies term `index` (terms are in ascending exponent order) into
/// `exponents[0..nvars]` and `coeff`.
///
/// # Safety
/// `p` must be a live handle, `exponents` must have room for `capacity`
/// values, and `coeff` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kp_polynomial_term(
    p: *const KpPolynomial,
    index: usize,
    exponents: *mut u32,
    capacity: usize,
    coeff: *mut i64,
) -> KpStatus {
    guard(|| {
        non_null!(p, exponents, coeff);
        let p = unsafe { &(*p).0 };
        if capacity < p.nvars() {
            return fail(KpStatus::BufferTooSmall, format!("need room for {} exponents", p.nvars()));
        }
        let Some((e, k)) = p.terms().nth(index) else {
            return fail(KpStatus::OutOfRange, format!("term {index} of {}", p.len()));
        };
        unsafe {
            ptr::copy_nonoverlapping(e.as_slice().as_ptr(), exponents, e.len());
            *coeff = k;
        }
        KpStatus::Ok
    })
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_polynomial_is_multiplicity_free(p: *const KpPolynomial, out: *mut bool) -> KpStatus {
    guard(|| {
        non_null!(p, out);
        unsafe { *out = (*p).0.is_multiplicity_free() };
        KpStatus::Ok
    })
}

/// Writes the terms as a JSON array of `{"exponents": [...], "coeff": c}`.
/// Free the string with [`kp_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_polynomial_to_json(p: *const KpPolynomial, out: *mut *mut c_char) -> KpStatus {
    guard(|| {
        non_null!(p, out);
        match serde_json::to_string(unsafe { &(*p).0 }) {
            Ok(s) => string_out(s, out),
            Err(e) => fail(KpStatus::Internal, e.to_string()),
        }
    })
}

/// Checks the classification over `{0..=max_part}^n` and writes the JSON
/// report; `passed` is false when counterexamples were found. `jobs` = 0 uses
/// every core.
///
/// # Safety
/// `report` and `passed` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kp_verify_classification(
    n: usize,
    max_part: u32,
    jobs: usize,
    report: *mut *mut c_char,
    passed: *mut bool,
) -> KpStatus {
    guard(|| {
        non_null!(report, passed);
        match classify::verify_classification(n, max_part, jobs) {
            Ok(r) => {
                unsafe { *passed = r.passed() };
                match serde_json::to_string(&r) {
                    Ok(s) => string_out(s, report),
                    Err(e) => fail(KpStatus::Internal, e.to_string()),
                }
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
