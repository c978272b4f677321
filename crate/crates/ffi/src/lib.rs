//! C ABI over `jacobi-scattering`.
//!
//! Objects cross the boundary as opaque handles created from JSON and
//! released with the matching `*_free`. Every fallible call returns a
//! [`JscStatus`]; on failure `jsc_last_error` gives the message for the
//! calling thread. Strings returned by the library are freed with
//! `jsc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use jacobi_scattering::inverse;
use jacobi_scattering::jacobi::JacobiParams;
use jacobi_scattering::reconstruct;
use jacobi_scattering::scattering::{self, ScatteringData};
use jacobi_scattering::spectral::SpectralMeasure;
use jacobi_scattering::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JscStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Json = 3,
    Inadmissible = 4,
    Domain = 5,
    Numerical = 6,
    Unsupported = 7,
    Panic = 8,
}

/// Normalized or unnormalized spectral measure.
pub struct JscMeasure(SpectralMeasure);

/// Scattering data `{γ₁, γ₂; Z; μ; s}`.
pub struct JscData(ScatteringData);

/// Jacobi parameters with a free tail.
pub struct JscParams(JacobiParams);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> JscStatus {
    match e {
        Error::Json(_) => JscStatus::Json,
        Error::Admissibility(_) | Error::Inconsistent(_) | Error::Class(_) => {
            JscStatus::Inadmissible
        }
        Error::Resolution { .. }
        | Error::Truncation { .. }
        | Error::Pole { .. }
        | Error::Degenerate { .. } => JscStatus::Numerical,
        Error::UnsupportedGamma(..) => JscStatus::Unsupported,
        Error::Size(_) | Error::Domain(_) | Error::Io(_) => JscStatus::Domain,
    }
}

/// Runs `f`, recording errors and panics for `jsc_last_error`.
fn guard(f: impl FnOnce() -> Result<(), (JscStatus, String)>) -> JscStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JscStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            JscStatus::Panic
        }
    }
}

fn lib<T>(r: jacobi_scattering::Result<T>) -> Result<T, (JscStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn input_str<'a>(s: *const c_char) -> Result<&'a str, (JscStatus, String)> {
    if s.is_null() {
        return Err((JscStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (JscStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, (JscStatus, String)> {
    p.as_ref()
        .ok_or((JscStatus::NullPointer, "null handle".into()))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), (JscStatus, String)> {
    if out.is_null() {
        return Err((JscStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), (JscStatus, String)> {
    if out.is_null() {
        return Err((JscStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s)
        .map_err(|e| (JscStatus::Json, e.to_string()))?
        .into_raw();
    Ok(())
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, (JscStatus, String)> {
    serde_json::from_str(text).map_err(|e| (JscStatus::Json, e.to_string()))
}

fn dump<T: serde::Serialize>(value: &T) -> Result<String, (JscStatus, String)> {
    serde_json::to_string(value).map_err(|e| (JscStatus::Json, e.to_string()))
}

/// Message of the last failed call on this thread, or NULL. Free with `jsc_string_free`.
#[no_mangle]
pub extern "C" fn jsc_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |s| s.clone().into_raw())
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn jsc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn jsc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_measure_from_json(
    json: *const c_char,
    out: *mut *mut JscMeasure,
) -> JscStatus {
    guard(|| store(out, JscMeasure(parse(input_str(json)?)?)))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_measure_to_json(
    m: *const JscMeasure,
    out: *mut *mut c_char,
) -> JscStatus {
    guard(|| store_string(out, dump(&handle(m)?.0)?))
}

/// Total mass `∫ f dx + Σ σ_k`; NaN for a NULL handle.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jsc_measure_total_mass(m: *const JscMeasure) -> f64 {
    m.as_ref().map_or(f64::NAN, |m| m.0.total_mass())
}

/// # Safety
/// `m` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn jsc_measure_free(m: *mut JscMeasure) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_data_from_json(
    json: *const c_char,
    out: *mut *mut JscData,
) -> JscStatus {
    guard(|| store(out, JscData(parse(input_str(json)?)?)))
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_data_to_json(d: *const JscData, out: *mut *mut c_char) -> JscStatus {
    guard(|| store_string(out, dump(&handle(d)?.0)?))
}

/// Checks admissibility without running the inverse map.
///
/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn jsc_data_validate(d: *const JscData) -> JscStatus {
    guard(|| lib(inverse::validate_data(&handle(d)?.0)).map(drop))
}

/// # Safety
/// `d` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn jsc_data_free(d: *mut JscData) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_params_from_json(
    json: *const c_char,
    out: *mut *mut JscParams,
) -> JscStatus {
    guard(|| store(out, JscParams(parse(input_str(json)?)?)))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_params_to_json(
    p: *const JscParams,
    out: *mut *mut c_char,
) -> JscStatus {
    guard(|| store_string(out, dump(&handle(p)?.0)?))
}

/// `a_n` for `n ≥ 1` (`a_0 = 1`).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_params_a(p: *const JscParams, n: usize, out: *mut f64) -> JscStatus {
    guard(|| {
        let p = handle(p)?;
        let out = out
            .as_mut()
            .ok_or((JscStatus::NullPointer, "null output pointer".into()))?;
        *out = p.0.a(n);
        Ok(())
    })
}

/// `b_n` for `n ≥ 1`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_params_b(p: *const JscParams, n: usize, out: *mut f64) -> JscStatus {
    guard(|| {
        let p = handle(p)?;
        let out = out
            .as_mut()
            .ok_or((JscStatus::NullPointer, "null output pointer".into()))?;
        if n == 0 {
            return Err((JscStatus::Domain, "b is indexed from 1".into()));
        }
        *out = p.0.b(n);
        Ok(())
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn jsc_params_free(p: *mut JscParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Scattering data of a normalized measure.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_forward(m: *const JscMeasure, out: *mut *mut JscData) -> JscStatus {
    guard(|| {
        let data = lib(scattering::forward(&handle(m)?.0))?;
        store(out, JscData(data))
    })
}

/// Normalized spectral measure of admissible scattering data.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_inverse(d: *const JscData, out: *mut *mut JscMeasure) -> JscStatus {
    guard(|| {
        let m = lib(inverse::inverse(&handle(d)?.0))?;
        store(out, JscMeasure(m))
    })
}

/// Jacobi parameters of a measure with `γ = (0, 0)`, materialized up to `n_max`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jsc_reconstruct(
    m: *const JscMeasure,
    n_max: usize,
    out: *mut *mut JscParams,
) -> JscStatus {
    guard(|| {
        let p = lib(reconstruct::jacobi_from_spectral(&handle(m)?.0, n_max))?;
        store(out, JscParams(p.materialize(n_max)))
    })
}
