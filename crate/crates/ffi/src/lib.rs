//! C interface to the wmk calculator.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `_free` function. Strings returned to C are NUL-terminated,
//! heap-allocated by this library and released with [`wmk_string_free`].
//! Every fallible call returns a [`WmkStatus`]; after a non-OK status,
//! [`wmk_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wmk::families::{FamilyKind, FamilySpec};
use wmk::fq::build_field;
use wmk::stringy::{mass_report, stringy_point_count, truncated_sum, Mode, StringyReport};
use wmk::strata::enumerate_strata;
use wmk::symq::rational_to_string;
use wmk::verify::{all_passed, run_checks, Level};
use wmk::Error;

/// Result of a call. Values are stable.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WmkStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An input hypothesis failed (bad prime, divisibility, field size).
    Precondition = 3,
    /// An internal consistency check failed.
    Internal = 4,
}

/// A validated family over its base field.
pub struct WmkFamily {
    spec: FamilySpec,
}

/// A stringy point count report.
pub struct WmkReport {
    report: StringyReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: WmkStatus, msg: impl Into<String>) -> WmkStatus {
    set_error(msg.into());
    status
}

fn from_error(err: Error) -> WmkStatus {
    let status = if err.is_precondition() { WmkStatus::Precondition } else { WmkStatus::Internal };
    fail(status, err.to_string())
}

/// Runs `f`, turning panics into `Internal` so they never cross the boundary.
fn guard(f: impl FnOnce() -> WmkStatus) -> WmkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(WmkStatus::Internal, "panic inside wmk"),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn write_string(out: *mut *mut c_char, s: String) -> WmkStatus {
    let p = into_c_string(s);
    if p.is_null() {
        return fail(WmkStatus::Internal, "output contained a NUL byte");
    }
    // SAFETY: callers check `out` for null before producing output.
    unsafe { *out = p };
    WmkStatus::Ok
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, WmkStatus> {
    serde_json::to_string(value).map_err(|e| fail(WmkStatus::Internal, e.to_string()))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next wmk call on the same thread.
#[no_mangle]
pub extern "C" fn wmk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds the family `kind` ("cyclic-l", "cyclic-ll", "sym-2", "sym-ll")
/// for the prime `l` over F_{3^r}.
///
/// # Safety
/// `kind` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wmk_family_new(kind: *const c_char, l: u32, r: u32, out: *mut *mut WmkFamily) -> WmkStatus {
    guard(|| {
        if kind.is_null() || out.is_null() {
            return fail(WmkStatus::NullPointer, "kind and out must not be null");
        }
        let Ok(kind) = CStr::from_ptr(kind).to_str() else {
            return fail(WmkStatus::InvalidUtf8, "family kind is not UTF-8");
        };
        let spec = kind.parse::<FamilyKind>().and_then(|k| FamilySpec::new(k, l, r));
        match spec {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(WmkFamily { spec }));
                WmkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a family. Null is ignored.
///
/// # Safety
/// `family` must come from [`wmk_family_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wmk_family_free(family: *mut WmkFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// q = 3^r of the family's field, or 0 for a null handle.
///
/// # Safety
/// `family` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wmk_family_q(family: *const WmkFamily) -> u32 {
    family.as_ref().map_or(0, |f| f.spec.q())
}

/// Order of the group G, or 0 for a null handle.
///
/// # Safety
/// `family` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wmk_family_group_order(family: *const WmkFamily) -> u64 {
    family.as_ref().map_or(0, |f| f.spec.kind.group_order(f.spec.l) as u64)
}

/// Computes the stringy point count. With `symbolic` false the report also
/// holds the value at the family's q. A positive `truncation` adds the
/// partial sum up to that index with its tail bound.
///
/// # Safety
/// `family` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wmk_stringy(
    family: *const WmkFamily,
    symbolic: bool,
    truncation: u32,
    out: *mut *mut WmkReport,
) -> WmkStatus {
    guard(|| {
        let (Some(family), false) = (family.as_ref(), out.is_null()) else {
            return fail(WmkStatus::NullPointer, "family and out must not be null");
        };
        let mode = if symbolic { Mode::Symbolic } else { Mode::Numeric };
        let mut report = match stringy_point_count(&family.spec, mode) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        if truncation > 0 {
            let t = enumerate_strata(&family.spec)
                .and_then(|s| truncated_sum(&s, u64::from(family.spec.q()), truncation));
            match t {
                Ok(t) => report.truncated = Some(t),
                Err(e) => return from_error(e),
            }
        }
        *out = Box::into_raw(Box::new(WmkReport { report }));
        WmkStatus::Ok
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `report` must come from [`wmk_stringy`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wmk_report_free(report: *mut WmkReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Euler characteristic of a crepant resolution.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wmk_report_euler(report: *const WmkReport, out: *mut i64) -> WmkStatus {
    guard(|| match (report.as_ref(), out.is_null()) {
        (Some(r), false) => {
            *out = r.report.euler_characteristic;
            WmkStatus::Ok
        }
        _ => fail(WmkStatus::NullPointer, "report and out must not be null"),
    })
}

/// The polynomial in q as text, e.g. "q^3 + 4*q^2 + 2*q".
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wmk_report_polynomial(report: *const WmkReport, out: *mut *mut c_char) -> WmkStatus {
    guard(|| match (report.as_ref(), out.is_null()) {
        (Some(r), false) => write_string(out, r.report.polynomial.to_string()),
        _ => fail(WmkStatus::NullPointer, "report and out must not be null"),
    })
}

/// The value at q as "num/den" text. Writes null for symbolic reports.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wmk_report_value(report: *const WmkReport, out: *mut *mut c_char) -> WmkStatus {
    guard(|| match (report.as_ref(), out.is_null()) {
        (Some(r), false) => match &r.report.numeric_value {
            Some(v) => write_string(out, rational_to_string(v)),
            None => {
                *out = ptr::null_mut();
                WmkStatus::Ok
            }
        },
        _ => fail(WmkStatus::NullPointer, "report and out must not be null"),
    })
}

/// The report serialized as JSON, in the same schema as the CLI.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wmk_report_json(report: *const WmkReport, out: *mut *mut c_char) -> WmkStatus {
    guard(|| match (report.as_ref(), out.is_null()) {
        (Some(r), false) => match to_json(&r.report) {
            Ok(s) => write_string(out, s),
            Err(status) => status,
        },
        _ => fail(WmkStatus::NullPointer, "report and out must not be null"),
    })
}

/// Runs the oracle suite at `level` (0 none, 1 fast, 2 full). Writes the
/// checks as a JSON array to `out_json` and whether all passed to `passed`.
///
/// # Safety
/// `family` must be a live handle; `passed` and `out_json` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wmk_verify_json(
    family: *const WmkFamily,
    level: u32,
    passed: *mut bool,
    out_json: *mut *mut c_char,
) -> WmkStatus {
    guard(|| {
        let (Some(family), false, false) = (family.as_ref(), passed.is_null(), out_json.is_null()) else {
            return fail(WmkStatus::NullPointer, "family, passed and out_json must not be null");
        };
        let level = match level {
            0 => Level::None,
            1 => Level::Fast,
            2 => Level::Full,
            n => return fail(WmkStatus::Precondition, format!("unknown verification level {n}")),
        };
        match run_checks(&family.spec, level) {
            Ok(checks) => match to_json(&checks) {
                Ok(s) => {
                    *passed = all_passed(&checks);
                    write_string(out_json, s)
                }
                Err(status) => status,
            },
            Err(e) => from_error(e),
        }
    })
}

/// The mass formula report for degree `n` as JSON; `r` = 0 leaves q
/// symbolic, otherwise q = 3^r.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wmk_mass_json(n: u32, r: u32, out: *mut *mut c_char) -> WmkStatus {
    guard(|| {
        if out.is_null() {
            return fail(WmkStatus::NullPointer, "out must not be null");
        }
        let field = match r {
            0 => None,
            r => match build_field(r) {
                Ok(f) => Some(f),
                Err(e) => return from_error(e),
            },
        };
        match mass_report(n, field.as_deref()).map_err(from_error).and_then(|m| to_json(&m)) {
            Ok(s) => write_string(out, s),
            Err(status) => status,
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wmk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
