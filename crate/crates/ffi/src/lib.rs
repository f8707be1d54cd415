//! C interface to `ordrev`.
//!
//! Families are opaque handles created by [`ordrev_family_parse`] and released
//! with [`ordrev_family_free`]. Every fallible call returns an
//! [`OrdrevStatus`]; on failure [`ordrev_last_error`] describes the cause.
//! Strings handed out by the library must be released with
//! [`ordrev_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ordrev::dsl;
use ordrev::family::FamilyPresentation;
use ordrev::report::Report;
use ordrev::witness::oracle::{oracle_search_family, OracleBounds};
use ordrev::witness::verify::{verify_witness, WitnessInput, DEFAULT_DEPTH};
use ordrev::witness::WitnessPlan;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdrevStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidFamily = 4,
    InvalidWitness = 5,
    WitnessRejected = 6,
    InvariantViolation = 7,
    Panic = 8,
}

/// A parsed, normalized family.
pub struct OrdrevFamily {
    family: FamilyPresentation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Outcome<T> = Result<T, (OrdrevStatus, String)>;

fn guard(body: impl FnOnce() -> Outcome<()>) -> OrdrevStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => OrdrevStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OrdrevStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Outcome<&'a str> {
    if p.is_null() {
        return Err((OrdrevStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (OrdrevStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn family_ref<'a>(p: *const OrdrevFamily) -> Outcome<&'a FamilyPresentation> {
    p.as_ref()
        .map(|h| &h.family)
        .ok_or((OrdrevStatus::NullPointer, "family is null".to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Outcome<()> {
    let s = CString::new(text).map_err(|e| (OrdrevStatus::Panic, e.to_string()))?;
    *out = s.into_raw();
    Ok(())
}

fn check_out<T>(out: *mut T) -> Outcome<()> {
    if out.is_null() {
        Err((OrdrevStatus::NullPointer, "output pointer is null".to_string()))
    } else {
        Ok(())
    }
}

fn depth_or_default(depth: usize) -> usize {
    if depth == 0 {
        DEFAULT_DEPTH
    } else {
        depth
    }
}

/// Parses `text` in the family language into a new handle stored at `out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ordrev_family_parse(
    text: *const c_char,
    out: *mut *mut OrdrevFamily,
) -> OrdrevStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let text = read_str(text, "text")?;
        let parsed = dsl::parse(text).map_err(|e| (OrdrevStatus::ParseError, e.render(text)))?;
        let family = parsed
            .normalize()
            .map_err(|e| (OrdrevStatus::InvalidFamily, e.to_string()))?;
        *out = Box::into_raw(Box::new(OrdrevFamily { family }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `family` must come from [`ordrev_family_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ordrev_family_free(family: *mut OrdrevFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Writes the verdict to `out`.
///
/// # Safety
/// `family` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ordrev_is_reversible(
    family: *const OrdrevFamily,
    out: *mut bool,
) -> OrdrevStatus {
    guard(|| {
        check_out(out)?;
        let f = family_ref(family)?;
        let verdict =
            ordrev::decide(f).map_err(|e| (OrdrevStatus::InvalidFamily, e.to_string()))?;
        *out = verdict.reversible;
        Ok(())
    })
}

/// Builds the JSON report, verifying any witness to `depth` indices
/// (0 selects the default). The string at `out` is freed with
/// [`ordrev_string_free`]. A report that records invariant violations is
/// still written, with status `InvariantViolation`.
///
/// # Safety
/// `family` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ordrev_decide_json(
    family: *const OrdrevFamily,
    depth: usize,
    out: *mut *mut c_char,
) -> OrdrevStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let f = family_ref(family)?;
        let report = Report::build(f, depth_or_default(depth))
            .map_err(|e| (OrdrevStatus::InvalidFamily, e.to_string()))?;
        write_string(out, report.to_json())?;
        match report.violations.first() {
            Some(v) => Err((OrdrevStatus::InvariantViolation, v.clone())),
            None => Ok(()),
        }
    })
}

/// Checks a witness plan given as JSON against `family`. On success the
/// verification summary is written to `out` as JSON; a rejected plan yields
/// `WitnessRejected` and the reason in [`ordrev_last_error`].
///
/// # Safety
/// `family` must be a live handle, `plan_json` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ordrev_verify_witness_json(
    family: *const OrdrevFamily,
    plan_json: *const c_char,
    depth: usize,
    out: *mut *mut c_char,
) -> OrdrevStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let f = family_ref(family)?;
        let text = read_str(plan_json, "plan")?;
        let plan: WitnessPlan = serde_json::from_str(text)
            .map_err(|e| (OrdrevStatus::InvalidWitness, e.to_string()))?;
        let summary = verify_witness(WitnessInput::Family(f), &plan, depth_or_default(depth))
            .map_err(|r| (OrdrevStatus::WitnessRejected, r.to_string()))?;
        let json = serde_json::to_string(&summary).map_err(|e| (OrdrevStatus::Panic, e.to_string()))?;
        write_string(out, json)
    })
}

/// Searches exhaustively for a witness within the bounds. `out` receives the
/// plan as JSON, or `null` when none exists.
///
/// # Safety
/// `family` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ordrev_oracle_json(
    family: *const OrdrevFamily,
    max_target: u64,
    max_coeff: u64,
    out: *mut *mut c_char,
) -> OrdrevStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let f = family_ref(family)?;
        let found = oracle_search_family(f, OracleBounds::new(max_target, max_coeff));
        let json = serde_json::to_string(&found).map_err(|e| (OrdrevStatus::Panic, e.to_string()))?;
        write_string(out, json)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ordrev_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ordrev_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// The library version as a static string.
#[no_mangle]
pub extern "C" fn ordrev_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
