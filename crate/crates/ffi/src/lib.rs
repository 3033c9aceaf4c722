//! C ABI over `gpbalance`.
//!
//! Every function returns a [`GpbStatus`]; results go through out-pointers.
//! Handles are opaque and must be released with their matching `*_free`.
//! Strings returned by the library are released with [`gpb_string_free`].
//! On failure, [`gpb_last_error`] gives a message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gpbalance::balance::{find_threshold, full_report};
use gpbalance::formulas::verify::verify_formulas;
use gpbalance::{distance_profile, BalanceReport, DistanceProfile, Error, GpParams, GpVertex, VertexKind, WCount};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    OutOfRange = 3,
    OutOfDomain = 4,
    NotCovered = 5,
    Consistency = 6,
    Serialization = 7,
    Panic = 8,
}

/// Opaque per-ℓ verdict table for one GP(n,k).
pub struct GpbReport(BalanceReport);

/// Opaque distance profile for one GP(n,k).
pub struct GpbProfile(DistanceProfile);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpbVertexKind {
    Outer = 0,
    Inner = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GpbVertex {
    pub kind: GpbVertexKind,
    pub index: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GpbWCount {
    pub closer_to_x: usize,
    pub closer_to_y: usize,
    pub equidistant: usize,
}

/// `present` is false when every pair at the distance is balanced.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GpbWitness {
    pub present: bool,
    pub x: GpbVertex,
    pub y: GpbVertex,
    pub count: GpbWCount,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: GpbStatus, msg: impl Into<String>) -> GpbStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> GpbStatus {
    let status = match e {
        Error::InvalidParams(_) | Error::InvalidPair(..) | Error::MalformedGraph(_) | Error::Disconnected(_) => {
            GpbStatus::InvalidParams
        }
        Error::OutOfRange { .. } => GpbStatus::OutOfRange,
        Error::OutOfDomain(_) => GpbStatus::OutOfDomain,
        Error::NotCovered(_) => GpbStatus::NotCovered,
        Error::Consistency(_) | Error::Manifest { .. } | Error::EdgeList { .. } => GpbStatus::Consistency,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> GpbStatus) -> GpbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(GpbStatus::Panic, "internal panic"))
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(GpbStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

fn to_c(v: GpVertex) -> GpbVertex {
    let kind = match v.kind {
        VertexKind::Outer => GpbVertexKind::Outer,
        VertexKind::Inner => GpbVertexKind::Inner,
    };
    GpbVertex { kind, index: v.index }
}

fn from_c(v: GpbVertex) -> GpVertex {
    match v.kind {
        GpbVertexKind::Outer => GpVertex::outer(v.index),
        GpbVertexKind::Inner => GpVertex::inner(v.index),
    }
}

fn count_to_c(w: WCount) -> GpbWCount {
    GpbWCount { closer_to_x: w.closer_to_x, closer_to_y: w.closer_to_y, equidistant: w.equidistant }
}

fn json_out(value: &impl serde::Serialize, out: *mut *mut c_char) -> GpbStatus {
    match serde_json::to_string(value) {
        Ok(s) => {
            // SAFETY: caller checked `out` for null.
            unsafe { *out = CString::new(s).expect("json has no nul").into_raw() };
            GpbStatus::Ok
        }
        Err(e) => fail(GpbStatus::Serialization, e.to_string()),
    }
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn gpb_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn gpb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gpb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Computes every per-ℓ verdict for GP(n,k).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn gpb_report_new(n: usize, k: usize, out: *mut *mut GpbReport) -> GpbStatus {
    guard(|| {
        non_null!(out);
        match GpParams::new(n, k) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(GpbReport(full_report(p))));
                GpbStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `report` must be null or a handle from [`gpb_report_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn gpb_report_free(report: *mut GpbReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpb_report_diameter(report: *const GpbReport, out: *mut u32) -> GpbStatus {
    guard(|| {
        non_null!(report, out);
        *out = (*report).0.diameter;
        GpbStatus::Ok
    })
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpb_report_is_balanced(report: *const GpbReport, ell: u32, out: *mut bool) -> GpbStatus {
    guard(|| {
        non_null!(report, out);
        match (*report).0.verdict(ell) {
            Ok(v) => {
                *out = v.is_balanced();
                GpbStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Lexicographically first unbalanced pair at distance `ell`.
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpb_report_witness(report: *const GpbReport, ell: u32, out: *mut GpbWitness) -> GpbStatus {
    guard(|| {
        non_null!(report, out);
        match (*report).0.verdict(ell) {
            Ok(v) => {
                let origin = GpbVertex { kind: GpbVertexKind::Outer, index: 0 };
                *out = match v.witness {
                    Some(w) => GpbWitness { present: true, x: to_c(w.x), y: to_c(w.y), count: count_to_c(w.count) },
                    None => GpbWitness { present: false, x: origin, y: origin, count: GpbWCount::default() },
                };
                GpbStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// The report as JSON; free the string with [`gpb_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpb_report_to_json(report: *const GpbReport, out: *mut *mut c_char) -> GpbStatus {
    guard(|| {
        non_null!(report, out);
        json_out(&(*report).0, out)
    })
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn gpb_profile_new(n: usize, k: usize, out: *mut *mut GpbProfile) -> GpbStatus {
    guard(|| {
        non_null!(out);
        match GpParams::new(n, k) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(GpbProfile(distance_profile(p))));
                GpbStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `profile` must be null or a handle from [`gpb_profile_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn gpb_profile_free(profile: *mut GpbProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// # Safety
/// `profile` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpb_profile_distance(
    profile: *const GpbProfile,
    a: GpbVertex,
    b: GpbVertex,
    out: *mut u32,
) -> GpbStatus {
    guard(|| {
        non_null!(profile, out);
        match (*profile).0.pair_distance(from_c(a), from_c(b)) {
            Ok(d) => {
                *out = d;
                GpbStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `profile` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpb_profile_w_count(
    profile: *const GpbProfile,
    x: GpbVertex,
    y: GpbVertex,
    out: *mut GpbWCount,
) -> GpbStatus {
    guard(|| {
        non_null!(profile, out);
        let prof = &(*profile).0;
        let (x, y) = (from_c(x), from_c(y));
        if let Err(e) = prof.pair_distance(x, y) {
            return from_error(e);
        }
        *out = count_to_c(prof.w_count(x, y));
        GpbStatus::Ok
    })
}

/// # Safety
/// `profile` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpb_profile_diameter(profile: *const GpbProfile, out: *mut u32) -> GpbStatus {
    guard(|| {
        non_null!(profile, out);
        *out = (*profile).0.diameter();
        GpbStatus::Ok
    })
}

/// Largest n in `[n_min, n_max]` with a balanced ℓ below the diameter;
/// `found` is false when there is none.
///
/// # Safety
/// `found` and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gpb_find_threshold(
    k: usize,
    n_min: usize,
    n_max: usize,
    found: *mut bool,
    out: *mut usize,
) -> GpbStatus {
    guard(|| {
        non_null!(found, out);
        match find_threshold(k, n_min, n_max) {
            Ok(t) => {
                *found = t.candidate_threshold.is_some();
                *out = t.candidate_threshold.unwrap_or(0);
                GpbStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Runs the formula sweep for k = 3 or 4; writes the number of findings and,
/// if `json` is non-null, the full report as JSON.
///
/// # Safety
/// `findings` must be writable; `json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn gpb_verify_formulas(
    k: usize,
    n_max: usize,
    findings: *mut usize,
    json: *mut *mut c_char,
) -> GpbStatus {
    guard(|| {
        non_null!(findings);
        match verify_formulas(k, n_max) {
            Ok(sweep) => {
                *findings = sweep.findings.len();
                if json.is_null() {
                    GpbStatus::Ok
                } else {
                    json_out(&sweep, json)
                }
            }
            Err(e) => from_error(e),
        }
    })
}
