//! C ABI over `concavex`.
//!
//! Objects cross the boundary as opaque pointers created by `cx_*_new`/`cx_*_run`
//! functions and released by the matching `cx_*_free`. Every fallible call
//! returns a [`CxStatus`]; on failure a message is available from
//! [`cx_last_error`] until the next call on the same thread. Rationals are
//! returned as heap strings `"num/den"` (or `"n"`) owned by the caller and
//! released with [`cx_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use concavex::exactnum::Rational;
use concavex::hypergeom::{BundleSpec, Case};
use concavex::invariants::{aspinwall_morrison, local_p2, InvariantTable};
use concavex::mirrormap::{run_mirror, MirrorResult};
use concavex::oracle::run_suite;
use concavex::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CxStatus {
    Ok = 0,
    InvalidArgument = 1,
    HypothesisViolation = 2,
    WeightCollision = 3,
    OracleFailure = 4,
    NullPointer = 5,
    OutOfRange = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CxCase {
    TrivialMap = 0,
    MapNeeded = 1,
    OutOfScope = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CxPreset {
    AspinwallMorrison = 0,
    LocalP2 = 1,
}

/// A bundle `O(k_1)+...+O(-l_1)+...` on `P^s`.
pub struct CxSpec(BundleSpec);

/// Output of the mirror pipeline.
pub struct CxMirror(MirrorResult);

/// Rows `(d, value, descendant?)`.
pub struct CxTable(InvariantTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> CxStatus {
    match err {
        Error::HypothesisViolation(_) => CxStatus::HypothesisViolation,
        Error::WeightCollision(_) => CxStatus::WeightCollision,
        Error::InvalidBundle(_) | Error::DimensionMismatch { .. } => CxStatus::InvalidArgument,
        _ => CxStatus::Internal,
    }
}

/// Runs `f`, recording errors and containing panics.
fn guard(f: impl FnOnce() -> Result<(), (CxStatus, String)>) -> CxStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CxStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CxStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (CxStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (CxStatus, String) {
    (CxStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (CxStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), (CxStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn rational_string(r: &Rational) -> *mut c_char {
    CString::new(r.to_string()).expect("rationals print without nul").into_raw()
}

unsafe fn slice<'a>(p: *const u32, n: usize, what: &str) -> Result<&'a [u32], (CxStatus, String)> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next `cx_*` call on the same thread.
#[no_mangle]
pub extern "C" fn cx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cx_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains nul"),
    };
    VERSION.as_ptr()
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `k` and `l` must point to `nk` and `nl` readable values (or be null when
/// the count is zero); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cx_spec_new(
    s: u32,
    k: *const u32,
    nk: usize,
    l: *const u32,
    nl: usize,
    out: *mut *mut CxSpec,
) -> CxStatus {
    guard(|| {
        let k = slice(k, nk, "k")?.to_vec();
        let l = slice(l, nl, "l")?.to_vec();
        let spec = BundleSpec::new(s as usize, k, l).map_err(lib_err)?;
        put(out, Box::into_raw(Box::new(CxSpec(spec))), "out")
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cx_spec_preset(preset: CxPreset, out: *mut *mut CxSpec) -> CxStatus {
    guard(|| {
        let spec = match preset {
            CxPreset::AspinwallMorrison => BundleSpec::aspinwall_morrison(),
            CxPreset::LocalP2 => BundleSpec::local_p2(),
        };
        put(out, Box::into_raw(Box::new(CxSpec(spec))), "out")
    })
}

/// # Safety
/// `spec` must come from `cx_spec_new`/`cx_spec_preset` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cx_spec_free(spec: *mut CxSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// # Safety
/// `spec` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cx_spec_classify(spec: *const CxSpec, out: *mut CxCase) -> CxStatus {
    guard(|| {
        let spec = deref(spec, "spec")?;
        let case = match spec.0.classification() {
            Case::TrivialMap => CxCase::TrivialMap,
            Case::MapNeeded => CxCase::MapNeeded,
            Case::OutOfScope => CxCase::OutOfScope,
        };
        put(out, case, "out")
    })
}

/// Mirror pipeline to order `order` in `q`.
///
/// # Safety
/// `spec` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cx_mirror_run(spec: *const CxSpec, order: u32, out: *mut *mut CxMirror) -> CxStatus {
    guard(|| {
        let spec = deref(spec, "spec")?;
        let result = run_mirror(&spec.0, order as usize).map_err(lib_err)?;
        put(out, Box::into_raw(Box::new(CxMirror(result))), "out")
    })
}

/// # Safety
/// `m` must come from `cx_mirror_run` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cx_mirror_free(m: *mut CxMirror) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Coefficient of `q^d` in the mirror map `I_1`, as a new string.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cx_mirror_i1(m: *const CxMirror, d: u32, out: *mut *mut c_char) -> CxStatus {
    guard(|| {
        let m = deref(m, "mirror")?;
        let d = d as usize;
        if d > m.0.i1.order() {
            return Err((CxStatus::OutOfRange, format!("degree {d} beyond order {}", m.0.i1.order())));
        }
        put(out, rational_string(m.0.i1.coeff(d)), "out")
    })
}

/// Coefficient of `Q^d H^a hbar^e` in the reduced J-series, as a new string.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cx_mirror_coefficient(
    m: *const CxMirror,
    d: u32,
    a: u32,
    e: i64,
    out: *mut *mut c_char,
) -> CxStatus {
    guard(|| {
        let m = deref(m, "mirror")?;
        let (d, a) = (d as usize, a as usize);
        if d > m.0.jseries.order() || a > m.0.spec.s() {
            return Err((CxStatus::OutOfRange, format!("cell (d={d}, a={a}) out of range")));
        }
        put(out, rational_string(&m.0.jseries.coeff(d).coefficient(a, e)), "out")
    })
}

/// Invariant table for one of the two presets, degrees `1..=dmax`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cx_invariants(preset: CxPreset, dmax: u32, out: *mut *mut CxTable) -> CxStatus {
    guard(|| {
        let table = match preset {
            CxPreset::AspinwallMorrison => aspinwall_morrison(dmax),
            CxPreset::LocalP2 => local_p2(dmax).map_err(lib_err)?,
        };
        put(out, Box::into_raw(Box::new(CxTable(table))), "out")
    })
}

/// # Safety
/// `t` must come from `cx_invariants` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cx_table_free(t: *mut CxTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cx_table_len(t: *const CxTable) -> usize {
    t.as_ref().map_or(0, |t| t.0.rows.len())
}

/// Row `row`: its degree, value and (when present) descendant. `descendant`
/// receives null for tables without that column; it may itself be null if
/// the caller does not want it.
///
/// # Safety
/// `t` must be a live handle; `degree` and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn cx_table_row(
    t: *const CxTable,
    row: usize,
    degree: *mut u32,
    value: *mut *mut c_char,
    descendant: *mut *mut c_char,
) -> CxStatus {
    guard(|| {
        let t = deref(t, "table")?;
        let r = t
            .0
            .rows
            .get(row)
            .ok_or_else(|| (CxStatus::OutOfRange, format!("row {row} of {}", t.0.rows.len())))?;
        if value.is_null() {
            return Err(null("value"));
        }
        put(degree, r.degree, "degree")?;
        put(value, rational_string(&r.value), "value")?;
        if !descendant.is_null() {
            descendant.write(r.descendant.as_ref().map_or(ptr::null_mut(), rational_string));
        }
        Ok(())
    })
}

/// Runs the equivariant validation suite with `seeds` default weight
/// vectors; `passed` receives whether every check held on every vector.
///
/// # Safety
/// `spec` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn cx_oracle_run(
    spec: *const CxSpec,
    order: u32,
    zorder: u32,
    seeds: u32,
    passed: *mut bool,
) -> CxStatus {
    guard(|| {
        let spec = deref(spec, "spec")?;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let report = run_suite(&spec.0, order as usize, zorder as usize, seeds.max(1) as usize, None)
            .map_err(lib_err)?;
        let ok = report.passed() && report.weight_independent();
        passed.write(ok);
        if ok {
            Ok(())
        } else {
            Err((CxStatus::OracleFailure, "oracle assertion failed".into()))
        }
    })
}
