use std::ffi::{c_char, CStr};
use std::ptr;

use concavex_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cx_string_free(s) };
    out
}

fn last_error() -> String {
    let p = cx_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn spec(s: u32, k: &[u32], l: &[u32]) -> *mut CxSpec {
    let mut out = ptr::null_mut();
    let st = unsafe { cx_spec_new(s, k.as_ptr(), k.len(), l.as_ptr(), l.len(), &mut out) };
    assert_eq!(st, CxStatus::Ok);
    out
}

#[test]
fn classify() {
    for (s, k, l, want) in [
        (1, vec![], vec![1, 1], CxCase::TrivialMap),
        (2, vec![], vec![3], CxCase::MapNeeded),
        (2, vec![], vec![3, 1], CxCase::OutOfScope),
    ] {
        let h = spec(s, &k, &l);
        let mut case = CxCase::OutOfScope;
        assert_eq!(unsafe { cx_spec_classify(h, &mut case) }, CxStatus::Ok);
        assert_eq!(case, want);
        unsafe { cx_spec_free(h) };
    }
}

#[test]
fn mirror_values() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cx_spec_preset(CxPreset::LocalP2, &mut h) }, CxStatus::Ok);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { cx_mirror_run(h, 3, &mut m) }, CxStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cx_mirror_i1(m, 3, &mut s) }, CxStatus::Ok);
    assert_eq!(take(s), "-560");
    assert_eq!(unsafe { cx_mirror_coefficient(m, 1, 2, -2, &mut s) }, CxStatus::Ok);
    assert_eq!(take(s), "-9");
    assert_eq!(unsafe { cx_mirror_coefficient(m, 1, 1, -1, &mut s) }, CxStatus::Ok);
    assert_eq!(take(s), "0");
    assert_eq!(unsafe { cx_mirror_i1(m, 4, &mut s) }, CxStatus::OutOfRange);
    assert!(last_error().contains("beyond order"));
    assert_eq!(unsafe { cx_mirror_coefficient(m, 0, 3, 0, &mut s) }, CxStatus::OutOfRange);
    unsafe {
        cx_mirror_free(m);
        cx_spec_free(h);
    }
}

#[test]
fn aspinwall_morrison_table() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { cx_invariants(CxPreset::AspinwallMorrison, 4, &mut t) }, CxStatus::Ok);
    assert_eq!(unsafe { cx_table_len(t) }, 4);
    let mut d = 0;
    let mut v = ptr::null_mut();
    let mut desc = ptr::null_mut();
    assert_eq!(unsafe { cx_table_row(t, 2, &mut d, &mut v, &mut desc) }, CxStatus::Ok);
    assert_eq!((d, take(v), take(desc)), (3, "1/27".into(), "-2/27".into()));
    assert_eq!(unsafe { cx_table_row(t, 4, &mut d, &mut v, ptr::null_mut()) }, CxStatus::OutOfRange);
    unsafe { cx_table_free(t) };
}

#[test]
fn errors_and_nulls() {
    let mut out = ptr::null_mut();
    let l = [3u32, 1];
    assert_eq!(unsafe { cx_spec_new(0, ptr::null(), 0, l.as_ptr(), 2, &mut out) }, CxStatus::InvalidArgument);
    assert!(last_error().contains("dimension"));
    assert_eq!(unsafe { cx_spec_new(2, ptr::null(), 1, l.as_ptr(), 2, &mut out) }, CxStatus::NullPointer);
    let h = spec(2, &[], &l);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { cx_mirror_run(h, 2, &mut m) }, CxStatus::HypothesisViolation);
    assert!(last_error().contains("4 > s + 1 = 3"));
    assert!(m.is_null());
    assert_eq!(unsafe { cx_mirror_run(ptr::null(), 2, &mut m) }, CxStatus::NullPointer);
    let mut case = CxCase::TrivialMap;
    assert_eq!(unsafe { cx_spec_classify(h, ptr::null_mut()) }, CxStatus::NullPointer);
    assert_eq!(unsafe { cx_spec_classify(h, &mut case) }, CxStatus::Ok);
    assert!(cx_last_error().is_null());
    assert_eq!(unsafe { cx_table_len(ptr::null()) }, 0);
    unsafe {
        cx_spec_free(h);
        cx_spec_free(ptr::null_mut());
        cx_string_free(ptr::null_mut());
    }
}

#[test]
fn oracle_through_abi() {
    let h = spec(1, &[1], &[1]);
    let mut passed = false;
    assert_eq!(unsafe { cx_oracle_run(h, 2, 2, 2, &mut passed) }, CxStatus::Ok);
    assert!(passed);
    unsafe { cx_spec_free(h) };
}

#[test]
fn errors_are_per_thread() {
    let h = spec(2, &[], &[3, 1]);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { cx_mirror_run(h, 2, &mut m) }, CxStatus::HypothesisViolation);
    std::thread::spawn(|| assert!(cx_last_error().is_null())).join().unwrap();
    assert!(!cx_last_error().is_null());
    unsafe { cx_spec_free(h) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(cx_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
