use std::ffi::{c_char, CStr, CString};
use std::ptr;

use treeset_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ts_last_error()) }.to_str().unwrap().to_string()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    ts_string_free(s);
    out
}

#[test]
fn preset_round_trip() {
    unsafe {
        let mut set: *mut TsFactorSet = ptr::null_mut();
        assert_eq!(ts_factor_set_from_preset(c("tribonacci").as_ptr(), 12, &mut set), TsStatus::Ok);
        let mut n = 0usize;
        assert_eq!(ts_factor_set_complexity(set, 7, &mut n), TsStatus::Ok);
        assert_eq!(n, 15);
        let mut tree = false;
        assert_eq!(ts_factor_set_is_tree(set, 10, &mut tree), TsStatus::Ok);
        assert!(tree);
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(ts_factor_set_to_json(set, &mut json), TsStatus::Ok);
        let text = c(&take(json));
        let mut back: *mut TsFactorSet = ptr::null_mut();
        assert_eq!(ts_factor_set_from_json(text.as_ptr(), &mut back), TsStatus::Ok);
        let (mut a, mut b) = (0usize, 0usize);
        ts_factor_set_len(set, &mut a);
        ts_factor_set_len(back, &mut b);
        assert_eq!(a, b);
        ts_factor_set_free(back);
        ts_factor_set_free(set);
    }
}

#[test]
fn morphism_iet_and_membership() {
    unsafe {
        let mut fib: *mut TsFactorSet = ptr::null_mut();
        assert_eq!(ts_factor_set_from_morphism(c("a->ab; b->a").as_ptr(), ptr::null(), 10, &mut fib), TsStatus::Ok);
        let mut yes = false;
        assert_eq!(ts_factor_set_contains(fib, c("abaab").as_ptr(), &mut yes), TsStatus::Ok);
        assert!(yes);
        assert_eq!(ts_factor_set_contains(fib, c("bb").as_ptr(), &mut yes), TsStatus::Ok);
        assert!(!yes);
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(ts_return_words_json(fib, c("a").as_ptr(), &mut json), TsStatus::Ok);
        assert!(take(json).contains("\"first_returns\":[\"a\",\"ba\"]"));
        let mut decoded: *mut TsFactorSet = ptr::null_mut();
        assert_eq!(ts_decode(fib, c("c->aa; d->ab; e->ba").as_ptr(), &mut decoded), TsStatus::Ok);
        let mut depth = 0usize;
        ts_factor_set_depth(decoded, &mut depth);
        assert_eq!(depth, 5);
        ts_factor_set_free(decoded);
        ts_factor_set_free(fib);

        let spec = c("d=5; a=3/2-1/2*sqrt(5); b=-1/2+1/2*sqrt(5); bottom=b a; minimal");
        let mut rot: *mut TsFactorSet = ptr::null_mut();
        let status = ts_factor_set_from_iet(spec.as_ptr(), 8, &mut rot);
        assert_eq!(status, TsStatus::Ok, "{}", last_error());
        let mut p = 0usize;
        ts_factor_set_complexity(rot, 8, &mut p);
        assert_eq!(p, 9);
        ts_factor_set_free(rot);
    }
}

#[test]
fn free_group_calls() {
    unsafe {
        let mut basis = false;
        assert_eq!(ts_fg_is_basis(c("ab,acb,acc").as_ptr(), ptr::null(), &mut basis), TsStatus::Ok);
        assert!(basis);
        let mut index = 99usize;
        assert_eq!(ts_fg_index(c("aa,ab,ba").as_ptr(), ptr::null(), &mut index), TsStatus::Ok);
        assert_eq!(index, 2);
        assert_eq!(ts_fg_index(c("ab").as_ptr(), c("ab").as_ptr(), &mut index), TsStatus::Ok);
        assert_eq!(index, 0);
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(ts_tame_decompose_json(c("ba,cba,cca").as_ptr(), ptr::null(), &mut json), TsStatus::Ok);
        assert!(take(json).starts_with("[{\"kind\""));
        assert_eq!(ts_tame_decompose_json(c("ab,acb,acc").as_ptr(), ptr::null(), &mut json), TsStatus::Precondition);
        assert!(last_error().contains("no elementary step"));
    }
}

#[test]
fn errors_map_to_statuses() {
    unsafe {
        let mut set: *mut TsFactorSet = ptr::null_mut();
        assert_eq!(ts_factor_set_from_preset(c("none").as_ptr(), 5, &mut set), TsStatus::Parse);
        assert!(last_error().contains("unknown preset"));
        assert!(set.is_null());
        assert_eq!(ts_factor_set_from_preset(ptr::null(), 5, &mut set), TsStatus::NullArgument);
        assert_eq!(ts_factor_set_from_preset(c("fibonacci").as_ptr(), 5, ptr::null_mut()), TsStatus::NullArgument);
        let bad = [0xffu8, 0];
        assert_eq!(ts_factor_set_from_preset(bad.as_ptr().cast(), 5, &mut set), TsStatus::InvalidUtf8);
        assert_eq!(ts_factor_set_from_preset(c("periodic-ab").as_ptr(), 12, &mut set), TsStatus::Ok);
        let mut out: *mut TsFactorSet = ptr::null_mut();
        assert_eq!(ts_decode(set, c("u->a; v->ab").as_ptr(), &mut out), TsStatus::Precondition);
        let mut n = 0usize;
        assert_eq!(ts_factor_set_complexity(set, 40, &mut n), TsStatus::Precondition);
        assert_eq!(ts_factor_set_complexity(set, 3, &mut n), TsStatus::Ok);
        assert_eq!(last_error(), "");
        ts_factor_set_free(set);
        ts_factor_set_free(ptr::null_mut());
        ts_string_free(ptr::null_mut());
        assert!(CStr::from_ptr(ts_version()).to_str().unwrap().starts_with("0."));
    }
}
