use std::ffi::{CStr, CString};
use std::ptr;

use logknot_ffi::*;

fn last_error() -> String {
    let p = logknot_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn knot(name: &str) -> *mut LogknotKnot {
    let name = CString::new(name).unwrap();
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { logknot_knot_from_preset(name.as_ptr(), &mut k) }, LogknotStatus::Ok);
    k
}

#[test]
fn trefoil_round_trip() {
    let k = knot("trefoil");
    let mut f = 0i64;
    assert_eq!(unsafe { logknot_knot_framing(k, &mut f) }, LogknotStatus::Ok);
    assert_eq!(f, 3);
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { logknot_decompose(k, 3, true, 0, &mut d) }, LogknotStatus::Ok);
    let (mut re, mut im) = (0.0, 0.0);
    // a_2 of the trefoil at p = 3 with the framing divided out, cross-checked against V(t) at t = q^{-2}
    assert_eq!(
        unsafe { logknot_decomposition_coefficient(d, LogknotCoefficient::A, 2, &mut re, &mut im) },
        LogknotStatus::Ok
    );
    assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
    assert_eq!(
        unsafe { logknot_decomposition_coefficient(d, LogknotCoefficient::BPlus, 3, &mut re, &mut im) },
        LogknotStatus::Parse
    );
    assert!(last_error().contains("out of range"));
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { logknot_decomposition_to_json(d, &mut json) }, LogknotStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    assert!(text.contains("\"schema\": 1"));
    assert!(text.contains("\"framing_corrected\": true"));
    unsafe {
        logknot_string_free(json);
        logknot_decomposition_free(d);
        logknot_knot_free(k);
    }
    assert!(logknot_last_error().is_null());
}

#[test]
fn error_statuses() {
    let mut k = ptr::null_mut();
    let braid = CString::new("s1 s1").unwrap();
    assert_eq!(unsafe { logknot_knot_parse(braid.as_ptr(), 2, &mut k) }, LogknotStatus::MultiComponent);
    assert!(k.is_null());
    let braid = CString::new("s1 x2").unwrap();
    assert_eq!(unsafe { logknot_knot_parse(braid.as_ptr(), 3, &mut k) }, LogknotStatus::Parse);
    assert_eq!(unsafe { logknot_knot_parse(ptr::null(), 3, &mut k) }, LogknotStatus::NullPointer);
    assert!(last_error().contains("braid"));
    let f8 = knot("figure8");
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { logknot_decompose(f8, 3, false, 50, &mut d) }, LogknotStatus::CapExceeded);
    assert_eq!(unsafe { logknot_decompose(f8, 1, false, 0, &mut d) }, LogknotStatus::Parse);
    assert_eq!(unsafe { logknot_decompose(ptr::null(), 3, false, 0, &mut d) }, LogknotStatus::NullPointer);
    unsafe {
        logknot_knot_free(f8);
        logknot_knot_free(ptr::null_mut());
    }
}

#[test]
fn alexander_of_unknot_is_one() {
    let k = knot("unknot");
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { logknot_colored_alexander(k, 3, 0.37, 0.1, 0, &mut re, &mut im) }, LogknotStatus::Ok);
    assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
    unsafe { logknot_knot_free(k) };
}

#[test]
fn header_lists_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/logknot.h")).unwrap();
    for sym in [
        "logknot_last_error",
        "logknot_version",
        "logknot_knot_from_preset",
        "logknot_knot_parse",
        "logknot_knot_free",
        "logknot_knot_framing",
        "logknot_decompose",
        "logknot_decomposition_free",
        "logknot_decomposition_coefficient",
        "logknot_decomposition_to_json",
        "logknot_string_free",
        "logknot_colored_alexander",
        "LOGKNOT_STATUS_CAP_EXCEEDED = 4",
    ] {
        assert!(header.contains(sym), "{sym}");
    }
    let v = unsafe { CStr::from_ptr(logknot_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
