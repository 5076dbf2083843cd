use std::ffi::{CStr, CString};
use std::ptr;

use lindmap_ffi::*;

fn family(name: &str, p: f64) -> *mut LmSuperOp {
    let name = CString::new(name).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { lm_superop_family(name.as_ptr(), p, &mut s) }, LmStatus::Ok);
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(lm_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn matrix_round_trip() {
    let re = [1.0, 2.0, 2.0, -1.0];
    let im = [0.0, 0.5, -0.5, 0.0];
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(lm_matrix_new(2, re.as_ptr(), im.as_ptr(), &mut m), LmStatus::Ok);
        assert_eq!(lm_matrix_dim(m), 2);
        let (mut a, mut b) = (0.0, 0.0);
        assert_eq!(lm_matrix_get(m, 0, 1, &mut a, &mut b), LmStatus::Ok);
        assert_eq!((a, b), (2.0, 0.5));
        assert_eq!(lm_matrix_get(m, 2, 0, &mut a, &mut b), LmStatus::InvalidArgument);
        let mut lo = 0.0;
        assert_eq!(lm_matrix_min_eigenvalue(m, &mut lo), LmStatus::Ok);
        // eigenvalues ±√(1 + 4.25)
        assert!((lo + 5.25f64.sqrt()).abs() < 1e-12);
        let mut tn = 0.0;
        assert_eq!(lm_matrix_trace_norm(m, &mut tn), LmStatus::Ok);
        assert!((tn - 2.0 * 5.25f64.sqrt()).abs() < 1e-12);
        lm_matrix_free(m);
    }
}

#[test]
fn phi_alpha_choi_and_cp() {
    let s = family("phi-alpha", 0.25);
    unsafe {
        assert_eq!(lm_superop_dim(s), 3);
        let mut c = ptr::null_mut();
        assert_eq!(lm_superop_choi(s, &mut c), LmStatus::Ok);
        let mut lo = 0.0;
        lm_matrix_min_eigenvalue(c, &mut lo);
        assert!((lo + 1.0 / 6.0).abs() < 1e-12);
        let mut cp = true;
        assert_eq!(lm_superop_is_cp(s, 1e-9, &mut cp), LmStatus::Ok);
        assert!(!cp);
        lm_matrix_free(c);
        lm_superop_free(s);
    }
    let s = family("lambda-gamma", 0.0);
    let mut cp = false;
    unsafe {
        lm_superop_is_cp(s, 1e-9, &mut cp);
        lm_superop_free(s);
    }
    assert!(cp);
}

#[test]
fn apply_transposition() {
    let s = family("transposition", 2.0);
    let re = [1.0, 2.0, 3.0, 4.0];
    let mut x = ptr::null_mut();
    let mut y = ptr::null_mut();
    unsafe {
        lm_matrix_new(2, re.as_ptr(), ptr::null(), &mut x);
        assert_eq!(lm_superop_apply(s, x, &mut y), LmStatus::Ok);
        let (mut a, mut b) = (0.0, 0.0);
        lm_matrix_get(y, 0, 1, &mut a, &mut b);
        assert_eq!(a, 3.0);
        lm_matrix_free(x);
        lm_matrix_free(y);
        lm_superop_free(s);
    }
}

#[test]
fn gme_detection() {
    let mut w = ptr::null_mut();
    let mut g = ptr::null_mut();
    let mut report =
        LmDetectionReport { gamma: 0.0, c: 0.0, min_eigenvalue: 0.0, witness_value: 0.0, n_gme: 0.0, detected: false };
    unsafe {
        lm_state_w(&mut w);
        lm_state_ghz(&mut g);
        assert_eq!(lm_detect_gme(w, 0.5, false, &mut report), LmStatus::Ok);
        assert!(report.detected);
        assert!((report.min_eigenvalue - (1.0 - 2.0 / 3f64.sqrt())).abs() < 1e-12);
        assert_eq!(report.c, 1.0);
        lm_detect_gme(g, 0.5, false, &mut report);
        assert!(!report.detected);
        lm_detect_gme(g, 0.5, true, &mut report);
        assert!(report.detected);
        let mut n = 0.0;
        assert_eq!(lm_n_gme(w, 1.0, &mut n), LmStatus::Ok);
        assert!((n - 2.0 * (2.0 / 3f64.sqrt() - 1.0) / 11.0).abs() < 1e-12);
        let mut wv = 0.0;
        assert_eq!(lm_witness_value(w, &mut wv), LmStatus::Ok);
        assert!(wv.is_finite());
        lm_matrix_free(w);
        lm_matrix_free(g);
    }
}

#[test]
fn noisy_w_below_threshold_is_not_detected() {
    let mut rho = ptr::null_mut();
    let mut report =
        LmDetectionReport { gamma: 0.0, c: 0.0, min_eigenvalue: 0.0, witness_value: 0.0, n_gme: 0.0, detected: true };
    unsafe {
        assert_eq!(lm_state_noisy_w(0.8, &mut rho), LmStatus::Ok);
        lm_detect_gme(rho, 0.5, false, &mut report);
        lm_matrix_free(rho);
        assert_eq!(lm_state_noisy_w(1.5, &mut rho), LmStatus::OutOfRange);
    }
    assert!(!report.detected);
    assert_eq!(report.n_gme, 0.0);
}

#[test]
fn error_codes_and_messages() {
    let name = CString::new("nope").unwrap();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(lm_superop_family(name.as_ptr(), 0.1, &mut s), LmStatus::UnknownFamily);
        assert!(last_error().contains("nope"));
        assert_eq!(lm_superop_family(ptr::null(), 0.1, &mut s), LmStatus::NullPointer);
        assert_eq!(lm_matrix_new(2, ptr::null(), ptr::null(), ptr::null_mut()), LmStatus::NullPointer);
        let mut out = 0.0;
        assert_eq!(lm_matrix_min_eigenvalue(ptr::null(), &mut out), LmStatus::NullPointer);
        assert_eq!(lm_matrix_dim(ptr::null()), 0);
        lm_matrix_free(ptr::null_mut());
        lm_superop_free(ptr::null_mut());

        // non-Hermitian input
        let re = [0.0, 1.0, 0.0, 0.0];
        let mut m = ptr::null_mut();
        lm_matrix_new(2, re.as_ptr(), ptr::null(), &mut m);
        assert_eq!(lm_matrix_min_eigenvalue(m, &mut out), LmStatus::NotHermitian);
        // wrong size for GME
        assert_eq!(lm_n_gme(m, 1.0, &mut out), LmStatus::NotADensityMatrix);
        lm_matrix_free(m);

        let eye = [0.5, 0.0, 0.0, 0.5];
        lm_matrix_new(2, eye.as_ptr(), ptr::null(), &mut m);
        assert_eq!(lm_n_gme(m, 1.0, &mut out), LmStatus::DimensionMismatch);
        let s = family("phi-alpha", 0.1);
        let mut y = ptr::null_mut();
        assert_eq!(lm_superop_apply(s, m, &mut y), LmStatus::DimensionMismatch);
        assert!(last_error().contains("dimension"));
        lm_superop_free(s);
        lm_matrix_free(m);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lindmap.h")).unwrap();
    for sym in [
        "lm_last_error",
        "lm_matrix_new",
        "lm_matrix_free",
        "lm_matrix_get",
        "lm_matrix_min_eigenvalue",
        "lm_matrix_trace_norm",
        "lm_superop_family",
        "lm_superop_apply",
        "lm_superop_choi",
        "lm_superop_is_cp",
        "lm_state_w",
        "lm_state_ghz",
        "lm_state_noisy_w",
        "lm_detect_gme",
        "lm_n_gme",
        "lm_witness_value",
        "typedef struct LmMatrix LmMatrix",
        "LM_STATUS_OK = 0",
    ] {
        assert!(header.contains(sym), "missing {sym}");
    }
}

/// Compiles a small C program against the header and static library when a
/// C compiler is available.
#[test]
fn c_program_links_and_runs() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let target = root.join("../../target/debug");
    let lib = target.join("liblindmap_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || std::process::Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "lindmap.h"
int main(void) {
    LmMatrix *w = NULL;
    LmDetectionReport r;
    if (lm_state_w(&w) != LM_STATUS_OK) return 2;
    if (lm_detect_gme(w, 0.5, false, &r) != LM_STATUS_OK) return 3;
    lm_matrix_free(w);
    printf("%d %.12f\n", r.detected, r.min_eigenvalue);
    return r.detected ? 0 : 1;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("probe");
    let status = std::process::Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = std::process::Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("1 -0.154700538379"));
}
