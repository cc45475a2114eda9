use std::ffi::{c_char, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bloic_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    let n = unsafe { bloic_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf.iter().take(n.min(255)).map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn pulse_handle_lifecycle() {
    let mut p: *mut BloicPulse = ptr::null_mut();
    assert_eq!(unsafe { bloic_pulse_new(BloicPulseFamily::S2, 0.0, 1.0, &mut p) }, BloicStatus::Ok);
    assert!(!p.is_null());
    let mut g = 0.0;
    assert_eq!(unsafe { bloic_pulse_gain_metric(p, &mut g) }, BloicStatus::Ok);
    assert!((g - (-2.0f64).exp()).abs() < 1e-6);
    let (mut s, mut div) = (0.0, -1);
    assert_eq!(unsafe { bloic_pulse_excursion(p, 0.0, &mut s, &mut div) }, BloicStatus::Ok);
    assert!((s - 1.0).abs() < 1e-4 && div == 0);
    assert_eq!(unsafe { bloic_pulse_eval_time(p, 0.0) }, 0.5);
    assert_eq!(unsafe { bloic_pulse_nyquist_period(p) }, 0.5);
    unsafe { bloic_pulse_free(p) };
}

#[test]
fn sinc_excursion_reports_divergence() {
    let mut p: *mut BloicPulse = ptr::null_mut();
    unsafe { bloic_pulse_new(BloicPulseFamily::Sinc, 0.0, 1.0, &mut p) };
    let (mut s, mut div) = (0.0, 0);
    assert_eq!(unsafe { bloic_pulse_excursion(p, 0.0, &mut s, &mut div) }, BloicStatus::Ok);
    assert_eq!(div, 1);
    assert!(s.is_infinite());
    unsafe { bloic_pulse_free(p) };
}

#[test]
fn bad_inputs_map_to_status_codes() {
    let mut p: *mut BloicPulse = ptr::null_mut();
    let st = unsafe { bloic_pulse_new(BloicPulseFamily::ParametricLinear, 1.5, 1.0, &mut p) };
    assert_eq!(st, BloicStatus::OutOfRange);
    assert!(p.is_null());
    assert!(last_error().contains("beta"), "{}", last_error());

    let name = CString::new("NoSuchBound").unwrap();
    let mut v = 0.0;
    assert_eq!(unsafe { bloic_bound_evaluate(name.as_ptr(), 1.0, 2.5, 10.0, &mut v) }, BloicStatus::UnknownName);
    assert_eq!(unsafe { bloic_bound_evaluate(ptr::null(), 1.0, 2.5, 10.0, &mut v) }, BloicStatus::NullPointer);
    assert_eq!(unsafe { bloic_solve_mu(0.25, ptr::null_mut()) }, BloicStatus::NullPointer);
    assert_eq!(unsafe { bloic_nu_from_papr(9.5, 4.0 / std::f64::consts::PI, &mut v) }, BloicStatus::InvalidRegime);
    assert!(unsafe { bloic_pulse_eval_time(ptr::null(), 0.0) }.is_nan());
}

#[test]
fn bound_values_match_library() {
    let name = CString::new("ExpS2").unwrap();
    let mut v = 0.0;
    assert_eq!(unsafe { bloic_bound_evaluate(name.as_ptr(), 10.0, 2.5, 10.0, &mut v) }, BloicStatus::Ok);
    assert!((v - 2.777153120281264).abs() < 1e-12);
    let mut mu = 0.0;
    assert_eq!(unsafe { bloic_solve_mu(0.25, &mut mu) }, BloicStatus::Ok);
    assert!((mu - 3.5935119694474547).abs() < 1e-9);
    let (mut bits, mut db) = (0.0, 0.0);
    assert_eq!(unsafe { bloic_asymptotic_gap(1e6, &mut bits, &mut db) }, BloicStatus::Ok);
    assert!((bits - 2.885).abs() < 0.01 && (db - 4.343).abs() < 0.01);
    let (mut l, mut rate) = (0.0, 0.0);
    assert_eq!(unsafe { bloic_geometric_optimum(1.0, &mut l, &mut rate) }, BloicStatus::Ok);
    assert!((rate - 0.853).abs() < 1e-3);
}

#[test]
fn curve_handle_points() {
    let name = CString::new("UB1").unwrap();
    let mut c: *mut BloicCurve = ptr::null_mut();
    let st = unsafe { bloic_curve_new(name.as_ptr(), -8.0, 22.0, 0.25, 2.5, 10.0, &mut c) };
    assert_eq!(st, BloicStatus::Ok);
    assert_eq!(unsafe { bloic_curve_len(c) }, 121);
    let (mut x, mut y) = (0.0, 0.0);
    assert_eq!(unsafe { bloic_curve_point(c, 120, &mut x, &mut y) }, BloicStatus::Ok);
    assert_eq!(x, 22.0);
    assert!(y > 0.0);
    assert_eq!(unsafe { bloic_curve_point(c, 121, &mut x, &mut y) }, BloicStatus::OutOfRange);
    unsafe { bloic_curve_free(c) };
    let st = unsafe { bloic_curve_new(name.as_ptr(), 0.0, 1.0, 0.0, 2.5, 10.0, &mut c) };
    assert_eq!(st, BloicStatus::InvalidParameter);
}

/// Compiles and runs a C program against the generated header and the
/// static library built alongside this test.
#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libbloic_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler unavailable");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "bloic.h"
int main(void) {
    BloicPulse *p = NULL;
    double g = 0.0, v = 0.0;
    if (bloic_pulse_new(BLOIC_PULSE_FAMILY_SPECTRAL_COSINE, 0.0, 1.0, &p) != BLOIC_STATUS_OK) return 1;
    if (bloic_pulse_gain_metric(p, &g) != BLOIC_STATUS_OK) return 2;
    bloic_pulse_free(p);
    if (bloic_bound_evaluate("UB1", 10.0, 2.5, 10.0, &v) != BLOIC_STATUS_OK) return 3;
    if (bloic_bound_evaluate("nope", 10.0, 2.5, 10.0, &v) != BLOIC_STATUS_UNKNOWN_NAME) return 4;
    char msg[128];
    bloic_last_error_message(msg, sizeof msg);
    printf("%.6f %.6f %s\n", g, v, msg);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("0.250000 5.961124"), "{text}");
    assert!(text.contains("nope"));
}
