use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use curvecount_ffi::*;

fn take(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { cc_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(cc_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn session_round_trip() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cc_session_new(3, &mut s) }, CcStatus::Ok);
    assert_eq!(unsafe { cc_session_degree(s) }, 3);
    let expr = CString::new("[A2F T1] * y1^2 * yd^6").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cc_eval(s, expr.as_ptr(), &mut out) }, CcStatus::Ok);
    assert_eq!(take(out), "60");
    unsafe { cc_session_free(s) };
    unsafe { cc_session_free(ptr::null_mut()) };
}

#[test]
fn json_output() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cc_session_new(4, &mut s) }, CcStatus::Ok);
    let expr = CString::new("[A1A1] * yd^12").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cc_eval_json(s, expr.as_ptr(), &mut out) }, CcStatus::Ok);
    let json = take(out);
    assert!(json.contains("\"unordered_value\":\"225\""), "{json}");
    unsafe { cc_session_free(s) };
}

#[test]
fn error_codes() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cc_session_new(0, &mut s) }, CcStatus::InvalidInput);
    assert!(s.is_null());
    assert!(last_error().contains("degree"));
    assert_eq!(unsafe { cc_session_new(3, ptr::null_mut()) }, CcStatus::NullPointer);

    assert_eq!(unsafe { cc_session_new(3, &mut s) }, CcStatus::Ok);
    let mut out = ptr::null_mut();
    let bad = CString::new("[T1]]").unwrap();
    assert_eq!(unsafe { cc_eval(s, bad.as_ptr(), &mut out) }, CcStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("offset 4"));
    let arity = CString::new("[T1] * a3").unwrap();
    assert_eq!(unsafe { cc_eval(s, arity.as_ptr(), &mut out) }, CcStatus::InvalidInput);
    let cusp = CString::new("[A2F T2] * yd").unwrap();
    assert_eq!(unsafe { cc_eval(s, cusp.as_ptr(), &mut out) }, CcStatus::Unsupported);
    assert_eq!(unsafe { cc_eval(s, ptr::null(), &mut out) }, CcStatus::NullPointer);
    let latin1 = [0xe9u8, 0];
    assert_eq!(unsafe { cc_eval(s, latin1.as_ptr() as *const c_char, &mut out) }, CcStatus::InvalidUtf8);
    assert_eq!(unsafe { cc_eval(ptr::null_mut(), bad.as_ptr(), &mut out) }, CcStatus::NullPointer);
    unsafe { cc_session_free(s) };

    let msg = unsafe { CStr::from_ptr(cc_status_message(CcStatus::Parse)) };
    assert_eq!(msg.to_str().unwrap(), "parse error");
}

#[test]
fn recursions() {
    let mut out = ptr::null_mut();
    let (a, b) = ([0u32], [1u32, 2, 1]);
    assert_eq!(unsafe { cc_ch_invariant(8, 0, a.as_ptr(), 1, b.as_ptr(), 3, &mut out) }, CcStatus::Ok);
    assert_eq!(take(out), "144");
    let short = [0u32, 2, 1];
    assert_eq!(unsafe { cc_ch_invariant(8, 0, ptr::null(), 0, short.as_ptr(), 3, &mut out) }, CcStatus::InvalidInput);
    assert_eq!(unsafe { cc_ch_invariant(8, 0, ptr::null(), 1, b.as_ptr(), 3, &mut out) }, CcStatus::NullPointer);
    assert_eq!(unsafe { cc_kontsevich_nd(4, &mut out) }, CcStatus::Ok);
    assert_eq!(take(out), "620");
    assert_eq!(unsafe { cc_wdvv_nd_t1(6, &mut out) }, CcStatus::Ok);
    assert_eq!(take(out), "106976160");
    assert_eq!(unsafe { cc_wdvv_nd_t1(0, &mut out) }, CcStatus::InvalidInput);
}

/// Builds `tests/c/smoke.c` against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libcurvecount_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let bin = profile_dir.join(format!("cc-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler named cc");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    let _ = std::fs::remove_file(&bin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
