use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use cherednik_ffi::*;

fn data(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn load(name: &str) -> *mut ChkContext {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { chk_context_parse(data(name).as_ptr(), &mut ctx) }, ChkStatus::Ok);
    ctx
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { chk_string_free(s) };
    out
}

fn last_error() -> String {
    let p = chk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn decomposition_number_through_the_abi() {
    let ctx = load("flotw_level2.json");
    let mut n = 0usize;
    assert_eq!(unsafe { chk_gamma_size(ctx, &mut n) }, ChkStatus::Ok);
    assert_eq!(n, 210);
    let l = CString::new("8,5,3,1^3|6,5^2,3,2,1^3").unwrap();
    let m = CString::new("7,5,4,2,1^2|5^3,2^3,1^2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { chk_decomp_number(ctx, l.as_ptr(), m.as_ptr(), &mut out) }, ChkStatus::Ok);
    assert_eq!(take(out), "t^11 + t^9");
    unsafe { chk_context_free(ctx) };
}

#[test]
fn matrix_and_characters() {
    let ctx = load("wide_m2.json");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { chk_decomp_matrix_json(ctx, &mut out) }, ChkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["matrix"][0][5], "t^4");
    assert_eq!(v["matrix"][5][0], "0");
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(chk_gamma_element(ctx, 0, &mut a), ChkStatus::Ok);
        assert_eq!(chk_gamma_element(ctx, 0, &mut b), ChkStatus::Ok);
        assert_eq!(chk_delta_char(ctx, a, b, &mut out), ChkStatus::Ok);
        chk_string_free(a);
        chk_string_free(b);
    }
    assert_eq!(take(out), "1");
    unsafe { chk_context_free(ctx) };
}

#[test]
fn chi_sequences_compare() {
    let (a, b) = (load("wide_m2.json"), load("narrow_m2.json"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { chk_chi_sequence(b, &mut out) }, ChkStatus::Ok);
    assert_eq!(take(out), "+d4^0,+d4^0,-d6^0,-d5^3,-d5^3,+d5^2,+d5^0");
    let mut r = 7i32;
    assert_eq!(unsafe { chk_chi_compare(a, b, 6, &mut r) }, ChkStatus::Ok);
    assert_eq!(r, 1);
    unsafe {
        chk_context_free(a);
        chk_context_free(b);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { chk_context_parse(data("e2.json").as_ptr(), &mut ctx) }, ChkStatus::InputError);
    assert!(ctx.is_null());
    assert!(last_error().starts_with("ValidationError"));

    assert_eq!(unsafe { chk_context_parse(ptr::null(), &mut ctx) }, ChkStatus::NullPointer);
    let bad = CString::new("{not json").unwrap();
    assert_eq!(unsafe { chk_context_parse(bad.as_ptr(), &mut ctx) }, ChkStatus::InputError);
    assert!(last_error().starts_with("ParseError"));

    let ctx = load("decoration.json");
    let mut n = 0usize;
    assert_eq!(unsafe { chk_gamma_size(ctx, &mut n) }, ChkStatus::InputError);
    let junk = CString::new("3,x").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { chk_decomp_number(ctx, junk.as_ptr(), junk.as_ptr(), &mut out) }, ChkStatus::InputError);
    assert!(out.is_null());
    unsafe { chk_context_free(ctx) };
    unsafe { chk_context_free(ptr::null_mut()) };
    unsafe { chk_string_free(ptr::null_mut()) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(chk_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libcherednik_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let exe = std::env::temp_dir().join(format!("cherednik-smoke-{}", std::process::id()));
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    std::fs::remove_file(&exe).ok();
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "t^4");
}
