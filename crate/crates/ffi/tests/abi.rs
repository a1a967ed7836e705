use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use salab_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(text: &str) -> *mut SalabIdeal {
    let mut out = ptr::null_mut();
    let status = unsafe { salab_ideal_parse(cstr(text).as_ptr(), &mut out) };
    assert_eq!(status, SalabStatus::Ok);
    out
}

fn last_error() -> String {
    let p = salab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn handles_and_queries() {
    let i = parse("ring QQ[x1,x2]\nx1^2\nx1*x2");
    unsafe {
        let mut n = 0;
        assert_eq!(salab_ideal_num_vars(i, &mut n), SalabStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(salab_ideal_num_generators(i, &mut n), SalabStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(salab_projective_dimension(i, &mut n), SalabStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(salab_krull_dimension(i, &mut n), SalabStatus::Ok);
        assert_eq!(n, 1);
        let mut regular = true;
        assert_eq!(salab_is_regular_sequence(i, &mut regular), SalabStatus::Ok);
        assert!(!regular);

        let mut buf = [0u64; 3];
        let mut needed = 0;
        assert_eq!(salab_betti_totals(i, buf.as_mut_ptr(), 3, &mut needed), SalabStatus::Ok);
        assert_eq!((needed, buf), (3, [1, 2, 1]));
        assert_eq!(
            salab_hilbert_function(i, 5, buf.as_mut_ptr(), 3, &mut needed),
            SalabStatus::BufferTooSmall
        );
        assert_eq!(needed, 6);
        salab_ideal_free(i);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(salab_ideal_parse(cstr("ring QQ[x]\nx^^2").as_ptr(), &mut out), SalabStatus::ParseError);
        assert!(out.is_null());
        assert!(last_error().starts_with("2:3"));
        assert_eq!(salab_ideal_parse(ptr::null(), &mut out), SalabStatus::NullArgument);
        let bad_utf8 = [b'r', 0xff, 0];
        assert_eq!(salab_ideal_parse(bad_utf8.as_ptr().cast(), &mut out), SalabStatus::InvalidUtf8);

        let mut n = 0;
        assert_eq!(salab_projective_dimension(ptr::null(), &mut n), SalabStatus::NullArgument);
        let unit = parse("ring QQ[x]\n1");
        assert_eq!(salab_projective_dimension(unit, &mut n), SalabStatus::DomainError);
        assert!(!salab_last_error().is_null());
        assert_eq!(salab_ideal_num_vars(unit, &mut n), SalabStatus::Ok);
        assert!(salab_last_error().is_null());
        salab_ideal_free(unit);
        salab_ideal_free(ptr::null_mut());

        let mut json = ptr::null_mut();
        let cap = salab_run_command(cstr("enumerate-hf").as_ptr(), ptr::null(), 0, &mut json);
        assert_eq!(cap, SalabStatus::Ok);
        salab_string_free(json);
        assert_eq!(
            salab_run_command(cstr("nope").as_ptr(), ptr::null(), 0, &mut json),
            SalabStatus::DomainError
        );
    }
}

#[test]
fn run_command_returns_the_report() {
    unsafe {
        let mut json = ptr::null_mut();
        let text = cstr("ring QQ[x1,x2]\nx1^2\nx1*x2");
        assert_eq!(salab_run_command(cstr("pd").as_ptr(), text.as_ptr(), 7, &mut json), SalabStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        salab_string_free(json);
        assert_eq!(v["results"]["pd"], 2);
        assert_eq!(v["seed"], 7);
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(manifest.join("include/salab.h")).unwrap();
    for symbol in ["salab_ideal_parse", "salab_ideal_free", "salab_run_command", "SALAB_STATUS_BUFFER_TOO_SMALL"] {
        assert!(header.contains(symbol), "{symbol} missing from the header");
    }
    let lib = target_dir().join("libsalab_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
