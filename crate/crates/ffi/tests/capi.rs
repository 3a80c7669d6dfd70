use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use uqfock_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { uq_string_free(s) };
    out
}

fn last_error() -> String {
    let p = uq_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn open(n: usize, m: usize, p: usize) -> *mut UqFock {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { uq_fock_new(n, m, p, &mut h) }, UqStatus::Ok);
    h
}

#[test]
fn handle_lifecycle_and_dimension() {
    let h = open(1, 1, 2);
    let mut dim = 0usize;
    assert_eq!(unsafe { uq_fock_dim(h, &mut dim) }, UqStatus::Ok);
    assert_eq!(dim, 5);
    let mut formula = 0u64;
    assert_eq!(unsafe { uq_dim_formula(2, 1, 1, &mut formula) }, UqStatus::Ok);
    assert_eq!(formula, 4);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { uq_fock_basis_json(h, &mut json) }, UqStatus::Ok);
    let v: String = take(json);
    assert!(v.contains("\"states\":[[0,0],[0,1],[1,0],[1,1],[2,0]]"), "{v}");
    unsafe { uq_fock_free(h) };
    unsafe { uq_fock_free(ptr::null_mut()) };
}

#[test]
fn errors_carry_status_and_message() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { uq_fock_new(0, 0, 1, &mut h) }, UqStatus::InvalidParams);
    assert!(h.is_null());
    assert!(last_error().contains("INVALID_PARAMS"));
    assert_eq!(unsafe { uq_fock_new(1, 1, 1, ptr::null_mut()) }, UqStatus::NullPointer);

    let h = open(1, 1, 2);
    let mut out = ptr::null_mut();
    let bad = CString::new("Ap(1) +").unwrap();
    assert_eq!(unsafe { uq_fock_matrix_json(h, bad.as_ptr(), &mut out) }, UqStatus::Syntax);
    let range = CString::new("Ap(5)").unwrap();
    assert_eq!(unsafe { uq_fock_matrix_json(h, range.as_ptr(), &mut out) }, UqStatus::IndexRange);
    let chev = CString::new("E(1)").unwrap();
    assert_eq!(unsafe { uq_fock_matrix_json(h, chev.as_ptr(), &mut out) }, UqStatus::UnresolvedAtom);
    let mut failed = 0usize;
    assert_eq!(
        unsafe { uq_fock_verify_numeric_json(h, 1.0, 1e-10, &mut out, &mut failed) },
        UqStatus::BadQ
    );
    let ok = CString::new("Ap(1)").unwrap();
    assert_eq!(unsafe { uq_fock_matrix_json(h, ok.as_ptr(), &mut out) }, UqStatus::Ok);
    assert!(uq_last_error_message().is_null());
    take(out);
    unsafe { uq_fock_free(h) };
}

#[test]
fn verification_through_the_c_interface() {
    let h = open(2, 1, 2);
    let mut out = ptr::null_mut();
    let mut failed = usize::MAX;
    assert_eq!(unsafe { uq_fock_verify_json(h, &mut out, &mut failed) }, UqStatus::Ok);
    assert_eq!(failed, 0);
    assert!(take(out).contains("\"failed\":0"));
    assert_eq!(
        unsafe { uq_fock_verify_numeric_json(h, 0.7, 1e-10, &mut out, &mut failed) },
        UqStatus::Ok
    );
    assert_eq!(failed, 0);
    take(out);

    let mut passed = false;
    let id = CString::new("scomm(Ap(1),Ap(3),1) == 0").unwrap();
    assert_eq!(unsafe { uq_fock_check_identity(h, id.as_ptr(), &mut passed) }, UqStatus::Ok);
    assert!(passed);
    let wrong = CString::new("Ap(1) == Ap(2)").unwrap();
    assert_eq!(unsafe { uq_fock_check_identity(h, wrong.as_ptr(), &mut passed) }, UqStatus::Ok);
    assert!(!passed);
    unsafe { uq_fock_free(h) };
}

#[test]
fn header_declares_the_interface_and_compiles() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("uqfock.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "typedef struct UqFock UqFock",
        "UQ_STATUS_OK = 0",
        "uq_fock_new",
        "uq_fock_free",
        "uq_fock_dim",
        "uq_dim_formula",
        "uq_fock_basis_json",
        "uq_fock_matrix_json",
        "uq_fock_verify_json",
        "uq_fock_verify_numeric_json",
        "uq_fock_check_identity",
        "uq_last_error_message",
        "uq_string_free",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
    let src = std::env::temp_dir().join(format!("uqfock_header_{}.c", std::process::id()));
    std::fs::write(&src, "#include \"uqfock.h\"\nint main(void) { UqFock *h = 0; return (int)uq_fock_new(1, 1, 1, &h); }\n")
        .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header.parent().unwrap())
        .arg(&src)
        .status();
    let _ = std::fs::remove_file(&src);
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("cc not available; skipped header compilation"),
    }
}
