//! C interface. Every function returns a [`UqStatus`]; on failure the message
//! is available from [`uq_last_error_message`] until the next call on the
//! same thread. Strings handed out must be released with [`uq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use uqfock::exprlang::{parse_expr, parse_identity, EvalContext};
use uqfock::fockspace::FockParams;
use uqfock::operators::{matrix_to_json, Exact, Generators, Mode, Numeric};
use uqfock::qarith::LaurentPoly;
use uqfock::relations::{verify_all, Status};
use uqfock::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidParams = 3,
    IndexRange = 4,
    BadQ = 5,
    Syntax = 6,
    Arity = 7,
    GradeUndefined = 8,
    NonDivisible = 9,
    UnresolvedAtom = 10,
    NegativePower = 11,
    Overflow = 12,
    Other = 13,
    Panic = 14,
}

impl From<&Error> for UqStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParams(_) => UqStatus::InvalidParams,
            Error::IndexRange { .. } => UqStatus::IndexRange,
            Error::BadQ(_) => UqStatus::BadQ,
            Error::Syntax { .. } => UqStatus::Syntax,
            Error::Arity { .. } => UqStatus::Arity,
            Error::GradeUndefined(_) => UqStatus::GradeUndefined,
            Error::NonDivisible { .. } => UqStatus::NonDivisible,
            Error::UnresolvedAtom(_) => UqStatus::UnresolvedAtom,
            Error::NegativePower(_) => UqStatus::NegativePower,
            _ => UqStatus::Other,
        }
    }
}

/// A Fock space together with its exact generator matrices.
pub struct UqFock {
    gens: Generators<LaurentPoly>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

struct Fail(UqStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(UqStatus::from(&e), format!("{e} [{}]", e.code()))
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> UqStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UqStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            UqStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(UqStatus::NullPointer, "null pointer argument".into())
}

unsafe fn handle<'a>(h: *const UqFock) -> Result<&'a UqFock, Fail> {
    h.as_ref().ok_or_else(null)
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(UqStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(UqStatus::Other, "interior NUL in output".into()))?;
    put(out, c.into_raw())
}

/// Builds the Fock space `W_p` for `U_q[sl(n+1|m)]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uq_fock_new(n: usize, m: usize, p: usize, out: *mut *mut UqFock) -> UqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let gens = Generators::exact(FockParams::new(n, m, p)?)?;
        put(out, Box::into_raw(Box::new(UqFock { gens })))
    })
}

/// # Safety
/// `h` must come from [`uq_fock_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn uq_fock_free(h: *mut UqFock) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uq_fock_dim(h: *const UqFock, out: *mut usize) -> UqStatus {
    guard(|| put(out, handle(h)?.gens.basis().dim()))
}

/// Closed-form dimension, without enumerating the basis.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uq_dim_formula(n: usize, m: usize, p: usize, out: *mut u64) -> UqStatus {
    guard(|| {
        let d = FockParams::new(n, m, p)?.dim_formula();
        let d = u64::try_from(d).map_err(|_| Fail(UqStatus::Overflow, format!("dimension {d} exceeds 64 bits")))?;
        put(out, d)
    })
}

/// `{"params": ..., "states": [[r_1, ...], ...]}`
///
/// # Safety
/// `h` must be a live handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uq_fock_basis_json(h: *const UqFock, out: *mut *mut c_char) -> UqStatus {
    guard(|| put_string(out, handle(h)?.gens.basis().to_json().to_string()))
}

/// Exact matrix of an expression such as `"Ap(1)"` or `"scomm(Am(1), Ap(1))"`.
///
/// # Safety
/// `h` must be a live handle, `expr` a NUL-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uq_fock_matrix_json(h: *const UqFock, expr: *const c_char, out: *mut *mut c_char) -> UqStatus {
    guard(|| {
        let h = handle(h)?;
        let e = parse_expr(text(expr)?)?;
        let m = EvalContext::new(&Exact, &h.gens).eval_matrix(&e)?.with_label(e.to_string());
        put_string(out, matrix_to_json(&m, &Mode::Exact).to_string())
    })
}

/// Exact verification report; `failed` receives the number of failing relations.
///
/// # Safety
/// `h` must be a live handle; `out` and `failed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uq_fock_verify_json(h: *const UqFock, out: *mut *mut c_char, failed: *mut usize) -> UqStatus {
    guard(|| {
        if failed.is_null() {
            return Err(null());
        }
        let report = verify_all(&Exact, &handle(h)?.gens);
        put(failed, report.failed())?;
        put_string(out, report.to_json().to_string())
    })
}

/// Verification with the normalized numeric matrices at `q0`.
///
/// # Safety
/// `h` must be a live handle; `out` and `failed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uq_fock_verify_numeric_json(
    h: *const UqFock,
    q0: f64,
    tol: f64,
    out: *mut *mut c_char,
    failed: *mut usize,
) -> UqStatus {
    guard(|| {
        if failed.is_null() {
            return Err(null());
        }
        let params = *handle(h)?.gens.params();
        let real = Numeric::new(q0, tol)?;
        let gens = Generators::normalized_numeric(params, q0)?;
        let report = verify_all(&real, &gens);
        put(failed, report.failed())?;
        put_string(out, report.to_json().to_string())
    })
}

/// Checks an identity `lhs == rhs` exactly.
///
/// # Safety
/// `h` must be a live handle, `identity` a NUL-terminated string, `passed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uq_fock_check_identity(h: *const UqFock, identity: *const c_char, passed: *mut bool) -> UqStatus {
    guard(|| {
        let h = handle(h)?;
        let id = parse_identity(text(identity)?)?;
        let report = uqfock::exprlang::check_identity(&id, &EvalContext::new(&Exact, &h.gens))?;
        put(passed, report.status == Status::Pass)
    })
}

/// Message of the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn uq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn uq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
