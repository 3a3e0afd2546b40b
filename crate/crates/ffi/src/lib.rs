//! C ABI for `curvecount`.
//!
//! Every call returns a [`CcStatus`]. Strings handed out through `out`
//! pointers are owned by the caller and must be released with
//! [`cc_string_free`]. The message for the most recent failure on the
//! calling thread is available from [`cc_last_error`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use curvecount::caporaso_harris::{ch_invariant, CHKey};
use curvecount::expr::{evaluate, parse};
use curvecount::{wdvv, Error, Session};
use libc::c_char;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Parse = 4,
    Unsupported = 5,
    Internal = 6,
}

/// Evaluation session for one degree. Holds the memo table.
pub struct CcSession {
    inner: Session,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CcStatus {
    set_error(&e.to_string());
    match e {
        Error::Input(_) => CcStatus::InvalidInput,
        Error::Parse { .. } => CcStatus::Parse,
        Error::Unsupported(_) => CcStatus::Unsupported,
        Error::Inconsistent(_) => CcStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> CcStatus) -> CcStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("panic inside curvecount");
        CcStatus::Internal
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CcStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CcStatus::Ok
        }
        Err(_) => {
            set_error("result contains a NUL byte");
            CcStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CcStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(CcStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        CcStatus::InvalidUtf8
    })
}

unsafe fn read_u32s(p: *const u32, len: usize) -> Result<Vec<u32>, CcStatus> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if p.is_null() {
        set_error("null array argument");
        return Err(CcStatus::NullPointer);
    }
    Ok(std::slice::from_raw_parts(p, len).to_vec())
}

/// Creates a session for degree `d` and stores it in `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_session_new(d: u32, out: *mut *mut CcSession) -> CcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return CcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        match Session::new(d) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CcSession { inner }));
                CcStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a session. Null is ignored.
///
/// # Safety
/// `session` must be null or a pointer from [`cc_session_new`] that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn cc_session_free(session: *mut CcSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Degree of the session, 0 for null.
///
/// # Safety
/// `session` must be null or a live session pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_session_degree(session: *const CcSession) -> u32 {
    session.as_ref().map(|s| s.inner.d()).unwrap_or(0)
}

unsafe fn eval_with(
    session: *mut CcSession,
    expr: *const c_char,
    out: *mut *mut c_char,
    render: fn(&curvecount::expr::Evaluation, &str) -> String,
) -> CcStatus {
    guard(|| {
        if session.is_null() || out.is_null() {
            set_error("null session or out pointer");
            return CcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let src = match read_str(expr) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let s = &mut (*session).inner;
        match parse(src).and_then(|e| evaluate(&e, s)) {
            Ok(ev) => write_string(out, render(&ev, src)),
            Err(e) => status_of(&e),
        }
    })
}

/// Evaluates an expression such as `"[T1 T1 T2] * y1^2 * yd^31"` and writes
/// the ordered count as a decimal string.
///
/// # Safety
/// `session` must be a live session, `expr` a NUL-terminated string and
/// `out` a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_eval(session: *mut CcSession, expr: *const c_char, out: *mut *mut c_char) -> CcStatus {
    eval_with(session, expr, out, |ev, _| ev.result.ordered_value.to_string())
}

/// Like [`cc_eval`] but writes a JSON object with the ordered and unordered
/// values, the symmetry factor, the space and any warnings.
///
/// # Safety
/// Same as [`cc_eval`].
#[no_mangle]
pub unsafe extern "C" fn cc_eval_json(session: *mut CcSession, expr: *const c_char, out: *mut *mut c_char) -> CcStatus {
    eval_with(session, expr, out, |ev, src| curvecount::report::json(src, ev).to_string())
}

/// Severi-type invariant `N^{d,delta}(alpha, beta)` written as a decimal string.
///
/// # Safety
/// `alpha` must point to `alpha_len` readable `u32` values (may be null when
/// the length is 0), likewise `beta`; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_ch_invariant(
    d: u32,
    delta: u32,
    alpha: *const u32,
    alpha_len: usize,
    beta: *const u32,
    beta_len: usize,
    out: *mut *mut c_char,
) -> CcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return CcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let (a, b) = match (read_u32s(alpha, alpha_len), read_u32s(beta, beta_len)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        if d == 0 {
            set_error("invalid input: degree must be positive");
            return CcStatus::InvalidInput;
        }
        let key = CHKey::new(d, delta, a, b);
        if !key.consistent() {
            set_error("invalid input: sequences do not satisfy I(a) + I(b) = d");
            return CcStatus::InvalidInput;
        }
        write_string(out, ch_invariant(&key).to_string())
    })
}

/// Rational degree `d` curves through `3d - 1` points.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_kontsevich_nd(d: u32, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return CcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        match wdvv::kontsevich_nd(d) {
            Ok(v) => write_string(out, v.to_string()),
            Err(e) => status_of(&e),
        }
    })
}

/// Rational degree `d` curves through `3d - 2` points tangent to a line.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_wdvv_nd_t1(d: u32, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return CcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        match wdvv::nd_t1(d) {
            Ok(v) => write_string(out, v.to_string()),
            Err(e) => status_of(&e),
        }
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn cc_status_message(status: CcStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        CcStatus::Ok => b"ok\0",
        CcStatus::NullPointer => b"null pointer\0",
        CcStatus::InvalidUtf8 => b"invalid UTF-8\0",
        CcStatus::InvalidInput => b"invalid input\0",
        CcStatus::Parse => b"parse error\0",
        CcStatus::Unsupported => b"unsupported query\0",
        CcStatus::Internal => b"internal error\0",
    };
    s.as_ptr() as *const c_char
}

/// Message of the last failure on this thread, empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn cc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
