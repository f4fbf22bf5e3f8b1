//! C bindings for the Hall-algebra engine.
//!
//! The interface is a handle-and-JSON design: a session handle owns the
//! class tables for one (quiver, prime, bound) triple, every query returns
//! a JSON document in a newly allocated C string, and every call reports an
//! `HfStatus`. On any non-OK status, `hf_last_error` returns a
//! human-readable message for the calling thread.
//!
//! Memory contract: strings returned through `out` parameters are owned by
//! the caller and must be released with `hf_string_free`; sessions must be
//! released with `hf_session_free`. Handles are not thread-safe for
//! concurrent mutation but queries only take shared references and may run
//! from several threads.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use hallforge::error::Error;
use hallforge::export;
use hallforge::hallalg::{ihall_product, ringel_product, ElementKind, HallElement};
use hallforge::quiver::Quiver;
use hallforge::session::Session;
use hallforge::verify;

/// Status of a call; numerically identical to the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HfStatus {
    /// Success.
    Ok = 0,
    /// A verification suite ran and at least one check failed.
    VerifyFailed = 1,
    /// Invalid input: bad JSON, unknown key, non-prime field size, null
    /// pointer.
    Invalid = 2,
    /// The request exceeds the enumeration budget.
    Budget = 3,
}

/// Opaque session over one quiver, prime, and dimension bound.
pub struct HfSession {
    inner: Session,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> HfStatus {
    match err.exit_code() {
        1 => HfStatus::VerifyFailed,
        3 => HfStatus::Budget,
        _ => HfStatus::Invalid,
    }
}

fn fail(err: &Error) -> HfStatus {
    set_error(&err.to_string());
    status_of(err)
}

fn invalid(msg: &str) -> HfStatus {
    set_error(msg);
    HfStatus::Invalid
}

/// Serializes a value into a fresh C string and stores it in `out`.
fn emit<T: serde::Serialize>(value: &T, out: *mut *mut c_char) -> HfStatus {
    let json = match serde_json::to_string_pretty(value) {
        Ok(j) => j,
        Err(e) => return invalid(&format!("serialization failed: {e}")),
    };
    match CString::new(json) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            HfStatus::Ok
        }
        Err(_) => invalid("serialized document contains an interior NUL"),
    }
}

unsafe fn required_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, HfStatus> {
    if ptr.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| invalid(&format!("{what} is not valid UTF-8")))
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
///
/// # Safety
/// The returned pointer must not be freed or used after a later call from
/// this thread fails.
#[no_mangle]
pub unsafe extern "C" fn hf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a session. `quiver_json` is the same document the command-line
/// tool reads: `{"vertices": ["1", ...], "arrows": [["1","2"], ...]}`.
/// On success writes a handle into `out` and returns `Ok`.
///
/// # Safety
/// `quiver_json` must be a valid NUL-terminated string and `out` a valid
/// pointer; the handle must later be released with `hf_session_free`.
#[no_mangle]
pub unsafe extern "C" fn hf_session_new(
    quiver_json: *const c_char,
    prime: u64,
    max_dim: usize,
    out: *mut *mut HfSession,
) -> HfStatus {
    if out.is_null() {
        return invalid("out is null");
    }
    let text = match required_str(quiver_json, "quiver_json") {
        Ok(t) => t,
        Err(s) => return s,
    };
    let quiver = match Quiver::from_json_str(text) {
        Ok(q) => q,
        Err(e) => return fail(&e),
    };
    match Session::new(quiver, prime, max_dim) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(HfSession { inner }));
            HfStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Releases a session handle. A null handle is a no-op.
///
/// # Safety
/// `session` must be a pointer returned by `hf_session_new` that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn hf_session_free(session: *mut HfSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

unsafe fn session_ref<'a>(ptr: *const HfSession) -> Result<&'a Session, HfStatus> {
    if ptr.is_null() {
        return Err(invalid("session is null"));
    }
    Ok(&(*ptr).inner)
}

/// Writes the class table as a JSON array of
/// `{"id", "dim", "mats"}` objects.
///
/// # Safety
/// `session` must be a live handle and `out` a valid pointer; the returned
/// string must be released with `hf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hf_classify(
    session: *const HfSession,
    out: *mut *mut c_char,
) -> HfStatus {
    if out.is_null() {
        return invalid("out is null");
    }
    let s = match session_ref(session) {
        Ok(s) => s,
        Err(st) => return st,
    };
    emit(&export::class_list(s), out)
}

/// Multiplies two basis elements. `algebra` is `hall`, `ihall`, or `dh`;
/// keys use the same expressions as the command line (`"S1"`, `"4"`,
/// `"K(1,0)"`, `"S1@(0,1)"`). Writes the product element as JSON.
///
/// # Safety
/// All pointers must be valid; the returned string must be released with
/// `hf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hf_mul(
    session: *const HfSession,
    algebra: *const c_char,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> HfStatus {
    if out.is_null() {
        return invalid("out is null");
    }
    let s = match session_ref(session) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let (algebra, left, right) = match (
        required_str(algebra, "algebra"),
        required_str(left, "left"),
        required_str(right, "right"),
    ) {
        (Ok(a), Ok(l), Ok(r)) => (a, l, r),
        (Err(st), ..) | (_, Err(st), _) | (.., Err(st)) => return st,
    };
    let kind = match algebra {
        "hall" => ElementKind::Rep,
        "ihall" => ElementKind::IHall,
        "dh" => ElementKind::Dh,
        other => return invalid(&format!("unknown algebra {other:?}")),
    };
    let go = || -> hallforge::error::Result<HallElement> {
        let x = HallElement::basis(s.parse_key(kind, left)?, s.q());
        let y = HallElement::basis(s.parse_key(kind, right)?, s.q());
        match kind {
            ElementKind::Rep => ringel_product(s.reps(), &x, &y),
            ElementKind::IHall => ihall_product(s.reps(), &x, &y),
            ElementKind::Dh => s.dh().product(&x, &y),
        }
    };
    match go() {
        Ok(product) => emit(&product.to_json(), out),
        Err(e) => fail(&e),
    }
}

/// Runs a verification suite (`euler`, `rp`, `assoc`, `oracle`, `phi`,
/// `serre`, `all`) and writes the structured report as JSON. Returns
/// `VerifyFailed` if the report contains a failed check; the report is
/// still written in that case.
///
/// # Safety
/// `session`, `suite`, and `out` must be valid; the returned string must be
/// released with `hf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hf_verify(
    session: *const HfSession,
    suite: *const c_char,
    out: *mut *mut c_char,
) -> HfStatus {
    if out.is_null() {
        return invalid("out is null");
    }
    let s = match session_ref(session) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let suite = match required_str(suite, "suite") {
        Ok(t) => t,
        Err(st) => return st,
    };
    match verify::run_suite(s, suite) {
        Ok(report) => {
            let status = emit(&report, out);
            if status == HfStatus::Ok && !report.passed {
                set_error("verification failed; see the report");
                return HfStatus::VerifyFailed;
            }
            status
        }
        Err(e) => fail(&e),
    }
}

/// Writes the derived-Hall structure-constant table as JSON.
///
/// # Safety
/// `session` and `out` must be valid; the returned string must be released
/// with `hf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hf_export_table(
    session: *const HfSession,
    out: *mut *mut c_char,
) -> HfStatus {
    if out.is_null() {
        return invalid("out is null");
    }
    let s = match session_ref(session) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match export::g_table(s) {
        Ok(table) => emit(&table, out),
        Err(e) => fail(&e),
    }
}

/// Releases a string returned by any `hf_` call. A null pointer is a
/// no-op.
///
/// # Safety
/// `s` must have been returned by this library and not freed already.
#[no_mangle]
pub unsafe extern "C" fn hf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// Shared queries from several threads are sound because every cache inside
// a session is lock-guarded.
const _: () = {
    const fn check<T: Sync>() {}
    check::<Session>();
};
