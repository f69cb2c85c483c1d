//! C ABI for `laxcomma`.
//!
//! A spec file is loaded once into an opaque [`LaxcommaSpec`] handle.
//! Operations return a [`LaxcommaStatus`] and hand back their result as a
//! JSON string owned by the caller, released with
//! [`laxcomma_string_free`]. After a non-zero status,
//! [`laxcomma_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use laxcomma::cli::{commands, load_spec, run_suite, Env, SuiteOptions};
use laxcomma::Error;
use serde_json::Value;

/// Result codes. `Ok` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaxcommaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// The spec text does not parse or a block fails validation.
    InvalidSpec = 3,
    /// A construction failed or its inputs do not fit together.
    Construction = 4,
    UnknownSuite = 5,
    BoundsTooLarge = 6,
    BudgetExhausted = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// A validated spec file.
pub struct LaxcommaSpec {
    env: Env,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LaxcommaStatus {
    match e {
        Error::Parse { .. } | Error::Invalid { .. } => LaxcommaStatus::InvalidSpec,
        Error::UnknownSuite(_) => LaxcommaStatus::UnknownSuite,
        Error::BoundsTooLarge(_) => LaxcommaStatus::BoundsTooLarge,
        Error::BudgetExhausted(_) => LaxcommaStatus::BudgetExhausted,
        _ => LaxcommaStatus::Construction,
    }
}

struct Fail(LaxcommaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any failure, and catches panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LaxcommaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LaxcommaStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal error");
            LaxcommaStatus::Internal
        }
    }
}

/// # Safety
/// `p` is null or a valid nul-terminated string.
unsafe fn cstr<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(LaxcommaStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(LaxcommaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or a valid nul-terminated string.
unsafe fn opt_cstr<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        cstr(p, what).map(Some)
    }
}

/// # Safety
/// `spec` is null or a handle from [`laxcomma_spec_load`].
unsafe fn spec_ref<'a>(spec: *const LaxcommaSpec) -> Result<&'a Env, Fail> {
    spec.as_ref().map(|s| &s.env).ok_or_else(|| Fail(LaxcommaStatus::NullArgument, "spec is null".into()))
}

/// # Safety
/// `out` is null or writable.
unsafe fn put_json(out: *mut *mut c_char, v: &Value) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(LaxcommaStatus::NullArgument, "out is null".into()));
    }
    let s = serde_json::to_string(v).expect("json");
    *out = CString::new(s).expect("json has no nul").into_raw();
    Ok(())
}

/// Parses and validates `text`. On success `*out` receives a handle to
/// release with [`laxcomma_spec_free`].
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn laxcomma_spec_load(text: *const c_char, out: *mut *mut LaxcommaSpec) -> LaxcommaStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(LaxcommaStatus::NullArgument, "out is null".into()));
        }
        *out = ptr::null_mut();
        let env = load_spec(cstr(text, "text")?)?;
        *out = Box::into_raw(Box::new(LaxcommaSpec { env }));
        Ok(())
    })
}

/// # Safety
/// `spec` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn laxcomma_spec_free(spec: *mut LaxcommaSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Number of blocks in the spec, or 0 for a null handle.
///
/// # Safety
/// `spec` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn laxcomma_spec_block_count(spec: *const LaxcommaSpec) -> usize {
    spec.as_ref().map_or(0, |s| s.env.len())
}

/// Comma category of two functors of the spec, or comma object of two
/// morphisms of a po-category. `within` may be null.
///
/// # Safety
/// Strings are nul-terminated; `spec` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn laxcomma_comma(
    spec: *const LaxcommaSpec,
    a: *const c_char,
    b: *const c_char,
    within: *const c_char,
    out: *mut *mut c_char,
) -> LaxcommaStatus {
    guard(|| {
        let v = commands::comma(spec_ref(spec)?, cstr(a, "a")?, cstr(b, "b")?, opt_cstr(within, "within")?)?;
        put_json(out, &v)
    })
}

/// Strict pullback, as [`laxcomma_comma`].
///
/// # Safety
/// As [`laxcomma_comma`].
#[no_mangle]
pub unsafe extern "C" fn laxcomma_pullback(
    spec: *const LaxcommaSpec,
    a: *const c_char,
    b: *const c_char,
    within: *const c_char,
    out: *mut *mut c_char,
) -> LaxcommaStatus {
    guard(|| {
        let v = commands::pullback(spec_ref(spec)?, cstr(a, "a")?, cstr(b, "b")?, opt_cstr(within, "within")?)?;
        put_json(out, &v)
    })
}

/// Pointwise Kan extension of `j` along `h`, right when `right` is true.
///
/// # Safety
/// As [`laxcomma_comma`].
#[no_mangle]
pub unsafe extern "C" fn laxcomma_kan(
    spec: *const LaxcommaSpec,
    h: *const c_char,
    j: *const c_char,
    right: bool,
    out: *mut *mut c_char,
) -> LaxcommaStatus {
    guard(|| {
        let v = commands::kan(spec_ref(spec)?, cstr(h, "h")?, cstr(j, "j")?, right)?;
        put_json(out, &v)
    })
}

/// Coequalizer of `g, h` in preorders. With `a` and `b` both non-null,
/// also the lax slice coequalizer over their common codomain.
///
/// # Safety
/// As [`laxcomma_comma`].
#[no_mangle]
pub unsafe extern "C" fn laxcomma_coeq(
    spec: *const LaxcommaSpec,
    g: *const c_char,
    h: *const c_char,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> LaxcommaStatus {
    guard(|| {
        let over = match (opt_cstr(a, "a")?, opt_cstr(b, "b")?) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => return Err(Fail(LaxcommaStatus::NullArgument, "pass both of a and b, or neither".into())),
        };
        let v = commands::coeq(spec_ref(spec)?, cstr(g, "g")?, cstr(h, "h")?, over)?;
        put_json(out, &v)
    })
}

/// Whether `f -| g` in a po-category of the spec. `within` may be null.
///
/// # Safety
/// As [`laxcomma_comma`].
#[no_mangle]
pub unsafe extern "C" fn laxcomma_adjoint_check(
    spec: *const LaxcommaSpec,
    f: *const c_char,
    g: *const c_char,
    within: *const c_char,
    out: *mut *mut c_char,
) -> LaxcommaStatus {
    guard(|| {
        let v = commands::adjoint_check(spec_ref(spec)?, cstr(f, "f")?, cstr(g, "g")?, opt_cstr(within, "within")?)?;
        put_json(out, &v)
    })
}

/// # Safety
/// As [`laxcomma_comma`].
#[no_mangle]
pub unsafe extern "C" fn laxcomma_kz_witness(
    spec: *const LaxcommaSpec,
    b: *const c_char,
    out: *mut *mut c_char,
) -> LaxcommaStatus {
    guard(|| {
        let v = commands::kz(spec_ref(spec)?, cstr(b, "b")?)?;
        put_json(out, &v)
    })
}

/// Runs every `command` block of the spec; the result is a JSON array.
///
/// # Safety
/// `spec` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn laxcomma_run_commands(spec: *const LaxcommaSpec, out: *mut *mut c_char) -> LaxcommaStatus {
    guard(|| {
        let env = spec_ref(spec)?;
        let all = env.commands.iter().map(|c| commands::run_command(env, c)).collect::<Result<Vec<_>, _>>()?;
        put_json(out, &Value::Array(all))
    })
}

/// Runs a property suite. `max_elems` of 0 keeps the suite's default.
/// A suite with failing records still returns `Ok`; read `totals.fail`.
///
/// # Safety
/// `name` is nul-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn laxcomma_suite(
    name: *const c_char,
    max_elems: usize,
    out: *mut *mut c_char,
) -> LaxcommaStatus {
    guard(|| {
        let opts = SuiteOptions { max_elems: (max_elems > 0).then_some(max_elems), ..Default::default() };
        let rep = run_suite(cstr(name, "name")?, &opts)?;
        put_json(out, &serde_json::to_value(&rep).expect("json"))
    })
}

/// Releases a string returned through an `out` parameter.
///
/// # Safety
/// `s` is null or came from this library and was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn laxcomma_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn laxcomma_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
