//! C ABI for the `relatives` library.
//!
//! Space forms and verdicts are opaque handles owned by the caller and
//! released with the matching `*_free` function. Fallible calls return a
//! [`RelStatus`]; on failure the message is available from
//! [`rel_last_error`] on the same thread. Strings returned by the library
//! must be released with [`rel_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use relatives::algebra::scalar::parse_rational;
use relatives::decider::{decide_relatives, parse_form, SpaceForm, Status, Verdict};
use relatives::expansion::expand_fubini_power;
use relatives::Error;

/// Result code of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Domain = 5,
    Consistency = 6,
    Json = 7,
    Panic = 8,
}

/// Verdict status as an integer.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelVerdictStatus {
    Relatives = 0,
    NotRelatives = 1,
    Unknown = 2,
}

/// Opaque space form.
pub struct RelSpaceForm(SpaceForm);

/// Opaque verdict with its certificate.
pub struct RelVerdict(Verdict);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(code: RelStatus, msg: impl Into<String>) -> RelStatus {
    set_error(msg);
    code
}

fn status_of(e: &Error) -> RelStatus {
    match e {
        Error::Parse { .. } => RelStatus::Parse,
        Error::Validation(_) => RelStatus::Validation,
        Error::Consistency(_) => RelStatus::Consistency,
        Error::Json(_) => RelStatus::Json,
        _ => RelStatus::Domain,
    }
}

fn from_error(e: Error) -> RelStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning a panic into [`RelStatus::Panic`].
fn guard(f: impl FnOnce() -> RelStatus) -> RelStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(RelStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, RelStatus> {
    if p.is_null() {
        return Err(fail(RelStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(RelStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rel_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn rel_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `FS(n, b)`, `CE(N, s)`, `CP(N, s, b)` or `CH(N, s, b)`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rel_space_form_parse(
    text: *const c_char,
    out: *mut *mut RelSpaceForm,
) -> RelStatus {
    guard(|| {
        if out.is_null() {
            return fail(RelStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match parse_form(text) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(RelSpaceForm(f)));
                RelStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `form` must come from [`rel_space_form_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rel_space_form_free(form: *mut RelSpaceForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Canonical text of the form; release with [`rel_string_free`].
///
/// # Safety
/// `form` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn rel_space_form_render(form: *const RelSpaceForm) -> *mut c_char {
    match form.as_ref() {
        Some(f) => into_c_string(f.0.render()),
        None => {
            set_error("null space form");
            ptr::null_mut()
        }
    }
}

/// Decides the pair. On success `*out` receives a verdict handle.
///
/// # Safety
/// `f1` and `f2` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rel_decide(
    f1: *const RelSpaceForm,
    f2: *const RelSpaceForm,
    out: *mut *mut RelVerdict,
) -> RelStatus {
    guard(|| {
        if out.is_null() {
            return fail(RelStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let (Some(f1), Some(f2)) = (f1.as_ref(), f2.as_ref()) else {
            return fail(RelStatus::NullPointer, "null space form");
        };
        match decide_relatives(&f1.0, &f2.0) {
            Ok(v) => {
                *out = Box::into_raw(Box::new(RelVerdict(v)));
                RelStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `v` must come from [`rel_decide`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rel_verdict_free(v: *mut RelVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `v` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rel_verdict_status(v: *const RelVerdict) -> RelVerdictStatus {
    match v.as_ref().map(|v| v.0.status) {
        Some(Status::Relatives) => RelVerdictStatus::Relatives,
        Some(Status::NotRelatives) => RelVerdictStatus::NotRelatives,
        _ => RelVerdictStatus::Unknown,
    }
}

/// Rule identifier (`"R0"`, `"R0'"`, ..., `"none"`), static storage.
///
/// # Safety
/// `v` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn rel_verdict_rule(v: *const RelVerdict) -> *const c_char {
    let s: &'static str = match v.as_ref() {
        Some(v) => match v.0.rule.as_str() {
            "R0" => "R0\0",
            "R0'" => "R0'\0",
            "R1" => "R1\0",
            "R2" => "R2\0",
            "R3" => "R3\0",
            "R4" => "R4\0",
            "R5" => "R5\0",
            "R6" => "R6\0",
            _ => "none\0",
        },
        None => return ptr::null(),
    };
    s.as_ptr().cast()
}

/// Full verdict as JSON; release with [`rel_string_free`].
///
/// # Safety
/// `v` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn rel_verdict_to_json(v: *const RelVerdict) -> *mut c_char {
    let Some(v) = v.as_ref() else {
        set_error("null verdict");
        return ptr::null_mut();
    };
    match serde_json::to_string(&v.0) {
        Ok(s) => into_c_string(s),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Re-evaluates the verdict's certificate; writes 1 to `*ok` if every
/// recorded claim reproduces, else 0.
///
/// # Safety
/// `v` must be a live handle; `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rel_verdict_recheck(v: *const RelVerdict, ok: *mut i32) -> RelStatus {
    guard(|| {
        let (Some(v), false) = (v.as_ref(), ok.is_null()) else {
            return fail(RelStatus::NullPointer, "null argument");
        };
        match v.0.certificate.recheck() {
            Ok(b) => {
                *ok = i32::from(b);
                RelStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Expansion of `(1 + b |z|^2)^r - 1` in `n` variables as JSON.
///
/// # Safety
/// `b` must be a NUL-terminated rational literal; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rel_expand_json(
    n: u32,
    b: *const c_char,
    r: u32,
    out: *mut *mut c_char,
) -> RelStatus {
    guard(|| {
        if out.is_null() {
            return fail(RelStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let b = match read_str(b) {
            Ok(t) => t,
            Err(code) => return code,
        };
        let result = parse_rational(b).and_then(|b| expand_fubini_power(n as usize, &b, r));
        match result.and_then(|e| serde_json::to_string(&e).map_err(Error::from)) {
            Ok(s) => {
                *out = into_c_string(s);
                RelStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Runs the command-line interface on `argc` arguments (program name
/// excluded). Standard output and error go to `*out_stdout` and
/// `*out_stderr` (either may be null to discard). Returns the exit code.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn rel_cli_run(
    argc: usize,
    argv: *const *const c_char,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> i32 {
    let result = catch_unwind(AssertUnwindSafe(|| {
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            if argv.is_null() {
                return Err(fail(RelStatus::NullPointer, "null argv"));
            }
            args.push(read_str(*argv.add(i))?.to_string());
        }
        Ok(relatives::cli::run(args))
    }));
    let out = match result {
        Ok(Ok(out)) => out,
        _ => return relatives::cli::EXIT_VALIDATION,
    };
    if !out_stdout.is_null() {
        *out_stdout = into_c_string(out.stdout);
    }
    if !out_stderr.is_null() {
        *out_stderr = into_c_string(out.stderr);
    }
    out.code
}
