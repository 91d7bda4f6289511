//! C ABI over the `llab` engine.
//!
//! Instances are opaque handles created from a JSON file or string and
//! released with [`llab_instance_free`]. Every call returns an
//! [`LlabStatus`]; on anything other than `LLAB_STATUS_OK` or
//! `LLAB_STATUS_CHECK_FAILED`, [`llab_last_error_message`] describes the
//! problem. Report strings are owned by the caller and released with
//! [`llab_string_free`].

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use llab::cli::run::{DEFAULT_COUNT, DEFAULT_SEED};
use llab::cli::{
    exit_code, parse_instance, parse_instance_str, parse_overrides, run_command, Command, InstanceFile, RunOptions,
};

/// Result of every call. The numeric values of the first three match the
/// command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LlabStatus {
    /// Everything passed.
    Ok = 0,
    /// The run completed and a report was produced, but a check failed.
    CheckFailed = 1,
    /// Malformed input: bad JSON, unknown command or parameter, shape errors.
    InvalidInput = 2,
    /// A required pointer argument was null.
    NullArgument = 3,
    /// The input was mathematically out of scope (no report produced).
    OutOfScope = 4,
    /// An internal panic was caught at the boundary.
    Internal = 5,
}

/// Opaque parsed instance file.
pub struct LlabInstance {
    file: InstanceFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("nul bytes removed")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, converting panics into `Internal`.
fn guard(f: impl FnOnce() -> LlabStatus) -> LlabStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            LlabStatus::Internal
        }
    }
}

fn fail(e: &llab::Error) -> LlabStatus {
    set_error(e.to_string());
    if exit_code(e) == 2 {
        LlabStatus::InvalidInput
    } else {
        LlabStatus::OutOfScope
    }
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, LlabStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(LlabStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        LlabStatus::InvalidInput
    })
}

fn store_instance(file: InstanceFile, out: *mut *mut LlabInstance) -> LlabStatus {
    // SAFETY: `out` was checked non-null by the caller.
    unsafe { *out = Box::into_raw(Box::new(LlabInstance { file })) };
    LlabStatus::Ok
}

/// Parses an instance from a JSON string. On success `*out` receives a
/// handle to release with [`llab_instance_free`].
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn llab_instance_from_json(json: *const c_char, out: *mut *mut LlabInstance) -> LlabStatus {
    guard(|| {
        if out.is_null() {
            set_error("out is null");
            return LlabStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let src = match text(json, "json") {
            Ok(s) => s,
            Err(s) => return s,
        };
        match parse_instance_str(src) {
            Ok(file) => store_instance(file, out),
            Err(e) => fail(&e),
        }
    })
}

/// Reads and parses an instance file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn llab_instance_load(path: *const c_char, out: *mut *mut LlabInstance) -> LlabStatus {
    guard(|| {
        if out.is_null() {
            set_error("out is null");
            return LlabStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let path = match text(path, "path") {
            Ok(s) => s,
            Err(s) => return s,
        };
        match parse_instance(std::path::Path::new(path)) {
            Ok(file) => store_instance(file, out),
            Err(e) => fail(&e),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `inst` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn llab_instance_free(inst: *mut LlabInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Canonical JSON of the instance; release with [`llab_string_free`].
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn llab_instance_canonical(inst: *const LlabInstance, out: *mut *mut c_char) -> LlabStatus {
    guard(|| {
        if inst.is_null() || out.is_null() {
            set_error("null argument");
            return LlabStatus::NullArgument;
        }
        *out = into_c(&(*inst).file.canonical());
        LlabStatus::Ok
    })
}

fn into_c(s: &str) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

unsafe fn run_impl(
    inst: *const LlabInstance,
    command: Command,
    params: *const c_char,
    seed: u64,
    count: usize,
    out_json: *mut *mut c_char,
) -> LlabStatus {
    if inst.is_null() || out_json.is_null() {
        set_error("null argument");
        return LlabStatus::NullArgument;
    }
    *out_json = ptr::null_mut();
    let overrides = if params.is_null() {
        BTreeMap::new()
    } else {
        let spec = match text(params, "params") {
            Ok(s) => s,
            Err(s) => return s,
        };
        match parse_overrides(spec) {
            Ok(o) => o,
            Err(e) => return fail(&e),
        }
    };
    let opts = RunOptions { seed, count, overrides };
    match run_command(command, &(*inst).file, &opts) {
        Ok(outcome) => {
            *out_json = into_c(&format!("{:#}\n", outcome.document));
            if outcome.passed {
                LlabStatus::Ok
            } else {
                LlabStatus::CheckFailed
            }
        }
        Err(e) => fail(&e),
    }
}

/// Runs `command` (`check`, `frame`, `forms`, `assoc`, `minimal`, `fuzz` or
/// `report`) with optional parameter overrides such as `"lambda1=1,mu=2/3"`
/// (`params` may be null). `fuzz` uses the default seed and count. On
/// `LLAB_STATUS_OK` and `LLAB_STATUS_CHECK_FAILED`, `*out_json` receives the
/// JSON report.
///
/// # Safety
/// `inst` must be a live handle, `command` a valid string, `params` null or
/// a valid string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn llab_run(
    inst: *const LlabInstance,
    command: *const c_char,
    params: *const c_char,
    out_json: *mut *mut c_char,
) -> LlabStatus {
    guard(|| {
        let name = match text(command, "command") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let Some(cmd) = Command::from_name(name) else {
            set_error(format!("unknown command `{name}`"));
            return LlabStatus::InvalidInput;
        };
        run_impl(inst, cmd, params, DEFAULT_SEED, DEFAULT_COUNT, out_json)
    })
}

/// Seeded randomized campaign over the instance's parameters.
///
/// # Safety
/// As for [`llab_run`].
#[no_mangle]
pub unsafe extern "C" fn llab_fuzz(
    inst: *const LlabInstance,
    seed: u64,
    count: usize,
    params: *const c_char,
    out_json: *mut *mut c_char,
) -> LlabStatus {
    guard(|| run_impl(inst, Command::Fuzz, params, seed, count, out_json))
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn llab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn llab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn llab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
