//! The C ABI exercised from Rust, plus a C program built against the
//! generated header and the static library.

use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use llab_ffi::*;

fn example() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/examples/f0_7dim.json")
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = llab_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn load() -> *mut LlabInstance {
    let path = c(example().to_str().unwrap());
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { llab_instance_load(path.as_ptr(), &mut inst) }, LlabStatus::Ok);
    assert!(!inst.is_null());
    inst
}

/// Runs and takes ownership of the returned report.
fn run(inst: *const LlabInstance, cmd: &str, params: Option<&str>) -> (LlabStatus, Option<serde_json::Value>) {
    let cmd = c(cmd);
    let params = params.map(c);
    let mut out: *mut c_char = ptr::null_mut();
    let st = unsafe { llab_run(inst, cmd.as_ptr(), params.as_ref().map_or(ptr::null(), |p| p.as_ptr()), &mut out) };
    let doc = (!out.is_null()).then(|| {
        let v = serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
        unsafe { llab_string_free(out) };
        v
    });
    (st, doc)
}

#[test]
fn report_and_minimal_through_the_abi() {
    let inst = load();
    let (st, doc) = run(inst, "report", None);
    assert_eq!(st, LlabStatus::Ok);
    let doc = doc.unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["data"]["minimality"]["assoc_minimal"], true);

    let (st, doc) = run(inst, "minimal", Some("lambda1=2,lambda4=-3/2,mu=-2/3"));
    assert_eq!(st, LlabStatus::Ok);
    assert_eq!(doc.unwrap()["parameters"]["mu"], "-2/3");
    assert!(llab_last_error_message().is_null());
    unsafe { llab_instance_free(inst) };
}

#[test]
fn report_matches_the_command_line_json() {
    let inst = load();
    let (_, doc) = run(inst, "check", None);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let path = example();
    let argv = ["llab", "check", path.to_str().unwrap(), "--json"];
    assert_eq!(llab::cli::main_with(argv, &mut out, &mut err, false), 0);
    let cli: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc.unwrap(), cli);
    unsafe { llab_instance_free(inst) };
}

#[test]
fn fuzz_is_seeded() {
    let inst = load();
    let mut a: *mut c_char = ptr::null_mut();
    let mut b: *mut c_char = ptr::null_mut();
    unsafe {
        assert_eq!(llab_fuzz(inst, 5, 4, ptr::null(), &mut a), LlabStatus::Ok);
        assert_eq!(llab_fuzz(inst, 5, 4, ptr::null(), &mut b), LlabStatus::Ok);
        assert_eq!(CStr::from_ptr(a), CStr::from_ptr(b));
        llab_string_free(a);
        llab_string_free(b);
        llab_instance_free(inst);
    }
}

#[test]
fn error_codes() {
    let inst = load();
    let (st, doc) = run(inst, "explode", None);
    assert_eq!((st, doc), (LlabStatus::InvalidInput, None));
    assert!(last_error().contains("unknown command"));

    let (st, _) = run(inst, "check", Some("nu=1"));
    assert_eq!(st, LlabStatus::InvalidInput);
    assert!(last_error().contains("unknown parameter `nu`"));

    let mut out: *mut c_char = ptr::null_mut();
    let cmd = c("check");
    assert_eq!(unsafe { llab_run(ptr::null(), cmd.as_ptr(), ptr::null(), &mut out) }, LlabStatus::NullArgument);
    assert_eq!(unsafe { llab_run(inst, ptr::null(), ptr::null(), &mut out) }, LlabStatus::NullArgument);

    let mut bad = ptr::null_mut();
    let json = c("{\"dimension\": 3}");
    assert_eq!(unsafe { llab_instance_from_json(json.as_ptr(), &mut bad) }, LlabStatus::InvalidInput);
    assert!(bad.is_null());
    let path = c("/nonexistent/instance.json");
    assert_eq!(unsafe { llab_instance_load(path.as_ptr(), &mut bad) }, LlabStatus::InvalidInput);
    assert_eq!(unsafe { llab_instance_load(path.as_ptr(), ptr::null_mut()) }, LlabStatus::NullArgument);
    unsafe {
        llab_instance_free(inst);
        llab_instance_free(ptr::null_mut());
        llab_string_free(ptr::null_mut());
    }
}

#[test]
fn out_of_scope_submanifold() {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(example()).unwrap()).unwrap();
    v["submanifold"][4] = serde_json::json!(["1", "0", "0", "0", "0", "0", "0"]);
    let json = c(&v.to_string());
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { llab_instance_from_json(json.as_ptr(), &mut inst) }, LlabStatus::Ok);
    let (st, doc) = run(inst, "frame", None);
    assert_eq!((st, doc), (LlabStatus::OutOfScope, None));
    assert!(last_error().contains("not half lightlike"));
    unsafe { llab_instance_free(inst) };
}

#[test]
fn canonical_round_trip() {
    let inst = load();
    let mut text: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { llab_instance_canonical(inst, &mut text) }, LlabStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { llab_instance_from_json(text, &mut again) }, LlabStatus::Ok);
    let mut text2: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { llab_instance_canonical(again, &mut text2) }, LlabStatus::Ok);
    unsafe {
        assert_eq!(CStr::from_ptr(text), CStr::from_ptr(text2));
        llab_string_free(text);
        llab_string_free(text2);
        llab_instance_free(inst);
        llab_instance_free(again);
    }
}

#[test]
fn version_is_the_package_version() {
    let v = unsafe { CStr::from_ptr(llab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_abi() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/llab.h")).unwrap();
    for name in [
        "llab_instance_from_json",
        "llab_instance_load",
        "llab_instance_free",
        "llab_instance_canonical",
        "llab_run",
        "llab_fuzz",
        "llab_string_free",
        "llab_last_error_message",
        "llab_version",
        "typedef struct LlabInstance LlabInstance",
        "LLAB_STATUS_CHECK_FAILED = 1",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn c_program_links_against_the_static_library() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    // The test binary lives in <target>/<profile>/deps.
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libllab_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .args(["-Wall", "-Wextra", "-Werror", "-std=c99", "-I"])
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).arg(example()).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("llab 0.1.0 ok"));
}
