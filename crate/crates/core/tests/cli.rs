//! Command-line behaviour: exit codes, JSON determinism, instance files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command as Proc;

use llab::cli::{main_with, parse_instance, parse_instance_str, parse_overrides, run_command, Command, RunOptions};
use llab::exactmath::int;
use llab::instances::six_parameter;
use serde_json::Value;

fn golden_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/f0_7dim.json")
}

fn golden_text() -> String {
    std::fs::read_to_string(golden_path()).unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("llab").chain(args.iter().copied());
    let code = main_with(argv, &mut out, &mut err, false);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, _) = run(&full);
    (code, serde_json::from_str(&out).unwrap())
}

/// Writes `golden` with `edit` applied to a temp file.
fn edited(dir: &tempfile::TempDir, name: &str, edit: impl FnOnce(&mut Value)) -> PathBuf {
    let mut v: Value = serde_json::from_str(&golden_text()).unwrap();
    edit(&mut v);
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    p
}

#[test]
fn check_on_golden_instance() {
    let p = golden_path();
    let (code, doc) = json_of(&["check", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["data"]["f0"]["f0"], true);
    assert_eq!(doc["data"]["f0"]["criteria_agree"], true);
    assert_eq!(doc["data"]["signature_g"], "(4,3,0)");
    assert_eq!(doc["data"]["signature_g_tilde"], "(4,3,0)");
}

#[test]
fn minimal_reports_zero_traces() {
    let p = golden_path();
    let (code, doc) = json_of(&["minimal", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let m = &doc["data"]["minimality"];
    assert_eq!(m["lightlike_minimal"], true);
    assert_eq!(m["assoc_minimal"], true);
    assert_eq!(m["lightlike_trace"]["expr"], "0");
    assert_eq!(m["assoc_trace"]["expr"], "0");
    assert_eq!(m["verdicts_agree"], true);
}

#[test]
fn report_passes_every_section() {
    let p = golden_path();
    let (code, doc) = json_of(&["report", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(doc["skipped"].as_array().unwrap().is_empty());
    assert_eq!(doc["data"]["frame"]["xi"]["expr"], "−phi_e1 + xi_bar");
    assert_eq!(doc["data"]["assoc_summary"]["n1"]["expr"], "−e1 + xi_bar");
}

#[test]
fn non_lightlike_tangent_space_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = edited(&dir, "nondeg.json", |v| {
        // {e2, e3, φe2, φe3, e1}: the induced metric is non-degenerate.
        let mut e1 = vec!["0"; 7];
        e1[0] = "1";
        v["submanifold"][4] = serde_json::json!(e1);
    });
    let (code, _, err) = run(&["frame", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("not half lightlike"), "{err}");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let div = edited(&dir, "div.json", |v| v["parameters"]["lambda1"] = "1/0".into());
    let (code, _, err) = run(&["check", div.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("parameters.lambda1"), "{err}");

    let unknown = edited(&dir, "unknown.json", |v| v["xi"][6] = "nu".into());
    let (code, _, err) = run(&["check", unknown.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown parameter `nu`"), "{err}");

    let extra = edited(&dir, "extra.json", |v| v["colour"] = "blue".into());
    assert_eq!(run(&["check", extra.to_str().unwrap()]).0, 2);

    let short = edited(&dir, "short.json", |v| {
        v["g"][2].as_array_mut().unwrap().pop();
    });
    let (code, _, err) = run(&["check", short.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("g[2]"), "{err}");

    let asym = edited(&dir, "asym.json", |v| v["g"][0][1] = "1".into());
    assert_eq!(run(&["check", asym.to_str().unwrap()]).0, 2);

    let p = golden_path();
    assert_eq!(run(&["check", p.to_str().unwrap(), "--params", "nu=1"]).0, 2);
    assert_eq!(run(&["check", p.to_str().unwrap(), "--params", "mu"]).0, 2);
    assert_eq!(run(&["explode", p.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["check", "/nonexistent/instance.json"]).0, 2);
    assert_eq!(run(&["check"]).0, 2);
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("fuzz"));
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn abelian_instance_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let p = edited(&dir, "abelian.json", |v| v["structure_constants"] = serde_json::json!([]));
    let (code, doc) = json_of(&["check", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["data"]["f0"]["f0"], true);
    assert_eq!(doc["data"]["f0"]["bracket_criterion"]["status"], "not_applicable");
}

#[test]
fn parameter_override_changes_the_instance() {
    let p = golden_path();
    let (code, doc) = json_of(&["minimal", p.to_str().unwrap(), "--params", "lambda1=2,lambda4=-3/2,mu=-2/3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["parameters"]["lambda1"], "2");
    assert_eq!(doc["parameters"]["mu"], "-2/3");
    assert_eq!(doc["data"]["minimality"]["lightlike_minimal"], true);
}

#[test]
fn resolved_golden_file_equals_built_in_family() {
    let file = parse_instance(&golden_path()).unwrap();
    let inst = file.resolve(&BTreeMap::new()).unwrap();
    let ex = six_parameter(&[1, 0, 1, 0, 0, 0].map(int), &int(1)).unwrap();
    assert_eq!(inst.structure, ex.structure);
    assert_eq!(inst.tangent, ex.tangent);

    let over = parse_overrides("lambda2=3/5,lambda6=-2,mu=7/3").unwrap();
    let inst = file.resolve(&over).unwrap();
    let lambda = [int(1), llab::exactmath::q(3, 5), int(1), int(0), int(0), int(-2)];
    let ex = six_parameter(&lambda, &llab::exactmath::q(7, 3)).unwrap();
    assert_eq!(inst.structure, ex.structure);
    assert_eq!(inst.tangent, ex.tangent);
}

#[test]
fn canonical_form_round_trips() {
    let file = parse_instance(&golden_path()).unwrap();
    let c = file.canonical();
    let again = parse_instance_str(&c).unwrap();
    assert_eq!(again.canonical(), c);
    let mut sorted = file.clone();
    sorted.structure_constants.sort();
    sorted.structure_constants.dedup();
    assert_eq!(again, sorted);
}

#[test]
fn json_output_is_byte_identical_and_out_matches() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let p = golden_path();
    let (c1, a, _) = run(&["report", p.to_str().unwrap(), "--json"]);
    let (c2, b, _) = run(&["report", p.to_str().unwrap(), "--json", "--out", out.to_str().unwrap()]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), a);
}

#[test]
fn fuzz_is_seeded_and_deterministic() {
    let file = parse_instance(&golden_path()).unwrap();
    let opts = RunOptions { seed: 7, count: 6, overrides: BTreeMap::new() };
    let a = run_command(Command::Fuzz, &file, &opts).unwrap();
    let b = run_command(Command::Fuzz, &file, &opts).unwrap();
    assert!(a.passed);
    assert_eq!(a.document, b.document);
    assert_eq!(a.document["summary"]["passed"], 6);
    let other = RunOptions { seed: 8, ..opts };
    let c = run_command(Command::Fuzz, &file, &other).unwrap();
    assert_ne!(a.document["draws"], c.document["draws"]);
    for d in a.document["draws"].as_array().unwrap() {
        assert_ne!(d["parameters"]["mu"], "0");
    }
}

#[test]
fn color_only_when_requested() {
    let p = golden_path();
    let argv = ["llab", "check", p.to_str().unwrap()];
    let (mut plain, mut colored, mut err) = (Vec::new(), Vec::new(), Vec::new());
    assert_eq!(main_with(argv, &mut plain, &mut err, false), 0);
    assert_eq!(main_with(argv, &mut colored, &mut err, true), 0);
    let plain = String::from_utf8(plain).unwrap();
    let colored = String::from_utf8(colored).unwrap();
    assert!(!plain.contains('\x1b'));
    assert!(colored.contains("\x1b[32mPASS\x1b[0m"));
    assert!(plain.contains("PASS"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_llab");
    let p = golden_path();
    let ok = Proc::new(bin).args(["check", p.to_str().unwrap()]).env_remove("LLAB_COLOR").output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("llab check: PASS"));
    let bad = Proc::new(bin).args(["check", "/nonexistent.json"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
    let colored = Proc::new(bin).args(["check", p.to_str().unwrap()]).env("LLAB_COLOR", "1").output().unwrap();
    assert!(String::from_utf8_lossy(&colored.stdout).contains('\x1b'));
}
