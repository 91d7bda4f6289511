//! Command pipelines. Each produces a single JSON document; failures of
//! mathematical checks are data, structural impossibilities are errors.

use std::collections::BTreeMap;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::instance::{Instance, InstanceFile};
use crate::assoc::{assoc_gauss_weingarten, minimality_equivalence, verify_cross_relations};
use crate::bstructure::{
    associated_metric, check_structure, f0_with, levi_civita, parallel_tensors_report, Connection,
};
use crate::error::{Error, Result};
use crate::exactmath::{fmt_scalar, signature, Scalar, Vector};
use crate::forms::{gauss_weingarten, lightlike_minimal, verify_f0_relations, verify_gauss_weingarten_relations};
use crate::instances::{random_nonzero_rational, random_rational};
use crate::report::Report;
use crate::submanifold::{
    audit_frame, build_frame, classify, verify_ascreen_relations, verify_normal_frame, SubmanifoldFrame,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Structure axioms, Lie algebra, Levi-Civita connection and F₀ test.
    Check,
    /// Half lightlike frame, classification and normal frame of (M, g̃).
    Frame,
    /// Gauss–Weingarten data of (M, g) and its relations.
    Forms,
    /// Gauss–Weingarten data of (M, g̃) and its relations to (M, g).
    Assoc,
    /// Both minimality verdicts and the scalar conditions.
    Minimal,
    /// Randomised parameter campaign over the instance's parameters.
    Fuzz,
    /// Everything.
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Frame => "frame",
            Command::Forms => "forms",
            Command::Assoc => "assoc",
            Command::Minimal => "minimal",
            Command::Fuzz => "fuzz",
            Command::Report => "report",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::value_variants().iter().copied().find(|c| c.name() == name)
    }
}

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_COUNT: usize = 200;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub count: usize,
    pub overrides: BTreeMap<String, Scalar>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: DEFAULT_SEED, count: DEFAULT_COUNT, overrides: BTreeMap::new() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub document: Value,
}

/// Exit status for an error: 1 when the mathematics rules the input out,
/// 2 when the input itself is malformed.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Instance(_)
        | Error::DimensionMismatch(_)
        | Error::NotSymmetric
        | Error::InvalidScreen(_) => 2,
        _ => 1,
    }
}

/// `2·e1 − 1/2·xi_bar` style rendering.
pub fn fmt_named(v: &Vector, names: &[String]) -> String {
    let mut out = String::new();
    for (x, name) in v.iter().zip(names) {
        if num_traits::Zero::is_zero(x) {
            continue;
        }
        let neg = num_traits::Signed::is_negative(x);
        let mag = fmt_scalar(&num_traits::Signed::abs(x));
        let term = if mag == "1" { name.clone() } else { format!("{mag}·{name}") };
        if out.is_empty() {
            out = if neg { format!("−{term}") } else { term };
        } else {
            out.push_str(if neg { " − " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

struct Ctx<'a> {
    inst: &'a Instance,
    sections: Vec<Report>,
    skipped: Vec<Value>,
    data: serde_json::Map<String, Value>,
    extra_ok: bool,
}

impl<'a> Ctx<'a> {
    fn new(inst: &'a Instance) -> Self {
        Ctx { inst, sections: Vec::new(), skipped: Vec::new(), data: serde_json::Map::new(), extra_ok: true }
    }

    fn named(&self, v: &Vector) -> Value {
        json!({ "coords": v, "expr": fmt_named(v, &self.inst.basis_names) })
    }

    /// Records an out-of-scope section instead of failing the run.
    fn skip(&mut self, section: &str, e: &Error) {
        self.skipped.push(json!({ "section": section, "reason": e.to_string() }));
    }

    fn finish(self, command: Command) -> Outcome {
        let passed = self.extra_ok && self.sections.iter().all(Report::all_passed);
        let params: BTreeMap<&String, String> = self.inst.parameters.iter().map(|(k, v)| (k, fmt_scalar(v))).collect();
        let document = json!({
            "command": command.name(),
            "parameters": params,
            "passed": passed,
            "sections": self.sections,
            "skipped": self.skipped,
            "data": Value::Object(self.data),
        });
        Outcome { passed, document }
    }
}

fn scope_error(e: &Error) -> bool {
    matches!(e, Error::RequiresF0 | Error::AssociatedConnectionDiffers | Error::NotAscreenRsthl(_))
}

fn do_check(cx: &mut Ctx) -> Result<Connection> {
    let s = &cx.inst.structure;
    cx.sections.push(s.alg.validate());
    cx.sections.push(check_structure(s));
    let conn = levi_civita(s)?;
    let mut koszul = conn.torsion_report(&s.alg);
    koszul.title = "Levi-Civita connection of ḡ".into();
    koszul.extend(conn.metric_report(&s.g, "ḡ"));
    cx.sections.push(koszul);
    let verdict = f0_with(s, &conn);
    if verdict.f0 {
        cx.sections.push(parallel_tensors_report(s, &conn)?);
    }
    if verdict.criteria_agree == Some(false) {
        cx.extra_ok = false;
    }
    cx.data.insert("dimension".into(), json!(s.dim()));
    cx.data.insert("signature_g".into(), json!(signature(&s.g).to_string()));
    cx.data.insert("signature_g_tilde".into(), json!(signature(&associated_metric(s)?).to_string()));
    cx.data.insert("f0".into(), serde_json::to_value(&verdict).expect("serializable"));
    Ok(conn)
}

fn do_frame(cx: &mut Ctx) -> Result<SubmanifoldFrame> {
    let s = &cx.inst.structure;
    let f = build_frame(s, &cx.inst.tangent, cx.inst.screen_hint.as_deref())?;
    cx.sections.push(audit_frame(s, &f));
    cx.data.insert("classification".into(), serde_json::to_value(classify(s, &f)).expect("serializable"));
    let frame = json!({
        "xi": cx.named(&f.rad),
        "screen": f.screen.iter().map(|v| cx.named(v)).collect::<Vec<_>>(),
        "n": cx.named(&f.n_vec),
        "l": cx.named(&f.l_vec),
        "epsilon": fmt_scalar(&f.epsilon),
        "mu": f.mu.as_ref().map(fmt_scalar),
        "xi_flipped": f.xi_flipped,
    });
    cx.data.insert("frame".into(), frame);
    match verify_ascreen_relations(s, &f) {
        Ok(r) => cx.sections.push(r),
        Err(e) if scope_error(&e) => cx.skip("ascreen relations", &e),
        Err(e) => return Err(e),
    }
    match verify_normal_frame(s, &f) {
        Ok(nf) => {
            let v = json!({ "n1": cx.named(&nf.n1), "n2": cx.named(&nf.n2) });
            cx.data.insert("normal_frame".into(), v);
            cx.sections.push(nf.report);
        }
        Err(e) if scope_error(&e) => cx.skip("normal frame of (M, g̃)", &e),
        Err(e) => return Err(e),
    }
    Ok(f)
}

fn do_forms(cx: &mut Ctx, conn: &Connection, f: &SubmanifoldFrame) -> Result<crate::forms::FormsReport> {
    let s = &cx.inst.structure;
    let rep = gauss_weingarten(s, conn, f)?;
    cx.sections.push(verify_gauss_weingarten_relations(&rep, f, s)?);
    match verify_f0_relations(&rep, f, s) {
        Ok(r) => cx.sections.push(r),
        Err(e) if scope_error(&e) => cx.skip("F₀ relations", &e),
        Err(e) => return Err(e),
    }
    let lm = lightlike_minimal(&rep, f, s)?;
    if lm.agrees == Some(false) {
        cx.extra_ok = false;
    }
    let tangent_names: Vec<Value> = f.adapted_tangent().iter().map(|v| cx.named(v)).collect();
    cx.data.insert("tangent_basis".into(), json!(tangent_names));
    cx.data.insert("forms".into(), serde_json::to_value(&rep).expect("serializable"));
    let mut lm_doc = serde_json::to_value(&lm).expect("serializable");
    lm_doc["trace"] = cx.named(&lm.trace);
    cx.data.insert("lightlike_minimality".into(), lm_doc);
    Ok(rep)
}

fn do_assoc(
    cx: &mut Ctx,
    conn: &Connection,
    f: &SubmanifoldFrame,
    forms: &crate::forms::FormsReport,
) -> Result<crate::assoc::AssocReport> {
    let s = &cx.inst.structure;
    let a = assoc_gauss_weingarten(s, conn, f)?;
    cx.sections.push(verify_cross_relations(&a, forms, f, s)?);
    let summary = json!({
        "n1": cx.named(&a.n1),
        "n2": cx.named(&a.n2),
        "trace": cx.named(&a.trace),
        "minimal": a.minimal,
    });
    cx.data.insert("assoc_summary".into(), summary);
    cx.data.insert("assoc".into(), serde_json::to_value(&a).expect("serializable"));
    Ok(a)
}

fn do_minimal(
    cx: &mut Ctx,
    f: &SubmanifoldFrame,
    pre: Option<(&crate::forms::FormsReport, &crate::assoc::AssocReport)>,
) -> Result<()> {
    let eq = match pre {
        Some((forms, a)) => crate::assoc::equivalence_from(&cx.inst.structure, f, forms, a)?,
        None => minimality_equivalence(&cx.inst.structure, f)?,
    };
    let v = json!({
        "lightlike_minimal": eq.lightlike.minimal,
        "assoc_minimal": eq.assoc_minimal,
        "lightlike_trace": cx.named(&eq.lightlike.trace),
        "assoc_trace": cx.named(&eq.assoc_trace),
        "d_xi_xi": fmt_scalar(&eq.lightlike.d_xi_xi),
        "s1": eq.lightlike.s1.as_ref().map(fmt_scalar),
        "s2": eq.lightlike.s2.as_ref().map(fmt_scalar),
        "scalar_conditions": eq.scalar_conditions,
        "verdicts_agree": true,
    });
    cx.data.insert("minimality".into(), v);
    Ok(())
}

/// Runs `command` on an already resolved instance.
pub fn run_resolved(command: Command, inst: &Instance) -> Result<Outcome> {
    let mut cx = Ctx::new(inst);
    match command {
        Command::Check => {
            do_check(&mut cx)?;
        }
        Command::Frame => {
            do_frame(&mut cx)?;
        }
        Command::Forms => {
            let conn = levi_civita(&inst.structure)?;
            let f = build_frame(&inst.structure, &inst.tangent, inst.screen_hint.as_deref())?;
            do_forms(&mut cx, &conn, &f)?;
        }
        Command::Assoc => {
            let conn = levi_civita(&inst.structure)?;
            let f = build_frame(&inst.structure, &inst.tangent, inst.screen_hint.as_deref())?;
            let forms = gauss_weingarten(&inst.structure, &conn, &f)?;
            do_assoc(&mut cx, &conn, &f, &forms)?;
        }
        Command::Minimal => {
            let f = build_frame(&inst.structure, &inst.tangent, inst.screen_hint.as_deref())?;
            do_minimal(&mut cx, &f, None)?;
        }
        Command::Report => {
            let conn = do_check(&mut cx)?;
            let f = do_frame(&mut cx)?;
            let forms = do_forms(&mut cx, &conn, &f)?;
            let assoc = match do_assoc(&mut cx, &conn, &f, &forms) {
                Err(e) if scope_error(&e) => {
                    cx.skip("associated metric", &e);
                    None
                }
                other => Some(other?),
            };
            match do_minimal(&mut cx, &f, assoc.as_ref().map(|a| (&forms, a))) {
                Err(e) if scope_error(&e) => cx.skip("minimality equivalence", &e),
                other => other?,
            }
        }
        Command::Fuzz => return Err(Error::Parse("fuzz needs the instance file, not a resolved instance".into())),
    }
    Ok(cx.finish(command))
}

pub fn run_command(command: Command, file: &InstanceFile, opts: &RunOptions) -> Result<Outcome> {
    if command == Command::Fuzz {
        return fuzz(file, opts);
    }
    let inst = file.resolve(&opts.overrides)?;
    run_resolved(command, &inst)
}

#[derive(Debug)]
struct Draw {
    index: usize,
    params: BTreeMap<String, Scalar>,
}

fn draw_params(file: &InstanceFile, opts: &RunOptions) -> Vec<Draw> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    (0..opts.count)
        .map(|index| {
            let params = file
                .parameters
                .keys()
                .map(|name| {
                    let v = if let Some(v) = opts.overrides.get(name) {
                        v.clone()
                    } else if file.nonzero_parameters.contains(name) {
                        random_nonzero_rational(&mut rng, 9, 5)
                    } else {
                        random_rational(&mut rng, 9, 5)
                    };
                    (name.clone(), v)
                })
                .collect();
            Draw { index, params }
        })
        .collect()
}

fn fuzz_one(file: &InstanceFile, draw: &Draw) -> Value {
    let params: BTreeMap<&String, String> = draw.params.iter().map(|(k, v)| (k, fmt_scalar(v))).collect();
    let run = || -> Result<Value> {
        let inst = file.resolve(&draw.params)?;
        let out = run_resolved(Command::Report, &inst)?;
        let data = &out.document["data"];
        let failed: Vec<Value> = out.document["sections"]
            .as_array()
            .into_iter()
            .flatten()
            .flat_map(|s| s["checks"].as_array().cloned().unwrap_or_default())
            .filter(|c| c["passed"] == json!(false))
            .map(|c| c["name"].clone())
            .collect();
        Ok(json!({
            "passed": out.passed,
            "f0": data["f0"]["f0"],
            "criteria_agree": data["f0"]["criteria_agree"],
            "lightlike_minimal": data["minimality"]["lightlike_minimal"],
            "assoc_minimal": data["minimality"]["assoc_minimal"],
            "scalar_conditions": data["minimality"]["scalar_conditions"],
            "failed_checks": failed,
            "skipped": out.document["skipped"],
        }))
    };
    let mut v = run().unwrap_or_else(|e| json!({ "passed": false, "error": e.to_string() }));
    v["index"] = json!(draw.index);
    v["parameters"] = json!(params);
    v
}

fn fuzz(file: &InstanceFile, opts: &RunOptions) -> Result<Outcome> {
    file.parameter_values(&opts.overrides)?;
    let draws = draw_params(file, opts);
    let results: Vec<Value> = draws.par_iter().map(|d| fuzz_one(file, d)).collect();
    let passed = results.iter().all(|r| r["passed"] == json!(true));
    let count = |key: &str| results.iter().filter(|r| r[key] == json!(true)).count();
    let document = json!({
        "command": "fuzz",
        "seed": opts.seed,
        "count": opts.count,
        "passed": passed,
        "summary": {
            "passed": count("passed"),
            "f0": count("f0"),
            "lightlike_minimal": count("lightlike_minimal"),
            "assoc_minimal": count("assoc_minimal"),
        },
        "draws": results,
    });
    Ok(Outcome { passed, document })
}

/// Table-style text for terminals.
pub fn human_summary(doc: &Value, color: bool) -> String {
    let paint = |ok: bool| {
        let (word, code) = if ok { ("PASS", "32") } else { ("FAIL", "31") };
        if color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    };
    let mut out = String::new();
    let cmd = doc["command"].as_str().unwrap_or("?");
    out.push_str(&format!("llab {cmd}: {}\n", paint(doc["passed"] == json!(true))));
    if let Some(params) = doc["parameters"].as_object().filter(|p| !p.is_empty()) {
        let list: Vec<String> = params.iter().map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or(""))).collect();
        out.push_str(&format!("parameters: {}\n", list.join(", ")));
    }
    for sec in doc["sections"].as_array().into_iter().flatten() {
        out.push_str(&format!("\n[{}]\n", sec["title"].as_str().unwrap_or("")));
        for c in sec["checks"].as_array().into_iter().flatten() {
            let ok = c["passed"] == json!(true);
            out.push_str(&format!("  {}  {}", paint(ok), c["name"].as_str().unwrap_or("")));
            if let (false, Some(d)) = (ok, c["detail"].as_str()) {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
    }
    for s in doc["skipped"].as_array().into_iter().flatten() {
        out.push_str(&format!(
            "\n[{}] skipped: {}\n",
            s["section"].as_str().unwrap_or(""),
            s["reason"].as_str().unwrap_or("")
        ));
    }
    let data = &doc["data"];
    let mut kv: Vec<(String, String)> = Vec::new();
    let mut add = |k: &str, v: &Value| {
        if !v.is_null() && !kv.iter().any(|(key, _)| key == k) {
            let text = v.get("expr").and_then(Value::as_str).map(str::to_string).unwrap_or_else(|| match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            });
            kv.push((k.to_string(), text));
        }
    };
    add("signature ḡ", &data["signature_g"]);
    add("signature g̃", &data["signature_g_tilde"]);
    add("F₀", &data["f0"]["f0"]);
    add("F₀ criteria agree", &data["f0"]["criteria_agree"]);
    add("ξ", &data["frame"]["xi"]);
    add("N", &data["frame"]["n"]);
    add("L", &data["frame"]["l"]);
    add("μ", &data["frame"]["mu"]);
    add("N₁", &data["normal_frame"]["n1"]);
    add("N₂", &data["normal_frame"]["n2"]);
    add("lightlike minimal", &data["lightlike_minimality"]["minimal"]);
    add("trace_{g|S} h", &data["lightlike_minimality"]["trace"]);
    add("g̃ minimal", &data["assoc_summary"]["minimal"]);
    add("trace_{g̃} h̃", &data["assoc_summary"]["trace"]);
    let m = &data["minimality"];
    add("(M, g) minimal", &m["lightlike_minimal"]);
    add("(M, g̃) minimal", &m["assoc_minimal"]);
    add("trace_{g|S} h", &m["lightlike_trace"]);
    add("trace_{g̃} h̃", &m["assoc_trace"]);
    add("s1", &m["s1"]);
    add("s2", &m["s2"]);
    if cmd == "fuzz" {
        add("seed", &doc["seed"]);
        add("draws", &doc["count"]);
        for key in ["passed", "f0", "lightlike_minimal", "assoc_minimal"] {
            add(&format!("{key} (count)"), &doc["summary"][key]);
        }
        for d in doc["draws"].as_array().into_iter().flatten().filter(|d| d["passed"] != json!(true)) {
            let why = d["error"].as_str().map(str::to_string).unwrap_or_else(|| d["failed_checks"].to_string());
            kv.push((format!("draw {}", d["index"]), format!("FAIL {why}")));
        }
    }
    if !kv.is_empty() {
        // Combining marks (the tilde in g̃, the bar in ḡ) take no column.
        let width = |k: &str| k.chars().filter(|c| !('\u{300}'..='\u{36f}').contains(c)).count();
        let w = kv.iter().map(|(k, _)| width(k)).max().unwrap_or(0);
        out.push('\n');
        for (k, v) in kv {
            let pad = w - width(&k);
            out.push_str(&format!("  {k}{}  {v}\n", " ".repeat(pad)));
        }
    }
    out
}
