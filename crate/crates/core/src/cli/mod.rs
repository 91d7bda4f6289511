//! Command-line front end: `llab <command> <instance.json> [options]`.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check
//! fails (or the input is mathematically out of scope), 2 for malformed
//! input or usage errors.

pub mod expr;
pub mod instance;
pub mod run;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

pub use instance::{parse_instance, parse_instance_str, parse_overrides, Instance, InstanceFile};
pub use run::{exit_code, human_summary, run_command, run_resolved, Command, Outcome, RunOptions};

#[derive(Debug, Parser)]
#[command(
    name = "llab",
    version,
    about = "Exact checks for half lightlike submanifolds of almost contact B-metric Lie groups"
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Instance file (JSON).
    pub instance: PathBuf,
    /// Seed for `fuzz`.
    #[arg(long, default_value_t = run::DEFAULT_SEED)]
    pub seed: u64,
    /// Number of draws for `fuzz`.
    #[arg(long, default_value_t = run::DEFAULT_COUNT)]
    pub count: usize,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Parameter overrides, e.g. `lambda1=1,mu=2/3`.
    #[arg(long)]
    pub params: Option<String>,
    /// Print the JSON report instead of the table summary.
    #[arg(long)]
    pub json: bool,
}

/// `LLAB_COLOR=1` turns on ANSI styling; anything else leaves it off.
pub fn color_from_env() -> bool {
    std::env::var("LLAB_COLOR").is_ok_and(|v| v == "1")
}

/// Full CLI behaviour with injectable streams; returns the exit code.
pub fn main_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let result = (|| {
        let file = parse_instance(&args.instance)?;
        let overrides = match &args.params {
            Some(p) => parse_overrides(p)?,
            None => BTreeMap::new(),
        };
        let opts = RunOptions { seed: args.seed, count: args.count, overrides };
        run_command(args.command, &file, &opts)
    })();
    let (code, doc) = match result {
        Ok(out) => (if out.passed { 0 } else { 1 }, out.document),
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(stderr, "error: {e}");
            (code, serde_json::json!({ "command": args.command.name(), "passed": false, "error": e.to_string() }))
        }
    };
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, &text) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if args.json {
        let _ = write!(stdout, "{text}");
    } else if doc.get("error").is_none() {
        let _ = write!(stdout, "{}", human_summary(&doc, color));
    }
    code
}
