//! Golden corpus. Each `NAME.ri` file carries `#! <command> [flags]` directive
//! lines; `NAME.expected.json` holds the directive reports, in order and
//! without `timing_ms`. Files are independent cases and run concurrently.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use rayon::prelude::*;
use serde_json::{json, Value};
use similar::TextDiff;

use crate::args::{Cli, Command, CorpusArgs};
use crate::commands::{run_text, CliError};
use crate::report::{self, strip_timing, Report};

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub name: String,
    pub directives: usize,
    pub passed: bool,
    /// Unified diff from the expected file to the actual output.
    pub diff: Option<String>,
}

/// `(line, words)` of every `#!` line.
pub fn directives(text: &str) -> Vec<(usize, Vec<String>)> {
    text.lines()
        .enumerate()
        .filter_map(|(k, l)| l.trim_start().strip_prefix("#!").map(|rest| (k + 1, rest.split_whitespace().map(String::from).collect())))
        .collect()
}

pub fn expected_path(case: &Path) -> PathBuf {
    case.with_extension("expected.json")
}

/// Runs every directive of a case file; errors become part of the output.
pub fn case_output(path: &Path) -> Result<String, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let dirs = directives(&text);
    if dirs.is_empty() {
        return Err(CliError::Input(format!("{}: no `#!` directives", path.display())));
    }
    let mut reports = Vec::with_capacity(dirs.len());
    for (line, words) in dirs {
        let mut argv = vec!["resint".to_string()];
        argv.extend(words);
        argv.push(path.display().to_string());
        let cli = Cli::try_parse_from(&argv)
            .map_err(|e| CliError::Input(format!("{}:{line}: bad directive: {}", path.display(), e.render().to_string().trim())))?;
        let Some(args) = cli.command.problem_args() else {
            return Err(CliError::Input(format!("{}:{line}: corpus directives cannot nest", path.display())));
        };
        let mut v = match run_text(&cli.command, args, &text) {
            Ok(r) => r.to_json(),
            Err(e) => json!({ "command": cli.command.name(), "error": { "kind": e.kind(), "message": e.to_string() } }),
        };
        strip_timing(&mut v);
        reports.push(v);
    }
    let mut out = serde_json::to_string_pretty(&Value::Array(reports)).expect("serializable");
    out.push('\n');
    Ok(out)
}

fn run_case(path: &Path, bless: bool) -> Result<CaseResult, CliError> {
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let actual = case_output(path)?;
    let directives = serde_json::from_str::<Value>(&actual).ok().and_then(|v| v.as_array().map(Vec::len)).unwrap_or(0);
    let exp_path = expected_path(path);
    if bless {
        fs::write(&exp_path, &actual).map_err(|e| CliError::Input(format!("cannot write {}: {e}", exp_path.display())))?;
        return Ok(CaseResult { name, directives, passed: true, diff: None });
    }
    let expected = match fs::read_to_string(&exp_path) {
        Ok(s) => s,
        Err(_) => {
            let diff = format!("missing {}; run `resint corpus --bless` to create it\n", exp_path.display());
            return Ok(CaseResult { name, directives, passed: false, diff: Some(diff) });
        }
    };
    if expected == actual {
        return Ok(CaseResult { name, directives, passed: true, diff: None });
    }
    let diff = TextDiff::from_lines(&expected, &actual)
        .unified_diff()
        .header(&exp_path.display().to_string(), "actual")
        .to_string();
    Ok(CaseResult { name, directives, passed: false, diff: Some(diff) })
}

/// Runs (or blesses) every case in `dir`, sorted by name.
pub fn run_corpus(dir: &Path, bless: bool) -> Result<Vec<CaseResult>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Input(format!("cannot read corpus {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ri"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Input(format!("no .ri cases in {}", dir.display())));
    }
    let mut results = files.par_iter().map(|f| run_case(f, bless)).collect::<Result<Vec<_>, _>>()?;
    results.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(results)
}

/// Summary report and the error to exit with, if any.
pub fn corpus_report(args: &CorpusArgs) -> Result<(Report, Vec<CaseResult>), CliError> {
    let start = Instant::now();
    let dir = args.dir.clone().unwrap_or_else(default_dir);
    let results = run_corpus(&dir, args.bless)?;
    let passed = results.iter().filter(|r| r.passed).count();
    let names: Vec<&str> = results.iter().map(|r| r.name.as_str()).collect();
    let cases: Vec<Value> = results
        .iter()
        .map(|r| json!({ "name": r.name, "directives": r.directives, "status": if r.passed { "pass" } else { "fail" } }))
        .collect();
    let report = Report {
        command: Command::Corpus(args.clone()).name().to_string(),
        inputs_digest: report::digest(&names.join("\n"), "corpus", if args.bless { "--bless" } else { "" }),
        seed: None,
        outputs: json!({
            "passed": passed,
            "failed": results.len() - passed,
            "blessed": args.bless,
            "cases": cases,
        }),
        timing_ms: start.elapsed().as_millis(),
    };
    Ok((report, results))
}
