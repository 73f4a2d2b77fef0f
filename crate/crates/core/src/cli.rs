//! Command implementations behind the `cdk` binary.
//!
//! Each command takes the source text and returns what to print together
//! with the exit status: 0 success, 1 type or shape error, 2 parse error,
//! 3 fuel exhausted.

use std::fmt::Write;

use serde::Serialize;

use crate::extract::{extract_with, ExtractError};
use crate::reduce::{normalize, RuleTag, DEFAULT_FUEL};
use crate::surface::{parse, Def, Directive, Expr, SourceFile};
use crate::syntax::{Formula, Proof};
use crate::translate::Translator;
use crate::typing::Mode;

/// Environment variable capping the fuel of every command.
pub const FUEL_ENV: &str = "CDK_FUEL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    TypeError = 1,
    ParseError = 2,
    FuelExhausted = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            stdout: String::new(),
            stderr: String::new(),
            status: Status::Ok,
        }
    }

    fn raise(&mut self, s: Status) {
        // a parse error dominates, then fuel exhaustion, then type errors
        self.status = self.status.max(s);
    }

    fn parse_error(name: &str, e: impl std::fmt::Display) -> Outcome {
        let mut out = Outcome::new();
        out.stderr = format!("{name}:{e}\n");
        out.status = Status::ParseError;
        out
    }
}

/// Requested fuel, lowered to the value of [`FUEL_ENV`] when that is set.
pub fn effective_fuel(requested: Option<usize>, env: Option<&str>) -> usize {
    let fuel = requested.unwrap_or(DEFAULT_FUEL);
    match env.and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(cap) => fuel.min(cap),
        None => fuel,
    }
}

/// Definitions that elaborate and check, in file order, paired with their
/// proofs; errors for the others unless a `#reject` expects them.
fn checked(file: &SourceFile, out: &mut Outcome, name: &str) -> Vec<(String, Formula, Proof)> {
    let mut ok = Vec::new();
    for c in file.check_all() {
        match (c.result, file.expected_rejection(&c.name)) {
            (Ok(p), None) => ok.push((c.name, c.formula, p)),
            (Err(e), Some(kind)) if e.kind == kind => {}
            (Err(e), _) => {
                let _ = writeln!(out.stderr, "{name}: {}: {e}", c.name);
                out.raise(Status::TypeError);
            }
            (Ok(_), Some(kind)) => {
                let _ = writeln!(out.stderr, "{name}: {}: expected {kind}, but it type-checks", c.name);
                out.raise(Status::TypeError);
            }
        }
    }
    ok
}

pub fn run_check(name: &str, source: &str) -> Outcome {
    let file = match parse(source) {
        Ok(f) => f,
        Err(e) => return Outcome::parse_error(name, e),
    };
    let mut out = Outcome::new();
    for c in file.check_all() {
        let expected = file.expected_rejection(&c.name);
        let line = match (&c.result, expected) {
            (Ok(_), None) => format!("{} : {}  ok", c.name, c.formula),
            (Err(e), Some(kind)) if e.kind == kind => format!("{}  rejected as expected: {e}", c.name),
            (Err(e), _) => {
                out.raise(Status::TypeError);
                format!("{}  error: {e}", c.name)
            }
            (Ok(_), Some(kind)) => {
                out.raise(Status::TypeError);
                format!("{}  error: expected {kind}, but it type-checks", c.name)
            }
        };
        let _ = writeln!(out.stdout, "{line}");
    }
    out
}

#[derive(Serialize)]
struct JsonStep {
    step: usize,
    rule: RuleTag,
    path: String,
    term: String,
}

#[derive(Serialize)]
struct JsonTrace {
    name: String,
    #[serde(rename = "type")]
    ty: String,
    initial: String,
    steps: Vec<JsonStep>,
    normal: bool,
    normal_form: String,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NormalizeOptions {
    pub fuel: usize,
    pub trace: bool,
    pub json: bool,
}

fn selected<'a>(
    file: &SourceFile,
    pool: &'a [(String, Formula, Proof)],
    pick: fn(&Directive) -> bool,
) -> Vec<&'a (String, Formula, Proof)> {
    let names = file.selected(pick);
    pool.iter().filter(|(n, ..)| names.contains(&n.as_str())).collect()
}

pub fn run_normalize(name: &str, source: &str, opts: NormalizeOptions) -> Outcome {
    let file = match parse(source) {
        Ok(f) => f,
        Err(e) => return Outcome::parse_error(name, e),
    };
    let mut out = Outcome::new();
    let pool = checked(&file, &mut out, name);
    let mut json = Vec::new();
    for (def, formula, proof) in selected(&file, &pool, |d| matches!(d, Directive::Normalize(_))) {
        let trace = normalize(proof, opts.fuel);
        if trace.fuel_exhausted {
            out.raise(Status::FuelExhausted);
            let _ = writeln!(out.stderr, "{name}: {def}: fuel exhausted after {} steps", opts.fuel);
        }
        if opts.json {
            json.push(JsonTrace {
                name: def.clone(),
                ty: formula.to_string(),
                initial: proof.to_string(),
                steps: trace
                    .steps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| JsonStep {
                        step: i + 1,
                        rule: s.rule,
                        path: s.path.to_string(),
                        term: s.after.to_string(),
                    })
                    .collect(),
                normal: trace.normal,
                normal_form: trace.last().to_string(),
            });
            continue;
        }
        let _ = writeln!(out.stdout, "{def} : {formula}");
        if opts.trace {
            for (i, s) in trace.steps.iter().enumerate() {
                let _ = writeln!(out.stdout, "  step {}: {} at {}", i + 1, s.rule, s.path);
                let _ = writeln!(out.stdout, "    {}", s.after);
            }
        }
        let verdict = if trace.normal { "normal form" } else { "stopped at" };
        let _ = writeln!(out.stdout, "  {} steps, {verdict}: {}", trace.steps.len(), trace.last());
    }
    if opts.json {
        out.stdout = serde_json::to_string_pretty(&json).expect("traces serialize") + "\n";
    }
    out
}

/// The file with every `D` replaced by its translation, as an `il-bot` file.
/// Definitions that do not type-check are dropped.
pub fn run_translate(name: &str, source: &str) -> Outcome {
    let file = match parse(source) {
        Ok(f) => f,
        Err(e) => return Outcome::parse_error(name, e),
    };
    let mut out = Outcome::new();
    let pool = checked(&file, &mut out, name);
    let mut tr = Translator::new();
    let mut target = SourceFile {
        mode: Mode::IlBot,
        signature: file.signature.clone(),
        hypotheses: file.hypotheses.clone(),
        defs: Vec::new(),
        directives: Vec::new(),
    };
    for (def, formula, proof) in &pool {
        match tr.translate(proof) {
            Ok(t) => target.defs.push(Def {
                name: def.clone(),
                formula: formula.clone(),
                body: Expr::from(&t),
            }),
            Err(e) => {
                out.raise(Status::TypeError);
                let _ = writeln!(out.stderr, "{name}: {def}: {e}");
            }
        }
    }
    let kept = |n: &str| target.defs.iter().any(|d| d.name == n);
    target.directives = file
        .directives
        .iter()
        .filter(|d| !matches!(d, Directive::Reject(..)) && kept(d.target()))
        .cloned()
        .collect();
    out.stdout = target.to_string();
    out
}

/// Normalizes and extracts. Without `#extract` directives only closed
/// definitions of ∃, ∨ or ∀ type are considered.
pub fn run_extract(name: &str, source: &str, fuel: usize) -> Outcome {
    let file = match parse(source) {
        Ok(f) => f,
        Err(e) => return Outcome::parse_error(name, e),
    };
    let mut out = Outcome::new();
    let pool = checked(&file, &mut out, name);
    let explicit = file.directives.iter().any(|d| matches!(d, Directive::Extract(_)));
    let checker = file.checker();
    for (def, formula, proof) in selected(&file, &pool, |d| matches!(d, Directive::Extract(_))) {
        let trace = normalize(proof, fuel);
        if trace.fuel_exhausted {
            out.raise(Status::FuelExhausted);
            let _ = writeln!(out.stderr, "{name}: {def}: fuel exhausted after {fuel} steps");
            continue;
        }
        match extract_with(&checker, trace.last()) {
            Ok(x) => {
                let _ = writeln!(out.stdout, "{def} : {formula}");
                for line in x.to_string().lines() {
                    let _ = writeln!(out.stdout, "  {line}");
                }
            }
            Err(ExtractError::NotClosed(_) | ExtractError::WrongType { .. }) if !explicit => {}
            Err(e) => {
                out.raise(Status::TypeError);
                let _ = writeln!(out.stderr, "{name}: {def}: {e}");
            }
        }
    }
    out
}
