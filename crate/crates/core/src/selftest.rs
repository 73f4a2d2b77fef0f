//! Invariant suite over `.cd` corpora and randomly generated terms.
//!
//! Every definition goes through typing, a subject-reduction replay of its
//! leftmost-outermost normalization, the shape and extraction check, the
//! translation and dummy-term checks, and a simulation check of each step.
//! Files are additionally printed and re-parsed.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::batch;
use crate::extract::{extract_with, ExtractError};
use crate::generate::{generate, GenConfig, Generated};
use crate::reduce::{find_redexes, replay_subject_reduction, step_at, ReplayError, RuleTag, Trace};
use crate::surface::{parse, SourceFile};
use crate::syntax::{alpha_equal, alpha_equal_proofs, Context, Formula, Proof};
use crate::translate::{check_simulation, Translator};
use crate::typing::{Checker, Mode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Check {
    Parse,
    Typing,
    SubjectReduction,
    Normalization,
    Shape,
    Translation,
    DummyTerm,
    Simulation,
    RoundTrip,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Parse => "parse",
            Check::Typing => "typing",
            Check::SubjectReduction => "subject-reduction",
            Check::Normalization => "normalization",
            Check::Shape => "shape",
            Check::Translation => "translation",
            Check::DummyTerm => "dummy-term",
            Check::Simulation => "simulation",
            Check::RoundTrip => "round-trip",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// `file` or `file:def`, or `random#i` for generated terms.
    pub subject: String,
    pub check: Check,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.subject, self.check, self.message)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    /// Number of successful checks of each kind.
    pub passed: BTreeMap<Check, usize>,
    pub failures: Vec<Failure>,
    /// Terms that went through the reduction checks.
    pub terms: usize,
    /// Reduction steps replayed.
    pub steps: usize,
    /// Steps per rule, in [`RuleTag::ALL`] order.
    pub rules: [usize; 7],
    /// Lengths of the simulating IL⊥ sequences that were found.
    pub simulation_lengths: Vec<usize>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn passed(&self, check: Check) -> usize {
        self.passed.get(&check).copied().unwrap_or(0)
    }

    pub fn failed(&self, check: Check) -> usize {
        self.failures.iter().filter(|f| f.check == check).count()
    }

    fn pass(&mut self, check: Check) {
        *self.passed.entry(check).or_default() += 1;
    }

    fn fail(&mut self, subject: &str, check: Check, message: impl Into<String>) {
        self.failures.push(Failure {
            subject: subject.to_string(),
            check,
            message: message.into(),
        });
    }

    fn record(&mut self, subject: &str, check: Check, result: Result<(), String>) {
        match result {
            Ok(()) => self.pass(check),
            Err(m) => self.fail(subject, check, m),
        }
    }

    pub fn merge(&mut self, other: Report) {
        for (k, v) in other.passed {
            *self.passed.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
        self.terms += other.terms;
        self.steps += other.steps;
        for (a, b) in self.rules.iter_mut().zip(other.rules) {
            *a += b;
        }
        self.simulation_lengths.extend(other.simulation_lengths);
    }

    fn add_trace(&mut self, trace: &Trace) {
        self.terms += 1;
        self.steps += trace.steps.len();
        for (a, b) in self.rules.iter_mut().zip(trace.rule_counts()) {
            *a += b;
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let checks: std::collections::BTreeSet<Check> = self
            .passed
            .keys()
            .copied()
            .chain(self.failures.iter().map(|x| x.check))
            .collect();
        for c in checks {
            writeln!(
                f,
                "{:<18} {:>6} passed {:>4} failed",
                c.name(),
                self.passed(c),
                self.failed(c)
            )?;
        }
        let rules: Vec<String> = RuleTag::ALL
            .iter()
            .zip(self.rules)
            .map(|(r, n)| format!("{r}={n}"))
            .collect();
        writeln!(f, "terms {} steps {} ({})", self.terms, self.steps, rules.join(" "))?;
        for failure in &self.failures {
            writeln!(f, "FAIL {failure}")?;
        }
        Ok(())
    }
}

/// Which per-term checks to run.
#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub fuel: usize,
    /// Also contract every redex of the initial term, not only the
    /// leftmost-outermost one, and re-check the type.
    pub all_redexes: bool,
    pub simulation: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            fuel: crate::reduce::DEFAULT_FUEL,
            all_redexes: true,
            simulation: true,
        }
    }
}

/// Reduction, translation and simulation checks for one well-typed term.
fn check_term(
    report: &mut Report,
    subject: &str,
    ctx: &Context,
    t: &Proof,
    ty: &Formula,
    mode: Mode,
    opts: &Options,
) -> Option<Trace> {
    let trace = match replay_subject_reduction(ctx, t, mode, opts.fuel) {
        Ok(r) => {
            report.pass(Check::SubjectReduction);
            r.trace
        }
        Err(ReplayError::Untyped(e)) => {
            report.fail(subject, Check::SubjectReduction, format!("not typable: {e}"));
            return None;
        }
        Err(ReplayError::Violation(v)) => {
            report.fail(subject, Check::SubjectReduction, v.to_string());
            return None;
        }
    };
    report.add_trace(&trace);

    if opts.all_redexes {
        report.record(
            subject,
            Check::SubjectReduction,
            every_redex_preserves(ctx, &trace.initial, ty, mode),
        );
    }

    if trace.fuel_exhausted {
        report.fail(
            subject,
            Check::Normalization,
            format!("no normal form within {} steps", opts.fuel),
        );
    } else {
        report.pass(Check::Normalization);
    }

    let mut tr = Translator::new();
    let translated = tr.translate(t).map_err(|e| e.to_string()).and_then(|u| {
        if u.contains_axiom() {
            return Err("translation still contains D".to_string());
        }
        Checker::new(Mode::IlBot).check(ctx, &u, ty).map_err(|e| e.to_string())
    });
    report.record(subject, Check::Translation, translated);

    if opts.simulation {
        for (i, step) in trace.steps.iter().enumerate() {
            match check_simulation(step, opts.fuel) {
                Ok(sim) if sim.length >= 1 => {
                    report.pass(Check::Simulation);
                    report.simulation_lengths.push(sim.length);
                }
                Ok(_) => report.fail(subject, Check::Simulation, format!("step {}: empty simulation", i + 1)),
                Err(e) => report.fail(subject, Check::Simulation, format!("step {}: {e}", i + 1)),
            }
        }
    }
    Some(trace)
}

fn every_redex_preserves(ctx: &Context, t: &Proof, ty: &Formula, mode: Mode) -> Result<(), String> {
    let checker = Checker::new(mode);
    let before = t.free_proof_vars();
    for (path, rule) in find_redexes(t) {
        let s = step_at(t, &path).map_err(|e| e.to_string())?;
        let actual = checker
            .infer(ctx, &s.after)
            .map_err(|e| format!("{rule} at {path}: contractum ill-typed: {e}"))?;
        if !alpha_equal(&actual, ty) {
            return Err(format!("{rule} at {path}: type changed to {actual}"));
        }
        if !s.after.free_proof_vars().is_subset(&before) {
            return Err(format!("{rule} at {path}: free proof variables grew"));
        }
    }
    Ok(())
}

fn check_dummy(tr: &mut Translator, a: &Formula) -> Result<(), String> {
    let d = tr.dummy_term(a);
    if !d.is_closed() || d.contains_axiom() {
        return Err(format!("d^{a} is not a closed IL⊥ term"));
    }
    Checker::new(Mode::IlBot)
        .check(&Context::new(), &d, a)
        .map_err(|e| format!("d^{a}: {e}"))
}

/// Shape of a closed normal proof at ∃, ∨ or ∀ type, with the extraction
/// re-checked. `Ok(None)` means the check does not apply.
fn check_shape(checker: &Checker<'_>, normal: &Proof, ty: &Formula) -> Result<Option<()>, String> {
    if !normal.is_closed() || !matches!(ty, Formula::Exists(..) | Formula::Or(..) | Formula::Forall(..)) {
        return Ok(None);
    }
    match extract_with(checker, normal) {
        Ok(_) => Ok(Some(())),
        Err(e @ ExtractError::ShapeViolation { .. }) => Err(format!("{e}: {normal}")),
        Err(e) => Err(e.to_string()),
    }
}

/// Runs the suite on the text of one file.
pub fn check_source(name: &str, text: &str, opts: &Options) -> Report {
    let mut report = Report::default();
    let file = match parse(text) {
        Ok(f) => f,
        Err(e) => {
            report.fail(name, Check::Parse, e.to_string());
            return report;
        }
    };
    report.pass(Check::Parse);
    let checker = file.checker();
    let mut tr = Translator::new();

    for (_, ty) in file.hypotheses.iter() {
        report.record(name, Check::DummyTerm, check_dummy(&mut tr, ty));
    }

    for checked in file.check_all() {
        let subject = format!("{name}:{}", checked.name);
        let expected = file.expected_rejection(&checked.name);
        let proof = match (checked.result, expected) {
            (Ok(p), None) => {
                report.pass(Check::Typing);
                p
            }
            (Err(e), Some(kind)) if e.kind == kind => {
                report.pass(Check::Typing);
                continue;
            }
            (Err(e), Some(kind)) => {
                report.fail(&subject, Check::Typing, format!("expected {kind}, got {e}"));
                continue;
            }
            (Err(e), None) => {
                report.fail(&subject, Check::Typing, e.to_string());
                continue;
            }
            (Ok(_), Some(kind)) => {
                report.fail(&subject, Check::Typing, format!("expected {kind}, but it type-checks"));
                continue;
            }
        };
        report.record(&subject, Check::DummyTerm, check_dummy(&mut tr, &checked.formula));
        let Some(trace) = check_term(
            &mut report,
            &subject,
            &file.hypotheses,
            &proof,
            &checked.formula,
            file.mode,
            opts,
        ) else {
            continue;
        };
        if file.mode == Mode::Cd && !trace.fuel_exhausted {
            match check_shape(&checker, trace.last(), &checked.formula) {
                Ok(Some(())) => report.pass(Check::Shape),
                Ok(None) => {}
                Err(m) => report.fail(&subject, Check::Shape, m),
            }
        }
    }

    report.record(name, Check::RoundTrip, round_trip(&file));
    report
}

/// Printing and re-parsing gives the same file, and every definition
/// elaborates to an alpha-equal term.
pub fn round_trip(file: &SourceFile) -> Result<(), String> {
    let printed = file.to_string();
    let again = parse(&printed).map_err(|e| format!("printed file does not parse: {e}"))?;
    if again.to_string() != printed {
        return Err("printing is not stable under re-parsing".to_string());
    }
    if again.mode != file.mode
        || again.signature != file.signature
        || again.hypotheses != file.hypotheses
        || again.directives != file.directives
    {
        return Err("file header changed".to_string());
    }
    for (a, b) in file.check_all().into_iter().zip(again.check_all()) {
        let same = a.name == b.name
            && alpha_equal(&a.formula, &b.formula)
            && match (&a.result, &b.result) {
                (Ok(p), Ok(q)) => alpha_equal_proofs(p, q),
                (Err(e), Err(f)) => e.kind == f.kind,
                _ => false,
            };
        if !same {
            return Err(format!("definition {} changed", a.name));
        }
    }
    Ok(())
}

/// `.cd` files of a directory, sorted by name.
pub fn corpus_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "cd"));
    files.sort();
    Ok(files)
}

/// Runs the suite on every `.cd` file of `dir`, one job per file.
pub fn run_corpus(dir: &Path, opts: &Options) -> io::Result<Report> {
    let files = corpus_files(dir)?;
    let texts: Vec<(String, String)> = files
        .iter()
        .map(|p| {
            let name = p
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            std::fs::read_to_string(p).map(|t| (name, t))
        })
        .collect::<io::Result<_>>()?;
    let reports = batch::map(&texts, |(name, text)| check_source(name, text, opts));
    let mut total = Report::default();
    reports.into_iter().for_each(|r| total.merge(r));
    Ok(total)
}

/// Reduction and translation checks for one generated term.
pub fn check_generated(index: u64, g: &Generated, opts: &Options) -> Report {
    let mut report = Report::default();
    let subject = format!("random#{index}");
    match Checker::new(Mode::Cd).check(&g.context, &g.term, &g.ty) {
        Ok(()) => report.pass(Check::Typing),
        Err(e) => {
            report.fail(&subject, Check::Typing, e.to_string());
            return report;
        }
    }
    check_term(&mut report, &subject, &g.context, &g.term, &g.ty, Mode::Cd, opts);
    report
}

/// Generates `count` terms from `seed` and checks each of them.
pub fn run_random(seed: u64, count: usize, config: &GenConfig, opts: &Options, parallel: bool) -> Report {
    let indices: Vec<u64> = (0..count as u64).collect();
    let job = |i: &u64| check_generated(*i, &generate(seed, *i, config), opts);
    let reports = if parallel {
        batch::map(&indices, job)
    } else {
        batch::map_sequential(&indices, job)
    };
    let mut total = Report::default();
    reports.into_iter().for_each(|r| total.merge(r));
    total
}
