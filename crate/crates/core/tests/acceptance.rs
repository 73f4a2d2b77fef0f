//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use cdkernel::extract::{extract_with, Extracted};
use cdkernel::generate::GenConfig;
use cdkernel::reduce::{normalize, RuleTag, DEFAULT_FUEL};
use cdkernel::selftest::{corpus_files, run_corpus, run_random, Check, Options};
use cdkernel::surface::{parse, SourceFile};
use cdkernel::translate::{check_simulation, Translator};
use cdkernel::{check, Context, ErrorKind, Formula, Mode, Proof, Side};

const RANDOM_TERMS: usize = 500;
const RANDOM_SEED: u64 = 2024;
const GENERATOR_DEPTH: usize = 8;
const MIN_CORPUS_PROOFS: usize = 15;
const TYPING_BUDGET: Duration = Duration::from_secs(1);
/// Golden simulation lengths of the root D redex fixtures, with the bounds
/// they must stay within.
const GOLDEN_INJ0: (usize, usize, usize) = (5, 4, 6);
const GOLDEN_INJ1: (usize, usize, usize) = (3, 3, 5);

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

struct Corpus {
    files: Vec<(PathBuf, SourceFile)>,
}

/// An accepted definition with its proof.
struct Accepted<'a> {
    file: &'a SourceFile,
    name: String,
    formula: Formula,
    proof: Proof,
}

impl Corpus {
    fn load() -> Result<Corpus, String> {
        let mut files = Vec::new();
        for path in corpus_files(&corpus_dir()).map_err(|e| e.to_string())? {
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let file = parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            files.push((path, file));
        }
        Ok(Corpus { files })
    }

    fn accepted(&self) -> Vec<Accepted<'_>> {
        let mut out = Vec::new();
        for (_, file) in &self.files {
            for c in file.check_all() {
                if let Ok(proof) = c.result {
                    if file.expected_rejection(&c.name).is_none() {
                        out.push(Accepted {
                            file,
                            name: c.name,
                            formula: c.formula,
                            proof,
                        });
                    }
                }
            }
        }
        out
    }

    fn find(&self, name: &str) -> Option<Accepted<'_>> {
        self.accepted().into_iter().find(|a| a.name == name)
    }
}

type Outcome = Result<String, String>;

fn constructors(t: &Proof, out: &mut BTreeSet<&'static str>) {
    out.insert(match t {
        Proof::Var(..) => "var",
        Proof::Lam(..) => "lam",
        Proof::App(..) => "app",
        Proof::Pair(..) => "pair",
        Proof::Proj(..) => "proj",
        Proof::Inj(..) => "inj",
        Proof::Case(..) => "case",
        Proof::Gen(..) => "gen",
        Proof::Inst(..) => "inst",
        Proof::Pack(..) => "pack",
        Proof::Unpack(..) => "unpack",
        Proof::Axiom(..) => "D",
        Proof::Efq(..) => "efq",
        Proof::Falsity => "F",
    });
    for c in t.children() {
        constructors(c, out);
    }
}

fn criterion_1(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut proofs = 0;
    let mut wrong = Vec::new();
    let mut rules = BTreeSet::new();
    let mut rejected = BTreeSet::new();
    for (path, file) in &corpus.files {
        for c in file.check_all() {
            proofs += 1;
            match (&c.result, file.expected_rejection(&c.name)) {
                (Ok(p), None) => constructors(p, &mut rules),
                (Err(e), Some(k)) if e.kind == k => {
                    rejected.insert(k);
                }
                (r, k) => wrong.push(format!(
                    "{}:{} expected {k:?}, got {:?}",
                    path.display(),
                    c.name,
                    r.as_ref().err()
                )),
            }
        }
    }
    let elapsed = start.elapsed();
    let all = [
        "var", "lam", "app", "pair", "proj", "inj", "case", "gen", "inst", "pack", "unpack", "D", "efq",
    ];
    let missing: Vec<&str> = all.iter().copied().filter(|r| !rules.contains(r)).collect();
    if !wrong.is_empty() {
        return Err(wrong.join("; "));
    }
    if proofs < MIN_CORPUS_PROOFS {
        return Err(format!("only {proofs} corpus proofs"));
    }
    if !missing.is_empty() {
        return Err(format!("rules never used: {}", missing.join(", ")));
    }
    if !rejected.contains(&ErrorKind::EigenvariableViolation) {
        return Err("no eigenvariable negative test".into());
    }
    if elapsed >= TYPING_BUDGET {
        return Err(format!("typing took {elapsed:?}"));
    }
    Ok(format!(
        "{proofs} proofs, all {} rules used, {} rejection kinds, {elapsed:?}",
        all.len(),
        rejected.len()
    ))
}

/// Criteria 2 and 3 share one sweep over the corpus and the random terms.
fn sweeps() -> (cdkernel::selftest::Report, cdkernel::selftest::Report) {
    let opts = Options {
        fuel: DEFAULT_FUEL,
        all_redexes: true,
        simulation: false,
    };
    let corpus = run_corpus(&corpus_dir(), &opts).expect("corpus readable");
    let config = GenConfig {
        max_depth: GENERATOR_DEPTH,
        ..GenConfig::default()
    };
    let random = run_random(RANDOM_SEED, RANDOM_TERMS, &config, &opts, true);
    (corpus, random)
}

fn criterion_2(corpus: &cdkernel::selftest::Report, random: &cdkernel::selftest::Report) -> Outcome {
    let violations = corpus.failed(Check::SubjectReduction) + random.failed(Check::SubjectReduction);
    let untyped = random.failed(Check::Typing);
    if violations + untyped > 0 {
        let first = corpus
            .failures
            .iter()
            .chain(&random.failures)
            .next()
            .map(|f| f.to_string())
            .unwrap_or_default();
        return Err(format!(
            "{violations} violations, {untyped} ill-typed generated terms; {first}"
        ));
    }
    if random.terms < RANDOM_TERMS {
        return Err(format!("only {} generated terms", random.terms));
    }
    let rules: Vec<String> = RuleTag::ALL
        .iter()
        .zip(random.rules)
        .map(|(r, n)| format!("{r}={n}"))
        .collect();
    Ok(format!(
        "{} corpus + {} random terms, {} steps, zero violations ({})",
        corpus.terms,
        random.terms,
        corpus.steps + random.steps,
        rules.join(" ")
    ))
}

fn criterion_3(corpus: &cdkernel::selftest::Report, random: &cdkernel::selftest::Report) -> Outcome {
    let exhausted = corpus.failed(Check::Normalization) + random.failed(Check::Normalization);
    let normalized = corpus.passed(Check::Normalization) + random.passed(Check::Normalization);
    if exhausted > 0 || normalized != corpus.terms + random.terms {
        return Err(format!("{exhausted} fuel exhaustions"));
    }
    Ok(format!("{normalized} terms normal within fuel {DEFAULT_FUEL}"))
}

fn criterion_4(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    let mut sides = Vec::new();
    for a in corpus.accepted() {
        if a.file.mode != Mode::Cd || !a.proof.is_closed() {
            continue;
        }
        let trace = normalize(&a.proof, DEFAULT_FUEL);
        let nf = trace.last();
        let shape_ok = match (&a.formula, nf) {
            (Formula::Exists(..), Proof::Pack(..))
            | (Formula::Or(..), Proof::Inj(..))
            | (Formula::Forall(..), Proof::Gen(..)) => true,
            (Formula::Exists(..) | Formula::Or(..) | Formula::Forall(..), _) => false,
            _ => continue,
        };
        if !trace.normal || !shape_ok {
            return Err(format!("{}: normal form {nf} has the wrong head", a.name));
        }
        let extracted = extract_with(&a.file.checker(), nf).map_err(|e| format!("{}: {e}", a.name))?;
        // re-check the extracted proof at the predicted type
        let (proof, predicted) = match (&extracted, &a.formula) {
            (Extracted::Witness { term, proof }, Formula::Exists(v, body)) => {
                (proof, cdkernel::fo_subst(&**body, term, v))
            }
            (Extracted::Disjunct { side, proof }, Formula::Or(l, r)) => {
                sides.push((a.name.clone(), *side));
                (
                    proof,
                    if *side == Side::Left {
                        (**l).clone()
                    } else {
                        (**r).clone()
                    },
                )
            }
            (Extracted::Universal { var, proof }, Formula::Forall(v, body)) => {
                (proof, cdkernel::fo_subst(&**body, &cdkernel::Term::var(var.clone()), v))
            }
            _ => return Err(format!("{}: extraction does not match the type", a.name)),
        };
        check(&Context::new(), proof, &predicted, Mode::Cd).map_err(|e| format!("{}: round trip: {e}", a.name))?;
        checked += 1;
    }
    let side_of = |n: &str| sides.iter().find(|(m, _)| m == n).map(|(_, s)| *s);
    if side_of("em_taut_closed") != Some(Side::Left) || side_of("em_absurd_closed") != Some(Side::Right) {
        return Err(format!(
            "excluded-middle instances gave {:?} and {:?}",
            side_of("em_taut_closed"),
            side_of("em_absurd_closed")
        ));
    }
    Ok(format!(
        "{checked} closed proofs with introduction heads; excluded middle gives side 0 and side 1"
    ))
}

fn annotations(t: &Proof, out: &mut Vec<Formula>) {
    match t {
        Proof::Var(_, f) | Proof::Inj(_, _, f) | Proof::Pack(_, _, f) | Proof::Axiom(f) | Proof::Efq(f, _) => {
            out.push(f.clone())
        }
        Proof::Lam(_, f, _) => out.push(f.clone()),
        _ => {}
    }
    for c in t.children() {
        annotations(c, out);
    }
}

fn criterion_5(corpus: &Corpus) -> Outcome {
    let mut tr = Translator::new();
    let mut translated = 0;
    let mut formulas: Vec<Formula> = Vec::new();
    for a in corpus.accepted() {
        let ctx = &a.file.hypotheses;
        let t = tr.translate(&a.proof).map_err(|e| format!("{}: {e}", a.name))?;
        if t.contains_axiom() {
            return Err(format!("{}: translation contains D", a.name));
        }
        check(ctx, &t, &a.formula, Mode::IlBot).map_err(|e| format!("{}: {e}", a.name))?;
        translated += 1;
        formulas.push(a.formula.clone());
        formulas.extend(ctx.iter().map(|(_, f)| f.clone()));
        annotations(&a.proof, &mut formulas);
    }
    for f in &formulas {
        let d = tr.dummy_term(f);
        if !d.is_closed() || d.contains_axiom() {
            return Err(format!("d^{f} is not a closed IL⊥ term"));
        }
        check(&Context::new(), &d, f, Mode::IlBot).map_err(|e| format!("d^{f}: {e}"))?;
    }
    Ok(format!(
        "{translated} translations check in il-bot; {} dummy terms closed and well-typed",
        formulas.len()
    ))
}

fn golden_length(corpus: &Corpus, name: &str) -> Result<usize, String> {
    let a = corpus.find(name).ok_or_else(|| format!("fixture {name} missing"))?;
    let trace = normalize(&a.proof, DEFAULT_FUEL);
    let [first] = trace.steps.as_slice() else {
        return Err(format!("{name} should take exactly one step"));
    };
    if !first.path.is_root() {
        return Err(format!("{name} is not a root redex"));
    }
    Ok(check_simulation(first, DEFAULT_FUEL).map_err(|e| e.to_string())?.length)
}

fn criterion_6(corpus: &Corpus) -> Outcome {
    let mut steps = 0;
    for a in corpus.accepted() {
        let trace = normalize(&a.proof, DEFAULT_FUEL);
        for s in &trace.steps {
            let r = check_simulation(s, DEFAULT_FUEL).map_err(|e| format!("{}: {e}", a.name))?;
            if r.length == 0 {
                return Err(format!("{}: empty simulation", a.name));
            }
            steps += 1;
        }
    }
    let mut lengths = Vec::new();
    for (name, (golden, lo, hi)) in [("cd_inj0", GOLDEN_INJ0), ("cd_inj1", GOLDEN_INJ1)] {
        let first = golden_length(corpus, name)?;
        let again = golden_length(corpus, name)?;
        if first != again || first != golden || !(lo..=hi).contains(&first) {
            return Err(format!(
                "{name}: lengths {first}, {again}; golden {golden} in [{lo},{hi}]"
            ));
        }
        lengths.push(format!("{name}={first}"));
    }
    Ok(format!("{steps} corpus steps simulated; golden {}", lengths.join(" ")))
}

fn criterion_7() -> Outcome {
    let files = corpus_files(&corpus_dir()).map_err(|e| e.to_string())?;
    let run = |path: &Path| {
        Command::new(env!("CARGO_BIN_EXE_cdk"))
            .arg("normalize")
            .arg(path)
            .arg("--json")
            .env_remove("CDK_FUEL")
            .output()
            .map_err(|e| e.to_string())
    };
    for path in &files {
        let (a, b) = (run(path)?, run(path)?);
        if !a.status.success() || a.stdout.is_empty() {
            return Err(format!(
                "{}: normalize failed: {}",
                path.display(),
                String::from_utf8_lossy(&a.stderr)
            ));
        }
        if a.stdout != b.stdout {
            return Err(format!("{}: outputs differ", path.display()));
        }
    }
    Ok(format!("{} files byte-identical across two runs", files.len()))
}

fn main() {
    let corpus = match Corpus::load() {
        Ok(c) => c,
        Err(e) => {
            println!("corpus failed to load: {e}");
            std::process::exit(1);
        }
    };
    let (corpus_sweep, random_sweep) = sweeps();
    let results: Vec<(&str, Outcome)> = vec![
        ("typechecker on corpus", criterion_1(&corpus)),
        ("subject reduction sweep", criterion_2(&corpus_sweep, &random_sweep)),
        ("strong normalization", criterion_3(&corpus_sweep, &random_sweep)),
        ("constructiveness shapes", criterion_4(&corpus)),
        ("translation typing", criterion_5(&corpus)),
        ("simulation", criterion_6(&corpus)),
        ("determinism", criterion_7()),
    ];
    let mut failed = 0;
    for (i, (title, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {} {title}: PASS: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {title}: FAIL: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
