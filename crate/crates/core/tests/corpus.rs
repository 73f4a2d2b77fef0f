use std::path::{Path, PathBuf};

use cdkernel::extract::{extract_disjunct, extract_witness};
use cdkernel::reduce::{normalize, replay_subject_reduction, DEFAULT_FUEL};
use cdkernel::selftest::{run_corpus, Options};
use cdkernel::surface::parse;
use cdkernel::{Mode, Proof, Side, Term};

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn proof(file: &str, name: &str) -> (cdkernel::surface::SourceFile, Proof) {
    let text = std::fs::read_to_string(dir().join(file)).unwrap();
    let f = parse(&text).unwrap();
    let p = f
        .check_all()
        .into_iter()
        .find(|c| c.name == name)
        .unwrap()
        .result
        .unwrap();
    (f, p)
}

#[test]
fn whole_corpus_passes_the_suite() {
    let report = run_corpus(&dir(), &Options::default()).unwrap();
    assert!(report.ok(), "{report}");
    // every reduction rule fires somewhere in the corpus
    assert!(report.rules.iter().all(|&n| n > 0), "{:?}", report.rules);
}

#[test]
fn excluded_middle_instances_normalize_to_injections() {
    let (_, taut) = proof("constant_domain.cd", "em_taut_closed");
    let nf = normalize(&taut, DEFAULT_FUEL);
    assert!(nf.normal);
    let (side, body) = extract_disjunct(nf.last()).unwrap();
    assert_eq!(side, Side::Left);
    assert!(matches!(body, Proof::Gen(..)));

    let (_, absurd) = proof("constant_domain.cd", "em_absurd_closed");
    let nf = normalize(&absurd, DEFAULT_FUEL);
    let (side, body) = extract_disjunct(nf.last()).unwrap();
    assert_eq!(side, Side::Right);
    // the witness of the counterexample is the fixed constant
    assert_eq!(extract_witness(&body).unwrap().0, Term::dum());
}

#[test]
fn witness_survives_the_detour() {
    let (_, t) = proof("quantifiers.cd", "witness_detour");
    let nf = normalize(&t, DEFAULT_FUEL);
    assert_eq!(extract_witness(nf.last()).unwrap().0, Term::constant("c"));
}

#[test]
fn cd_inj0_fixture_preserves_its_type() {
    let (f, t) = proof("redexes.cd", "cd_inj0");
    let r = replay_subject_reduction(&f.hypotheses, &t, Mode::Cd, DEFAULT_FUEL).unwrap();
    assert_eq!(r.ty.to_string(), "forall a. P(a) | Q");
    assert_eq!(r.trace.steps.len(), 1);
}
