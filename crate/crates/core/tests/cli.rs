use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn cdk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdk"))
        .args(args)
        .env_remove("CDK_FUEL")
        .output()
        .expect("cdk runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cdk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_reports_every_definition() {
    let out = cdk(&["check", corpus("negative.cd").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("eigen  rejected as expected: root: EigenvariableViolation"));
    let out = cdk(&["check", corpus("basics.cd").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("swap : P & Q -> Q & P  ok"));
}

#[test]
fn exit_codes() {
    let bad_type = scratch("mismatch.cd", "pred P/0, Q/0\ndef m : P -> Q := fun (x : P) => x\n");
    assert_eq!(cdk(&["check", bad_type.to_str().unwrap()]).status.code(), Some(1));

    let bad_syntax = scratch(
        "syntax.cd",
        "pred P/1\ndef m : P(a) -> P(a) := fun (x : P(a)) => inl x\n",
    );
    let out = cdk(&["check", bad_syntax.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:47: expected `[`, found `x`"));

    let cd = corpus("constant_domain.cd");
    let out = cdk(&["normalize", cd.to_str().unwrap(), "--fuel", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_cdk"))
        .args(["normalize", cd.to_str().unwrap()])
        .env("CDK_FUEL", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn normalize_trace_lines() {
    let out = cdk(&["normalize", corpus("redexes.cd").to_str().unwrap(), "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("step 1: CDInj0 at root"));
    assert!(text.contains("step 1: CDInj1 at root"));
    // only the #normalize targets are shown
    assert!(!text.contains("beta :"));
}

#[test]
fn normalize_json_shape() {
    let out = cdk(&["normalize", corpus("redexes.cd").to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let traces = v.as_array().unwrap();
    assert_eq!(traces.len(), 2);
    let step = &traces[0]["steps"][0];
    assert_eq!(step["step"], 1);
    assert_eq!(step["rule"], "CDInj0");
    assert_eq!(step["path"], "root");
    assert_eq!(step["term"], "inl[forall a. P(a) | Q] (gen a => h @ a)");
    assert_eq!(traces[1]["normal"], true);
}

#[test]
fn translate_writes_a_checkable_target_file() {
    let target = std::env::temp_dir().join(format!("cdk-translated-{}.cd", std::process::id()));
    let out = cdk(&[
        "translate",
        corpus("constant_domain.cd").to_str().unwrap(),
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&target).unwrap();
    assert!(text.starts_with("#mode il-bot"));
    assert!(!text.contains("D["));
    let out = cdk(&["check", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    // extraction still works on the translated closed instances
    let out = cdk(&["normalize", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn extract_prints_witnesses_and_sides() {
    let out = cdk(&["extract", corpus("constant_domain.cd").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("em_taut_closed : forall a. (P(a) -> P(a)) | exists b. ~(P(b) -> P(b))\n  side 0\n"));
    assert!(text.contains("em_absurd_closed : forall a. (bot & P(a)) | exists b. ~(bot & P(b))\n  side 1\n"));

    let out = cdk(&["extract", corpus("quantifiers.cd").to_str().unwrap()]);
    assert!(stdout(&out).contains("witness_detour : exists a. (P(a) -> P(a))\n  witness c\n"));

    // an explicit request on an open term is an error
    let open = scratch(
        "open.cd",
        "pred Q/0\nvar q : Q\ndef d : Q | Q := inl[Q | Q] q\n#extract d\n",
    );
    let out = cdk(&["extract", open.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_over_the_corpus() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let out = cdk(&["selftest", dir.to_str().unwrap(), "--random", "20", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("round-trip"));
}
