use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const ASRT: &str = env!("CARGO_BIN_EXE_asrt");

fn run(args: &[&str], store: Option<&Path>) -> Output {
    let mut c = Command::new(ASRT);
    c.args(args);
    match store {
        Some(dir) => c.env("ASRT_PROOF_STORE", dir),
        None => c.env_remove("ASRT_PROOF_STORE"),
    };
    c.output().expect("binary runs")
}

fn records(o: &Output) -> Vec<Value> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const GOOD: &str = "(proof (theory sbox-pa) (line 1 (forall x (= (+ x 0) x)) axiom))";
const BAD: &str = "(proof (theory sbox-pa) (line 1 (= 0 1) axiom))";

#[test]
fn check_reports_one_record_per_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.sexp", GOOD);
    let bad = write(dir.path(), "bad.sexp", BAD);
    let o = run(&["check", "--no-timestamp", "--theory", "sbox-pa", &good], None);
    assert_eq!(code(&o), 0);
    let r = records(&o);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["accepted"], true);
    assert_eq!(r[0]["kind"], "check");

    let o = run(&["check", "--no-timestamp", &good, &bad], None);
    assert_eq!(code(&o), 1);
    let r = records(&o);
    assert_eq!(r.len(), 2);
    assert_eq!(r[1]["accepted"], false);
    assert_eq!(r[1]["ok"], false);
}

#[test]
fn exit_codes_for_usage_and_internal_errors() {
    assert_eq!(code(&run(&["check", "--frobnicate", "x"], None)), 2);
    assert_eq!(code(&run(&["nonsense"], None)), 2);
    assert_eq!(code(&run(&["demo", "no-such-demo"], None)), 2);
    assert_eq!(code(&run(&["check", "--theory", "zfc", "x.sexp"], None)), 2);
    assert_eq!(code(&run(&["check", "/no/such/file.sexp"], None)), 3);
}

#[test]
fn output_is_stable_without_timestamps() {
    let a = run(&["demo", "liar-suite", "--no-timestamp"], None);
    let b = run(&["demo", "liar-suite", "--no-timestamp"], None);
    assert_eq!(a.stdout, b.stdout);
    let t = records(&run(&["demo", "too-much"], None));
    assert!(t[0]["timestamp"].is_u64());
    assert!(records(&a)[0].get("timestamp").is_none());
}

#[test]
fn liar_suite_demo_writes_three_accepted_proofs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["demo", "liar-suite", "--no-timestamp", "--out-dir", out], None);
    assert_eq!(code(&o), 0);
    let r = records(&o);
    let proofs: Vec<_> = r.iter().filter(|v| v["kind"] == "demo").collect();
    assert_eq!(proofs.len(), 3);
    for p in &proofs {
        assert_eq!(p["accepted"], true);
        let file = p["proof_file"].as_str().unwrap();
        let c = run(&["check", "--no-timestamp", file], None);
        assert_eq!(code(&c), 0, "{file}");
    }
    let scan = r.iter().find(|v| v["kind"] == "forbidden-scan").unwrap();
    assert_eq!(scan["hits"].as_array().unwrap().len(), 0);
}

#[test]
fn every_demo_succeeds() {
    let list = records(&run(&["demo", "--list", "--no-timestamp"], None));
    assert!(list.len() >= 14);
    for d in list {
        let name = d["demo"].as_str().unwrap();
        let o = run(&["demo", name, "--no-timestamp"], None);
        assert_eq!(code(&o), 0, "{name}: {}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn reflect_iterates() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.sexp", GOOD);
    let o = run(&["reflect", "--no-timestamp", "--iterate", "2", &good], None);
    assert_eq!(code(&o), 0);
    let r = &records(&o)[0];
    assert_eq!(r["accepted"], true);
    assert!(r["conclusion"].as_str().unwrap().starts_with("(box "));
    let proof = r["proof"].as_str().unwrap();
    let f = write(dir.path(), "boxed.sexp", proof);
    assert_eq!(code(&run(&["check", &f], None)), 0);
}

#[test]
fn codec_roundtrips() {
    let o = run(&["codec", "encode", "(= 0 0)", "--no-timestamp"], None);
    assert_eq!(code(&o), 0);
    let c = records(&o)[0]["code"].as_str().unwrap().to_owned();
    let o = run(&["codec", "decode", &c, "--no-timestamp"], None);
    assert_eq!(code(&o), 0);
    assert_eq!(records(&o)[0]["formula"], "(= 0 0)");
    assert_eq!(code(&run(&["codec", "decode", "2"], None)), 1);
    assert_eq!(code(&run(&["codec", "decode", "two"], None)), 2);
}

#[test]
fn licensing_uses_the_session_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    let a = "(forall x (= (+ x 0) x))";
    let policy = write(dir.path(), "policy.sexp", &format!("(policy (rule {a} alpha0))"));
    let good = write(dir.path(), "good.sexp", GOOD);

    // a proof of A licenses alpha0, and so does its reflection
    let o = run(&["license", "--no-timestamp", "--policy", &policy, "--proved", &good], Some(&store));
    assert_eq!(code(&o), 0);
    assert_eq!(records(&o)[0]["actions"], serde_json::json!(["alpha0"]));
    let boxed = dir.path().join("boxed.sexp");
    let o = run(&["reflect", "--out", boxed.to_str().unwrap(), &good], Some(&store));
    assert_eq!(code(&o), 0);
    let o = run(&["license", "--policy", &policy, "--proved", boxed.to_str().unwrap()], Some(&store));
    assert_eq!(records(&o)[0]["actions"], serde_json::json!(["alpha0"]));

    // Prov⌜A⌝ is admitted only because A is registered, and licenses nothing
    let code_a = records(&run(&["codec", "encode", a], None))[0]["code"].as_str().unwrap().to_owned();
    let prov = write(
        dir.path(),
        "prov.sexp",
        &format!("(proof (theory sbox-pa) (line 1 (prov sbox-pa {code_a}) computation))"),
    );
    let o = run(&["license", "--no-timestamp", "--policy", &policy, "--proved", &prov], Some(&store));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(records(&o)[0]["actions"], serde_json::json!([]));
    let fresh = dir.path().join("empty-store");
    let o = run(&["license", "--policy", &policy, "--proved", &prov], Some(&fresh));
    assert_eq!(code(&o), 1);
}

#[test]
fn falsity_evaluates_sentences() {
    let o = run(
        &["falsity", "--no-timestamp", "--stages", "3", "--bound", "16", "(= 0 1)", "(forall x (= x x))"],
        None,
    );
    assert_eq!(code(&o), 0);
    let r = records(&o);
    assert_eq!(r[0]["verdicts"], serde_json::json!(["in", "in", "in", "in"]));
    assert_eq!(r[1]["verdicts"], serde_json::json!(["out", "out", "out", "out"]));
    assert_eq!(code(&run(&["falsity", "(= x 1)"], None)), 2);
    assert_eq!(code(&run(&["falsity"], None)), 2);
}

#[test]
fn falsity_audits_the_regression_corpus() {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/../../regression");
    let o = run(&["falsity", "--no-timestamp", "--stages", "5", "--bound", "64", "--corpus", corpus], None);
    assert_eq!(code(&o), 0);
    let r = records(&o);
    let summary = r.last().unwrap();
    assert_eq!(summary["kind"], "audit-summary");
    assert_eq!(summary["in"], 0);
    assert!(r.len() > 50);
}

#[test]
fn theory_files_extend_the_presets() {
    let dir = tempfile::tempdir().unwrap();
    let theory = write(dir.path(), "t.sexp", "(theory sbox-extra (axiom (= (+ 1 1) 3)))");
    let p = write(
        dir.path(),
        "p.sexp",
        "(proof (theory sbox-extra) (line 1 (= (+ 1 1) 3) axiom))",
    );
    let o = run(&["check", "--no-timestamp", "--theory-file", &theory, &p], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = run(&["check", "--no-timestamp", "--theory", "sbox-pa", &p], None);
    assert_eq!(code(&o), 1);
    let shadow = write(dir.path(), "s.sexp", "(theory pa)");
    assert_eq!(code(&run(&["check", "--theory-file", &shadow, &p], None)), 2);
}
