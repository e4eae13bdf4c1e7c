//! The printed corpus under `regression/` must match the generator byte for
//! byte. Run with `ASRT_BLESS=1` to rewrite it after an intended change.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use asrt_core::corpus::{regression_corpus, render};
use asrt_core::diagonal::{hazard_demos, liar_suite};
use asrt_core::kernel::{check_proof, parse_proof, ProofStore, TheoryConfig};
use asrt_core::reflection::{reflect_iterated, reflect_theorem};
use asrt_core::semantics::{audit_corpus, FalsityLedger};
use asrt_core::syntax::{box_power, box_quote};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../regression")
}

#[test]
fn printed_corpus_is_current() {
    let files = render(&regression_corpus().unwrap());
    let dir = dir();
    if std::env::var_os("ASRT_BLESS").is_some() {
        let _ = fs::remove_dir_all(&dir);
        fs::create_dir_all(&dir).unwrap();
        for (name, text) in &files {
            fs::write(dir.join(name), text).unwrap();
        }
        return;
    }
    let on_disk: BTreeSet<String> = fs::read_dir(&dir)
        .expect("regression/ exists; bless with ASRT_BLESS=1")
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    let expected: BTreeSet<String> = files.iter().map(|(n, _)| n.clone()).collect();
    assert_eq!(on_disk, expected);
    for (name, text) in &files {
        assert_eq!(&fs::read_to_string(dir.join(name)).unwrap(), text, "{name}");
        assert!(parse_proof(text).is_ok(), "{name}");
    }
}

#[test]
fn corpus_covers_the_suite() {
    let theory = TheoryConfig::sbox_pa();
    let corpus = regression_corpus().unwrap();
    assert!(corpus.len() >= 50, "{} entries", corpus.len());
    let conclusions: Vec<_> = corpus.iter().map(|e| e.conclusion().clone()).collect();
    let suite = liar_suite(&theory).unwrap();
    for (name, p) in suite.proofs() {
        assert!(conclusions.contains(p.conclusion().unwrap()), "{name}");
    }
    let h = hazard_demos(&theory).unwrap();
    assert!(conclusions.contains(h.release.conclusion().unwrap()));
    assert!(conclusions.contains(h.excluded_middle.conclusion().unwrap()));
}

#[test]
fn every_corpus_entry_reflects() {
    let theory = TheoryConfig::sbox_pa();
    let store = ProofStore::new();
    let corpus = regression_corpus().unwrap();
    for e in &corpus {
        let t0 = Instant::now();
        let t = reflect_theorem(&theory, &e.proof, &store)
            .unwrap_or_else(|err| panic!("{}: {err}", e.name));
        assert!(t0.elapsed() < Duration::from_secs(10), "{}", e.name);
        assert_eq!(*t.output.conclusion().unwrap(), box_quote(e.conclusion()), "{}", e.name);
        let r = check_proof(&theory, &t.output, &store);
        assert!(r.accepted, "{}: {:?}", e.name, r.error);
    }
    for e in corpus.iter().take(12) {
        let p = reflect_iterated(&theory, &e.proof, 2, &store).unwrap();
        assert_eq!(*p.conclusion().unwrap(), box_power(e.conclusion(), 2), "{}", e.name);
        assert!(check_proof(&theory, &p, &store).accepted, "{}", e.name);
    }
}

#[test]
fn sound_corpus_has_no_false_theorems() {
    let corpus = regression_corpus().unwrap();
    let proofs: Vec<_> = corpus.iter().map(|e| e.proof.clone()).collect();
    let ledger = FalsityLedger::new(5, 64);
    let report = audit_corpus(&ledger, &proofs, 5);
    assert_eq!(report.records.len(), corpus.len());
    assert_eq!(report.in_count, 0, "{:?}", report.failures().collect::<Vec<_>>());
    assert!(report.mp_violations.is_empty());
    assert!(report.mp_checked > 0);
    assert!(report.is_clean());
}
