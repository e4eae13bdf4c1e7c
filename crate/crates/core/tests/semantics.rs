mod common;

use asrt_core::kernel::{check_proof, ProofStore, TheoryConfig};
use asrt_core::semantics::{
    audit_corpus, falsity_member, unsound_base_witness, FalsityLedger, Verdict,
};
use asrt_core::syntax::{box_power, box_quote, parse_sentence, Formula};
use common::ledger_sentence;
use proptest::prelude::*;

fn s(src: &str) -> Formula {
    parse_sentence(src).unwrap()
}

fn ledger() -> FalsityLedger {
    FalsityLedger::new(5, 64)
}

#[test]
fn atomic_clauses() {
    let l = ledger();
    for i in 0..=5 {
        assert_eq!(falsity_member(&l, &Formula::bottom(), i), Verdict::In);
        assert_eq!(falsity_member(&l, &s("(= (+ 2 2) 4)"), i), Verdict::Out);
    }
    let b = box_quote(&Formula::bottom());
    assert_eq!(falsity_member(&l, &b, 0), Verdict::Out);
    assert_eq!(falsity_member(&l, &b, 1), Verdict::In);
    // □ of a true sentence is never false
    assert_eq!(
        falsity_member(&l, &box_quote(&s("(= 0 0)")), 5),
        Verdict::Out
    );
    // a code that is not a sentence
    assert_eq!(falsity_member(&l, &s("(box 3)"), 5), Verdict::Out);
}

#[test]
fn iterated_boxes_separate_by_stage() {
    let l = ledger();
    for k in 1..=5 {
        let f = box_power(&Formula::bottom(), k);
        assert_eq!(falsity_member(&l, &f, k), Verdict::In, "k = {k}");
        assert_eq!(falsity_member(&l, &f, k - 1), Verdict::Out, "k = {k}");
    }
}

#[test]
fn connective_clauses() {
    let l = ledger();
    let t = "(= 0 0)";
    let f = "(= 0 1)";
    let v = |x: String| falsity_member(&l, &s(&x), 0);
    assert_eq!(v(format!("(and {t} {f})")), Verdict::In);
    assert_eq!(v(format!("(and {t} {t})")), Verdict::Out);
    assert_eq!(v(format!("(or {t} {f})")), Verdict::Out);
    assert_eq!(v(format!("(or {f} {f})")), Verdict::In);
    assert_eq!(v(format!("(-> {t} {f})")), Verdict::In);
    assert_eq!(v(format!("(-> {f} {f})")), Verdict::Out);
    // ¬□⌜⊥⌝ is out at stage 0 and in from stage 1 on
    let nb = Formula::not(box_quote(&Formula::bottom()));
    assert_eq!(falsity_member(&l, &nb, 0), Verdict::In);
    // □⌜⊥⌝ → ⊥: the antecedent is out at stage 0 while ⊥ is in
    let release = Formula::imp(box_quote(&Formula::bottom()), Formula::bottom());
    assert_eq!(falsity_member(&l, &release, 3), Verdict::In);
}

#[test]
fn quantifiers_are_exact_on_polynomial_shapes() {
    let l = ledger();
    let v = |x: &str| falsity_member(&l, &s(x), 2);
    assert_eq!(v("(forall x (= (+ x 0) x))"), Verdict::Out);
    assert_eq!(
        v("(forall x (= (* (+ x 1) (+ x 1)) (+ (* x x) (+ (* 2 x) 1))))"),
        Verdict::Out
    );
    assert_eq!(v("(forall x (= x 5))"), Verdict::In);
    assert_eq!(v("(exists x (= x 5))"), Verdict::Out);
    assert_eq!(v("(exists x (= (S x) 0))"), Verdict::In);
    assert_eq!(
        v("(forall x (forall y (= (+ x y) (+ y x))))"),
        Verdict::Indeterminate
    );
    // the root 100 lies above the bound: the scan cannot settle it
    assert_eq!(v("(exists x (= x 100))"), Verdict::Indeterminate);
    assert_eq!(v("(exists x (= x 10))"), Verdict::Out);
    assert_eq!(v("(forall x (-> (= x 3) (= x x)))"), Verdict::Out);
    assert_eq!(
        v("(forall x (-> (= x 100) (= 0 1)))"),
        Verdict::Indeterminate
    );
}

#[test]
fn audit_flags_the_unsound_base() {
    let w = unsound_base_witness();
    let theory = TheoryConfig::sbox_pa_incon();
    let r = check_proof(&theory, &w, &ProofStore::new());
    assert!(r.accepted && r.conditional, "{:?}", r.error);
    let sound = asrt_core::kernel::parse_proof(
        "(proof (theory sbox-pa) (line 1 (forall x (= (+ x 0) x)) axiom))",
    )
    .unwrap();
    let l = ledger();
    let report = audit_corpus(&l, &[sound.clone(), w], 1);
    assert_eq!(report.in_count, 1);
    let flagged: Vec<_> = report.failures().map(|r| r.index).collect();
    assert_eq!(flagged, [1]);
    assert_eq!(audit_corpus(&l, &[sound], 0).in_count, 0);
    let empty = audit_corpus(&l, &[], 5);
    assert!(empty.records.is_empty() && empty.is_clean());
    assert_eq!(empty.to_json_lines().len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn stages_are_monotone(f in ledger_sentence()) {
        let l = FalsityLedger::new(5, 16);
        for i in 0..5 {
            if falsity_member(&l, &f, i) == Verdict::In {
                prop_assert_eq!(falsity_member(&l, &f, i + 1), Verdict::In);
            }
            if falsity_member(&l, &f, i + 1) == Verdict::Out {
                prop_assert_eq!(falsity_member(&l, &f, i), Verdict::Out);
            }
        }
    }

    #[test]
    fn raising_the_bound_only_resolves(f in ledger_sentence()) {
        let low = FalsityLedger::new(3, 8);
        let high = FalsityLedger::new(3, 32);
        for i in 0..=3 {
            let (a, b) = (falsity_member(&low, &f, i), falsity_member(&high, &f, i));
            if a != Verdict::Indeterminate {
                prop_assert_eq!(a, b);
            }
        }
    }
}
