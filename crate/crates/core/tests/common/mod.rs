//! Deterministic generators shared by the integration targets.
#![allow(dead_code)]

pub mod reference;

use asrt_core::syntax::{box_power, box_quote, formula_to_string, parse_formula, parse_sentence, Formula};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

/// `n` values drawn from `s` with a fixed seed.
pub fn sample<S: Strategy>(s: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n)
        .map(|_| s.new_tree(&mut runner).expect("strategy yields").current())
        .collect()
}

fn term_over(leaves: Vec<&'static str>) -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0u32..6).prop_map(|n| n.to_string()),
        proptest::sample::select(leaves).prop_map(str::to_owned),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| format!("(S {a})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("(+ {a} {b})")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("(* {a} {b})")),
        ]
    })
}

/// Box-free formulas whose free variables are among `x` and `z`; `z` is
/// bound by the quantifier layer.
fn box_free_body() -> impl Strategy<Value = String> {
    let t = || term_over(vec!["x", "z"]);
    let atom = prop_oneof![
        4 => (t(), t()).prop_map(|(a, b)| format!("(= {a} {b})")),
        1 => t().prop_map(|a| format!("(prov pa {a})")),
        1 => t().prop_map(|a| format!("(ax pa {a})")),
    ];
    atom.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("(and {a} {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("(or {a} {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("(-> {a} {b})")),
            inner.clone().prop_map(|a| format!("(not {a})")),
            inner.clone().prop_map(|a| format!("(forall z {a})")),
            inner.prop_map(|a| format!("(exists z {a})")),
        ]
    })
}

/// Box-free templates with exactly the free variable `x`.
pub fn box_free_template() -> impl Strategy<Value = Formula> {
    box_free_body().prop_map(|b| {
        let f = parse_formula(&format!("(forall z {b})")).unwrap();
        let f = if f.has_free(&asrt_core::syntax::Var::new("x")) {
            f
        } else {
            parse_formula(&format!("(or (= x 0) {})", formula_to_string(&f))).unwrap()
        };
        assert_eq!(f.free_vars().len(), 1);
        f
    })
}

/// Closed formulas over `v`, with boxes of small closed sentences mixed in.
fn body_with_boxes() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (term_over(vec!["v"]), term_over(vec!["v"])).prop_map(|(a, b)| format!("(= {a} {b})")),
        (
            0u32..3,
            prop_oneof![Just("(= 0 1)"), Just("(= 0 0)"), Just("(= 1 (+ 0 1))")]
        )
            .prop_map(|(k, a)| {
                let f = parse_sentence(a).unwrap();
                formula_to_string(&box_power(&f, k as usize))
            }),
    ];
    atom.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("(and {a} {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("(or {a} {b})")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("(-> {a} {b})")),
        ]
    })
}

/// Sentences for the falsity-ledger properties.
pub fn ledger_sentence() -> impl Strategy<Value = Formula> {
    (body_with_boxes(), 0u8..3).prop_map(|(b, q)| {
        let src = match q {
            0 => format!("(forall v {b})"),
            1 => format!("(exists v {b})"),
            _ => format!("(forall v (-> (= v v) {b}))"),
        };
        parse_sentence(&src).unwrap()
    })
}

/// `□ᵏ⁺¹⌜A⌝ → □ᵏ⌜A⌝` for a random sentence `A` and `k < 3`.
pub fn release_instance() -> impl Strategy<Value = Formula> {
    (ledger_sentence(), 0usize..3).prop_map(|(a, k)| {
        let inner = box_power(&a, k);
        Formula::imp(box_quote(&inner), inner)
    })
}

/// `B ∨ ¬B` for a sentence `B` that contains □.
pub fn boxed_excluded_middle() -> impl Strategy<Value = Formula> {
    (ledger_sentence(), 1usize..3, any::<bool>()).prop_map(|(a, k, wrap)| {
        let b = if a.contains_box() && wrap {
            a
        } else {
            Formula::and(a.clone(), box_power(&a, k))
        };
        assert!(b.contains_box());
        Formula::or(b.clone(), Formula::not(b))
    })
}
