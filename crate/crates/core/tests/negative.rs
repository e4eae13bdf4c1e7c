mod common;

use asrt_core::kernel::{check_proof, is_axiom, ProofBuilder, ProofStore, TheoryConfig};
use asrt_core::syntax::{box_quote, Formula};
use common::{boxed_excluded_middle, release_instance, sample};

fn configs() -> [TheoryConfig; 3] {
    [TheoryConfig::sbox_pa(), TheoryConfig::sbox_pa_incon(), TheoryConfig::sstar(2)]
}

#[test]
fn release_is_not_an_axiom() {
    let xs = sample(release_instance(), 100);
    for theory in configs() {
        for r in &xs {
            assert!(theory.in_language(r));
            assert_eq!(is_axiom(&theory, r), None, "{}: {r:?}", theory.name);
        }
    }
}

#[test]
fn excluded_middle_needs_a_box_free_disjunct() {
    let xs = sample(boxed_excluded_middle(), 100);
    for theory in configs() {
        for em in &xs {
            assert!(theory.in_language(em));
            assert_eq!(is_axiom(&theory, em), None, "{}: {em:?}", theory.name);
        }
    }
}

#[test]
fn a_release_line_is_rejected_by_the_checker() {
    let bot = Formula::bottom();
    let mut b = ProofBuilder::new("sbox-pa");
    let l = b.axiom(Formula::imp(box_quote(&bot), bot));
    let p = b.finish(l);
    let r = check_proof(&TheoryConfig::sbox_pa(), &p, &ProofStore::new());
    assert!(!r.accepted);
}
