mod common;

use asrt_core::diagonal::{
    diagonalize, hazard_demos, liar_schema, liar_suite, truth_teller_schema, DiagonalError,
};
use asrt_core::kernel::{check_proof, ProofStore, TheoryConfig};
use asrt_core::syntax::{box_quote, parse_formula, quote, Formula};

fn sbox() -> TheoryConfig {
    TheoryConfig::sbox_pa()
}

#[test]
fn liar_fixed_point_unfolds_to_negated_box() {
    let fp = diagonalize(&sbox(), &liar_schema()).unwrap();
    let l = &fp.sentence;
    assert!(l.is_sentence());
    assert_eq!(fp.unfolded, Formula::not(box_quote(l)));
    assert_eq!(
        *fp.forward.conclusion().unwrap(),
        Formula::imp(l.clone(), fp.unfolded.clone())
    );
    assert_eq!(
        *fp.backward.conclusion().unwrap(),
        Formula::imp(fp.unfolded.clone(), l.clone())
    );
    // the diagonal term denotes the code of the fixed point
    let v = asrt_core::syntax::eval_term(&fp.diagonal_term, None).unwrap();
    assert_eq!(quote(l).numeral_value().unwrap(), v);
}

#[test]
fn truth_teller_and_arithmetic_fixed_points() {
    let t = diagonalize(&sbox(), &truth_teller_schema()).unwrap();
    assert_eq!(t.unfolded, box_quote(&t.sentence));
    let d = parse_formula("(= x x)").unwrap();
    let a = diagonalize(&TheoryConfig::pa(), &d).unwrap();
    assert!(check_proof(&TheoryConfig::pa(), &a.backward, &ProofStore::new()).accepted);
    let closed = parse_formula("(= 0 0)").unwrap();
    assert_eq!(diagonalize(&sbox(), &closed).unwrap().sentence, closed);
}

#[test]
fn rejects_bad_templates() {
    let two = parse_formula("(= x y)").unwrap();
    assert_eq!(
        diagonalize(&sbox(), &two).unwrap_err(),
        DiagonalError::Arity(2)
    );
    assert!(matches!(
        diagonalize(&TheoryConfig::pa(), &liar_schema()),
        Err(DiagonalError::Language(_))
    ));
    assert_eq!(
        liar_suite(&TheoryConfig::pa()).unwrap_err(),
        DiagonalError::NoBox
    );
}

#[test]
fn liar_suite_proves_the_three_facts() {
    let theory = sbox();
    let s = liar_suite(&theory).unwrap();
    let l = s.liar.sentence.clone();
    let bot = Formula::bottom();
    assert_eq!(*s.not_l.conclusion().unwrap(), Formula::not(l.clone()));
    assert_eq!(
        *s.box_not_l.conclusion().unwrap(),
        box_quote(&Formula::not(l.clone()))
    );
    assert_eq!(
        *s.box_l_box_bot.conclusion().unwrap(),
        Formula::imp(box_quote(&l), box_quote(&bot))
    );
    let store = ProofStore::new();
    for (name, p) in s.proofs() {
        let r = check_proof(&theory, p, &store);
        assert!(r.accepted && !r.conditional, "{name}: {:?}", r.error);
    }
}

#[test]
fn nothing_forbidden_is_ever_a_line() {
    let theory = sbox();
    let s = liar_suite(&theory).unwrap();
    let h = hazard_demos(&theory).unwrap();
    let forbidden = s.forbidden();
    let all = s.proofs().into_iter().map(|(_, p)| p.clone()).chain([
        h.release,
        h.excluded_middle,
        s.liar.forward.clone(),
        s.liar.backward.clone(),
    ]);
    for p in all {
        assert!(p.hypotheses.is_empty());
        for line in &p.lines {
            assert!(!forbidden.contains(&line.sentence), "{:?}", line.sentence);
        }
    }
}

#[test]
fn hazards_are_derivable() {
    let theory = sbox();
    let h = hazard_demos(&theory).unwrap();
    let l = h.liar.clone();
    let bl = box_quote(&l);
    assert_eq!(
        *h.release.conclusion().unwrap(),
        Formula::not(Formula::imp(bl.clone(), l))
    );
    assert_eq!(
        *h.excluded_middle.conclusion().unwrap(),
        Formula::imp(
            Formula::or(bl.clone(), Formula::not(bl)),
            box_quote(&Formula::bottom())
        )
    );
    let store = ProofStore::new();
    assert!(check_proof(&theory, &h.release, &store).accepted);
    assert!(check_proof(&theory, &h.excluded_middle, &store).accepted);
}

#[test]
fn random_box_free_templates_have_fixed_points() {
    let theory = sbox();
    for d in common::sample(common::box_free_template(), 20) {
        let fp = diagonalize(&theory, &d).unwrap_or_else(|e| panic!("{d:?}: {e}"));
        assert!(fp.sentence.is_sentence());
        assert!(!fp.sentence.contains_box());
        let c = asrt_core::syntax::encode_formula(&fp.sentence);
        assert_eq!(asrt_core::syntax::decode_formula(&c).as_ref(), Some(&fp.sentence));
        let store = ProofStore::new();
        assert!(check_proof(&theory, &fp.forward, &store).accepted);
        assert!(check_proof(&theory, &fp.backward, &store).accepted);
    }
}
