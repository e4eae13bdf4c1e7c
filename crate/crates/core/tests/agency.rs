use std::collections::BTreeSet;

use asrt_core::agency::{
    build_sstar, delegation_chain, delegation_derivation, finite_fragment_model, licensed_actions,
    licenses, too_much_case, trust_demo, AgencyError, AgentSpec, LicensingPolicy, TrustScenario,
    ALPHA0,
};
use asrt_core::kernel::{check_proof, parse_proof, print_proof, ProofStore, TheoryConfig};
use asrt_core::syntax::{
    box_power, box_quote, encode_sentence, eval_term, formula_to_string, numeral_of,
    parse_sentence, quote, Formula, Relation, Term,
};
use num_bigint::BigUint;

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn s(text: &str) -> Formula {
    parse_sentence(text).unwrap()
}

fn cold_recheck(theory: &TheoryConfig, p: &asrt_core::kernel::ProofObject) {
    recheck_with(theory, p, &ProofStore::new())
}

fn recheck_with(theory: &TheoryConfig, p: &asrt_core::kernel::ProofObject, store: &ProofStore) {
    let again = parse_proof(&print_proof(p)).unwrap();
    assert_eq!(&again, p);
    let r = check_proof(theory, &again, store);
    assert!(r.accepted, "{:?}", r.error);
}

#[test]
fn box_rule_closes_licensing_under_boxes() {
    let a = s("(forall x (= (+ x 0) x))");
    let policy = LicensingPolicy::new().with(a.clone(), "go").unwrap();
    for k in 0..=5 {
        assert_eq!(
            licensed_actions(&policy, &box_power(&a, k)),
            set(&["go"]),
            "depth {k}"
        );
    }
    let exact = LicensingPolicy::exact().with(a.clone(), "go").unwrap();
    assert_eq!(licensed_actions(&exact, &a), set(&["go"]));
    assert!(licensed_actions(&exact, &box_quote(&a)).is_empty());
}

#[test]
fn only_boxes_are_stripped() {
    let a = s("(= 0 0)");
    let policy = LicensingPolicy::new().with(a.clone(), "go").unwrap();
    let wrapped = [
        Formula::rel(Relation::prov("sbox-pa"), vec![quote(&a)]),
        Formula::imp(box_quote(&a), a.clone()),
        Formula::imp(a.clone(), box_quote(&a)),
        Formula::and(box_quote(&a), a.clone()),
        s("(forall x (box (sub 0 x)))"),
        Formula::not(box_quote(&a)),
        box_quote(&Formula::rel(Relation::prov("sbox-pa"), vec![quote(&a)])),
    ];
    for w in wrapped {
        assert!(
            licensed_actions(&policy, &w).is_empty(),
            "{}",
            formula_to_string(&w)
        );
    }
}

#[test]
fn provability_inside_implications_licenses_nothing() {
    let (policy, proved) = too_much_case();
    assert!(licensed_actions(&policy, &proved).is_empty());
    for k in 0..=3 {
        assert!(licensed_actions(&policy, &box_power(&proved, k)).is_empty());
    }
    // the criterion itself, boxed, still licenses
    let (criterion, _) = &policy.rules()[0];
    assert_eq!(
        licensed_actions(&policy, &box_quote(criterion)),
        set(&["alpha"])
    );
}

#[test]
fn licensing_needs_a_registered_proof() {
    let theory = TheoryConfig::sbox_pa();
    let store = ProofStore::new();
    let a = s("(= 0 0)");
    let policy = LicensingPolicy::new().with(a.clone(), "go").unwrap();
    assert!(matches!(
        licenses(&policy, "sbox-pa", &a, &store),
        Err(AgencyError::Unregistered(_))
    ));
    let p = parse_proof("(proof (theory sbox-pa) (line 1 (= 0 0) axiom))").unwrap();
    store.register(&theory, p).unwrap();
    assert_eq!(
        licenses(&policy, "sbox-pa", &a, &store).unwrap(),
        set(&["go"])
    );
}

#[test]
fn policy_files_roundtrip() {
    let src = "(policy (rule (forall x (= x x)) alpha0) (rule (= 0 0) beta))";
    let p = LicensingPolicy::parse(src).unwrap();
    assert!(!p.is_exact());
    assert_eq!(p.rules().len(), 2);
    assert_eq!(LicensingPolicy::parse(&p.to_sexp()).unwrap(), p);
    let e = LicensingPolicy::parse("(policy (mode exact) (rule (= 0 0) a))").unwrap();
    assert!(e.is_exact());
    assert!(LicensingPolicy::parse("(policy (rule (= x 0) a))").is_err());
    assert!(LicensingPolicy::parse("(rules)").is_err());
}

#[test]
fn iterbox_tracks_box_powers() {
    for a in [s("(= 0 1)"), s("(forall x (= x x))"), s("(box 0)")] {
        for k in 0..=6u32 {
            let t = Term::iterbox(numeral_of(k), quote(&a));
            let v = eval_term(&t, None).unwrap();
            assert_eq!(v, encode_sentence(&box_power(&a, k as usize)), "k = {k}");
        }
    }
}

#[test]
fn finite_fragments_have_standard_models() {
    for j in 1..=10 {
        let m = finite_fragment_model(j);
        assert_eq!(m.checks.len() as u32, j - 1);
        assert!(m.validates(), "j = {j}");
        assert_eq!(m.env[&j], BigUint::from(0u32));
        assert_eq!(m.env[&1], BigUint::from(j - 1));
    }
}

#[test]
fn sstar_needs_a_constant() {
    assert_eq!(
        build_sstar(&TheoryConfig::pa(), 0),
        Err(AgencyError::NoKappas)
    );
    let t = build_sstar(&TheoryConfig::sbox_pa(), 3).unwrap();
    assert_eq!(t, TheoryConfig::sstar(3));
    let incon = build_sstar(&TheoryConfig::sbox_pa_incon(), 2).unwrap();
    assert_eq!(incon.kappas, 2);
    assert_eq!(
        incon.extra_axioms.len(),
        TheoryConfig::sbox_pa_incon().extra_axioms.len() + 1
    );
}

#[test]
fn delegation_for_two_agents() {
    let theory = TheoryConfig::sstar(2);
    let r = delegation_derivation(&theory, 1, 7).unwrap();
    let goal = AgentSpec::new(1).criterion(numeral_of(7u32));
    assert_eq!(*r.conclusion(), goal);
    assert_eq!(
        formula_to_string(r.conclusion()),
        format!(
            "(-> (act 1 7) (box (iterbox (kappa 1) {})))",
            asrt_core::syntax::term_to_string(&quote(&Formula::rel(Relation::Gamma, vec![])))
        )
    );
    assert_eq!(r.steps.len(), 5);
    assert_eq!(r.steps[4], goal);
    for step in &r.steps {
        let (lhs, _) = step.as_imp().unwrap();
        assert_eq!(*lhs, AgentSpec::new(1).act(numeral_of(7u32)));
    }
    cold_recheck(&theory, &r.conditional);
    cold_recheck(&theory, &r.discharged);
    assert!(r.discharged.hypotheses.is_empty());
    assert_eq!(r.conditional.hypotheses.len(), 3);
    // exact-match policy on the agent's criterion
    let pol = AgentSpec::new(1).policy(7, "act7");
    assert_eq!(licensed_actions(&pol, r.conclusion()), set(&["act7"]));
    assert!(licensed_actions(&pol, &box_quote(r.conclusion())).is_empty());
}

#[test]
fn delegation_chains_across_three_agents() {
    let theory = TheoryConfig::sstar(3);
    let chain = delegation_chain(&theory, 4).unwrap();
    assert_eq!(chain.len(), 2);
    for (i, r) in chain.iter().enumerate() {
        let agent = i as u32 + 1;
        assert_eq!(
            *r.conclusion(),
            AgentSpec::new(agent).criterion(numeral_of(4u32))
        );
        cold_recheck(&theory, &r.discharged);
    }
}

#[test]
fn delegation_needs_a_successor() {
    assert!(matches!(
        delegation_derivation(&TheoryConfig::sstar(1), 1, 0),
        Err(AgencyError::NoSuccessor { .. })
    ));
    assert!(matches!(
        delegation_derivation(&TheoryConfig::sstar(2), 2, 0),
        Err(AgencyError::NoSuccessor { .. })
    ));
    assert!(delegation_derivation(&TheoryConfig::sbox_pa(), 1, 0).is_err());
}

fn fixture(store: &ProofStore) -> (TheoryConfig, Formula) {
    let theory = TheoryConfig::sbox_pa();
    let p = parse_proof("(proof (theory sbox-pa) (line 1 (forall x (= x x)) axiom))").unwrap();
    let a0 = p.conclusion().unwrap().clone();
    store.register(&theory, p).unwrap();
    (theory, a0)
}

#[test]
fn naturalistic_and_reflective_trust() {
    let store = ProofStore::new();
    let (theory, a0) = fixture(&store);
    let nat = trust_demo(TrustScenario::Naturalistic, &theory, &a0, &store).unwrap();
    assert_eq!(*nat.conclusion(), box_quote(&a0));
    assert_eq!(nat.licensed, set(&[ALPHA0]));
    assert!(!nat.is_conditional());
    cold_recheck(&theory, &nat.proof);

    let refl = trust_demo(TrustScenario::Reflective, &theory, &a0, &store).unwrap();
    assert_eq!(*refl.conclusion(), box_quote(&a0));
    assert_eq!(refl.licensed, set(&[ALPHA0]));
    let prov = Formula::rel(Relation::prov("sbox-pa"), vec![quote(&a0)]);
    assert!(refl.proof.lines.iter().any(|l| l.sentence == prov));
    assert_eq!(refl.steps, vec![Formula::imp(prov, box_quote(&a0))]);
    recheck_with(&theory, &refl.proof, &store);
    assert!(!check_proof(&theory, &refl.proof, &ProofStore::new()).accepted);

    let empty = ProofStore::new();
    assert!(matches!(
        trust_demo(TrustScenario::Naturalistic, &theory, &a0, &empty),
        Err(AgencyError::MissingFixture(_))
    ));
}

#[test]
fn coherent_trust_is_conditional() {
    let store = ProofStore::new();
    let theory = TheoryConfig::sbox_pa();
    let a0 = s("(forall n (= n n))");
    let out = trust_demo(TrustScenario::Coherent, &theory, &a0, &store).unwrap();
    assert_eq!(*out.conclusion(), box_quote(&a0));
    assert!(out.is_conditional());
    assert_eq!(
        out.hypotheses,
        vec!["Soundness".to_string(), "Coherence".to_string()]
    );
    assert_eq!(out.licensed, set(&[ALPHA0]));
    assert!(!store.contains("sbox-pa", out.conclusion()));
    cold_recheck(&theory, &out.proof);
    cold_recheck(&theory, out.discharged.as_ref().unwrap());
    assert!(trust_demo(TrustScenario::Coherent, &theory, &s("(= 0 0)"), &store).is_err());
}

#[test]
fn disjunctive_trust() {
    let store = ProofStore::new();
    let (theory, a0) = fixture(&store);
    let out = trust_demo(TrustScenario::Disjunctive, &theory, &a0, &store).unwrap();
    assert_eq!(*out.conclusion(), box_quote(&a0));
    assert!(!out.is_conditional());
    assert_eq!(out.licensed, set(&[ALPHA0]));
    assert_eq!(out.steps.len(), 3);
    let d = out.discharged.as_ref().unwrap();
    let prov = Formula::rel(Relation::prov("sbox-pa"), vec![quote(&a0)]);
    assert_eq!(
        *d.conclusion().unwrap(),
        Formula::imp(Formula::or(a0.clone(), prov), box_quote(&a0))
    );
    recheck_with(&theory, &out.proof, &store);
    cold_recheck(&theory, d);
    assert!(store.contains("sbox-pa", &box_quote(&a0)));
}
