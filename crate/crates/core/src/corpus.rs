//! The regression corpus: accepted `sbox-pa` theorems with small proofs,
//! one or more per axiom family and derived rule, plus the liar suite, both
//! hazards and the trust chains.
//!
//! Entries are generated deterministically; the files under `regression/`
//! are their printed form and are compared byte for byte by the test suite.

use thiserror::Error;

use crate::agency::{too_much_case, trust_demo, LicensingPolicy, TrustScenario, ALPHA0};
use crate::diagonal::{diagonalize, hazard_demos, liar_suite, truth_teller_schema, DiagonalError};
use crate::kernel::theory::{jump_axiom, SBOX_PA};
use crate::kernel::{
    check_proof, print_proof, BuildError, Justification, Line, ProofBuilder, ProofObject,
    ProofStore, TheoryConfig,
};
use crate::reflection::{assertible_consistency_instance, reflect_theorem};
use crate::syntax::{box_quote, parse_sentence, quote, Formula, Relation, Term, Var};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("entry `{name}` rejected: {message}")]
    Rejected { name: String, message: String },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Diagonal(#[from] DiagonalError),
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub proof: ProofObject,
}

impl CorpusEntry {
    pub fn conclusion(&self) -> &Formula {
        self.proof.conclusion().expect("corpus proofs are nonempty")
    }

    /// `NN-name.sexp`, with `index` counted from 1.
    pub fn file_name(&self, index: usize) -> String {
        format!("{index:02}-{}.sexp", self.name)
    }
}

fn s(text: &str) -> Formula {
    parse_sentence(text).expect("corpus sentences are well formed")
}

fn one_line(f: Formula, j: Justification) -> ProofObject {
    let mut p = ProofObject::new(SBOX_PA);
    p.lines.push(Line {
        sentence: f,
        justification: j,
    });
    p
}

fn axiom(f: Formula) -> ProofObject {
    one_line(f, Justification::Axiom(None))
}

fn builder() -> ProofBuilder {
    ProofBuilder::new(SBOX_PA)
}

/// `(∀x)(x=x)`, the fixture the trust scenarios reason about.
pub fn trust_fixture() -> ProofObject {
    axiom(s("(forall x (= x x))"))
}

/// Box-rule policies used by the licensing closure checks. Every criterion
/// is a sentence; exact-mode policies are excluded since they do not close
/// under □ by design.
pub fn policy_fixtures() -> Vec<LicensingPolicy> {
    let fixture = trust_fixture().conclusion().expect("nonempty").clone();
    let rule = |p: LicensingPolicy, a: Formula, act: &str| p.with(a, act).expect("closed criterion");
    let (too_much, _) = too_much_case();
    vec![
        rule(LicensingPolicy::new(), fixture.clone(), ALPHA0),
        too_much,
        rule(
            rule(LicensingPolicy::new(), s("(forall x (= (+ x 0) x))"), "add"),
            s("(forall x (not (= (S x) 0)))"),
            "succ",
        ),
        rule(LicensingPolicy::new(), box_quote(&fixture), "boxed"),
        rule(
            LicensingPolicy::new(),
            Formula::rel(Relation::prov(SBOX_PA), vec![quote(&fixture)]),
            "prov",
        ),
        rule(
            rule(LicensingPolicy::new(), s("(or (= 0 1) (= 1 1))"), "or"),
            s("(or (= 0 1) (= 1 1))"),
            "or-again",
        ),
    ]
}

/// Build, check and return the corpus. Entry names are unique.
pub fn regression_corpus() -> Result<Vec<CorpusEntry>, CorpusError> {
    let theory = TheoryConfig::sbox_pa();
    let mut out: Vec<(String, ProofObject)> = Vec::new();
    let mut add = |name: &str, p: ProofObject| out.push((name.to_owned(), p));

    // arithmetic and equality axioms
    add("add-zero", axiom(s("(forall x (= (+ x 0) x))")));
    add("add-succ", axiom(s("(forall x (forall y (= (+ x (S y)) (S (+ x y)))))")));
    add("mul-zero", axiom(s("(forall x (= (* x 0) 0))")));
    add("mul-succ", axiom(s("(forall x (forall y (= (* x (S y)) (+ (* x y) x))))")));
    add("succ-nonzero", axiom(s("(forall x (not (= (S x) 0)))")));
    add("succ-injective", axiom(s("(forall x (forall y (-> (= (S x) (S y)) (= x y))))")));
    add("eq-refl", trust_fixture());
    add("eq-sym", axiom(s("(forall x (forall y (-> (= x y) (= y x))))")));
    add("eq-trans", axiom(s("(forall x (forall y (forall z (-> (= x y) (-> (= y z) (= x z))))))")));
    add("leibniz", axiom(s("(forall x (forall y (-> (= x y) (-> (= (S x) 0) (= (S y) 0)))))")));
    add("ex-falso", axiom(s("(-> bot (= 1 2))")));
    add("k", axiom(s("(forall x (-> (= x x) (-> (= 0 0) (= x x))))")));
    add(
        "induction",
        axiom(s("(-> (= (+ 0 0) 0) (-> (forall x (-> (= (+ 0 x) x) (= (+ 0 (S x)) (S x)))) (forall x (= (+ 0 x) x))))")),
    );

    // computations
    add("sum", one_line(s("(= (+ 2 3) 5)"), Justification::Computation));
    add("product", one_line(s("(= (* 7 6) 42)"), Justification::Computation));
    let open = crate::syntax::parse_formula("(= x x)").expect("well formed");
    add(
        "substitution",
        one_line(
            Formula::eq(Term::sub(quote(&open), Term::numeral(3u32)), quote(&s("(= 3 3)"))),
            Justification::Computation,
        ),
    );
    add(
        "iterbox-value",
        one_line(
            Formula::eq(
                Term::iterbox(Term::numeral(2u32), quote(&s("(= 0 1)"))),
                quote(&crate::syntax::box_power(&s("(= 0 1)"), 2)),
            ),
            Justification::Computation,
        ),
    );

    // box axioms
    let a = s("(= 0 0)");
    let b = s("(forall x (= x x))");
    add("capture-closed", axiom(Formula::imp(a.clone(), box_quote(&a))));
    add(
        "capture-open",
        axiom(Formula::forall(
            Var::new("x"),
            Formula::imp(open.clone(), Formula::Box(Term::sub(quote(&open), Term::Var(Var::new("x"))))),
        )),
    );
    add(
        "box-and-in",
        axiom(Formula::imp(
            Formula::and(box_quote(&a), box_quote(&b)),
            box_quote(&Formula::and(a.clone(), b.clone())),
        )),
    );
    add(
        "box-and-out",
        axiom(Formula::imp(
            box_quote(&Formula::and(a.clone(), b.clone())),
            Formula::and(box_quote(&a), box_quote(&b)),
        )),
    );
    add(
        "box-or-in",
        axiom(Formula::imp(
            Formula::or(box_quote(&a), box_quote(&b)),
            box_quote(&Formula::or(a.clone(), b.clone())),
        )),
    );
    add(
        "box-imp",
        axiom(Formula::imp(
            box_quote(&Formula::imp(a.clone(), b.clone())),
            Formula::imp(box_quote(&a), box_quote(&b)),
        )),
    );
    add(
        "box-forall-out",
        axiom(Formula::imp(
            box_quote(&b),
            Formula::forall(Var::new("x"), Formula::Box(Term::sub(quote(&open), Term::Var(Var::new("x"))))),
        )),
    );
    add(
        "box-forall-in",
        axiom(Formula::imp(
            Formula::forall(Var::new("x"), Formula::Box(Term::sub(quote(&open), Term::Var(Var::new("x"))))),
            box_quote(&b),
        )),
    );
    let zero_eq = crate::syntax::parse_formula("(= x 0)").expect("well formed");
    add(
        "box-exists",
        axiom(Formula::imp(
            Formula::exists(Var::new("x"), Formula::Box(Term::sub(quote(&zero_eq), Term::Var(Var::new("x"))))),
            box_quote(&Formula::exists(Var::new("x"), zero_eq.clone())),
        )),
    );
    add("jump", axiom(jump_axiom(SBOX_PA)));
    let g = quote(&s("(= 0 1)"));
    add("iterbox-zero", axiom(Formula::eq(Term::iterbox(Term::Zero, g.clone()), g)));

    // derived rules
    {
        let mut bl = builder();
        let st = bl.imp_refl(&[], &Formula::bottom())?;
        add("not-bot", bl.finish(st));
    }
    {
        let mut bl = builder();
        let st = bl.imp_refl(&[Var::new("x")], &zero_eq)?;
        add("imp-refl-open", bl.finish(st));
    }
    {
        let mut bl = builder();
        let maj = bl.axiom(s("(forall n (-> (= n n) (or (= n n) (= 0 1))))"));
        let min = bl.axiom(s("(forall n (= n n))"));
        let st = bl.mp(maj, min)?;
        add("quantified-mp", bl.finish(st));
    }
    {
        let mut bl = builder();
        let c = bl.computation(s("(= (+ 2 3) 5)"));
        let st = bl.eq_sym(&[], c)?;
        add("eq-sym-derived", bl.finish(st));
    }
    {
        let mut bl = builder();
        let c1 = bl.computation(s("(= (+ 2 3) 5)"));
        let c2 = bl.computation(s("(= 5 (S 4))"));
        let st = bl.eq_trans(&[], c1, c2)?;
        add("eq-trans-derived", bl.finish(st));
    }
    {
        let mut bl = builder();
        let all = bl.axiom(s("(forall x (= (+ x 0) x))"));
        let st = bl.forall_elim(&[], all, &Term::numeral(5u32))?;
        add("instantiate", bl.finish(st));
    }
    {
        let mut bl = builder();
        let l = bl.axiom(a.clone());
        let r = bl.axiom(b.clone());
        let st = bl.and_intro(&[], l, r)?;
        add("conjunction", bl.finish(st));
    }
    {
        let mut bl = builder();
        let id = bl.imp_refl(&[], &a)?;
        let st = bl.or_elim(&[], id, id)?;
        add("or-idempotent", bl.finish(st));
    }
    {
        let mut bl = builder();
        let c = bl.axiom(s("(= 0 0)"));
        let intro = bl.axiom(s("(-> (= 0 0) (exists x (= x 0)))"));
        let st = bl.mp(intro, c)?;
        add("witness", bl.finish(st));
    }
    {
        let mut bl = builder();
        let ab = bl.axiom(s("(-> (= 0 0) (or (= 0 0) (= 0 1)))"));
        let bc = bl.axiom(s("(-> (or (= 0 0) (= 0 1)) (or (= 0 1) (or (= 0 0) (= 0 1))))"));
        let st = bl.syll(&[], ab, bc)?;
        add("syllogism", bl.finish(st));
    }
    {
        let mut bl = builder();
        let c = bl.computation(s("(= (+ 2 3) 5)"));
        let st = bl.weaken(&[], c, &s("(= 0 1)"))?;
        add("weaken", bl.finish(st));
    }
    {
        let mut bl = builder();
        let eq = bl.computation(s("(= 5 (+ 2 3))"));
        let inst = bl.axiom(s("(-> (forall x (not (= (S x) 0))) (not (= (S 5) 0)))"));
        let all = bl.axiom(s("(forall x (not (= (S x) 0)))"));
        let p = bl.mp(inst, all)?;
        let st = bl.rewrite(&[], eq, p, s("(not (= (S (+ 2 3)) 0))"))?;
        add("rewrite", bl.finish(st));
    }
    {
        let mut bl = builder();
        let f = bl.axiom(b.clone());
        let cap = bl.axiom(Formula::imp(b.clone(), box_quote(&b)));
        let st = bl.mp(cap, f)?;
        add("capture-mp", bl.finish(st));
    }
    {
        let mut bl = builder();
        let f = bl.axiom(a.clone());
        let cap = bl.axiom(Formula::imp(a.clone(), box_quote(&a)));
        let b1 = bl.mp(cap, f)?;
        let cap2 = bl.axiom(Formula::imp(box_quote(&a), box_quote(&box_quote(&a))));
        let st = bl.mp(cap2, b1)?;
        add("double-box", bl.finish(st));
    }
    {
        let mut bl = builder();
        let ax = bl.computation(Formula::rel(Relation::ax(SBOX_PA), vec![quote(&b)]));
        let jump = bl.axiom(jump_axiom(SBOX_PA));
        let inst = bl.forall_elim(&[], jump, &quote(&b))?;
        let st = bl.mp(inst, ax)?;
        add("jump-instance", bl.finish(st));
    }
    {
        let mut bl = builder();
        let lhs = Formula::and(box_quote(&a), box_quote(&b));
        let id = bl.imp_refl(&[], &lhs)?;
        let join = bl.axiom(Formula::imp(lhs, box_quote(&Formula::and(a.clone(), b.clone()))));
        let st = bl.syll(&[], id, join)?;
        add("box-join", bl.finish(st));
    }

    // reflection of small theorems
    let store = ProofStore::new();
    for (name, src) in [
        ("reflect-axiom", trust_fixture()),
        ("reflect-computation", one_line(s("(= (* 7 6) 42)"), Justification::Computation)),
    ] {
        let t = reflect_theorem(&theory, &src, &store).map_err(|e| CorpusError::Other(e.to_string()))?;
        add(name, t.output);
    }
    for g in [0u32, 7] {
        let p = assertible_consistency_instance(&theory, &g.into(), &store)
            .map_err(|e| CorpusError::Other(e.to_string()))?;
        add(&format!("consistency-{g}"), p);
    }

    // fixed points, the liar suite, hazards
    let tt = diagonalize(&theory, &truth_teller_schema())?;
    add("truth-teller-forward", tt.forward);
    add("truth-teller-backward", tt.backward);
    let suite = liar_suite(&theory)?;
    for (name, p) in suite.proofs() {
        add(&format!("liar-{name}"), p.clone());
    }
    let h = hazard_demos(&theory)?;
    add("hazard-release", h.release);
    add("hazard-excluded-middle", h.excluded_middle);

    // trust chains that hold unconditionally
    let trust_store = ProofStore::new();
    trust_store
        .register(&theory, trust_fixture())
        .map_err(|e| CorpusError::Other(e.to_string()))?;
    let fx = trust_fixture().conclusion().expect("nonempty").clone();
    let coherent = trust_demo(TrustScenario::Coherent, &theory, &fx, &trust_store)
        .map_err(|e| CorpusError::Other(e.to_string()))?;
    add("trust-coherent", coherent.discharged.expect("coherent trust discharges"));
    let disj = trust_demo(TrustScenario::Disjunctive, &theory, &fx, &trust_store)
        .map_err(|e| CorpusError::Other(e.to_string()))?;
    add("trust-disjunctive", disj.discharged.expect("disjunctive trust has a chain"));

    let empty = ProofStore::new();
    let mut entries = Vec::with_capacity(out.len());
    for (name, proof) in out {
        let r = check_proof(&theory, &proof, &empty);
        if let Some(e) = r.error {
            return Err(CorpusError::Rejected {
                name,
                message: e.to_string(),
            });
        }
        if entries.iter().any(|e: &CorpusEntry| e.name == name) {
            return Err(CorpusError::Other(format!("duplicate entry `{name}`")));
        }
        entries.push(CorpusEntry { name, proof });
    }
    Ok(entries)
}

/// `(file name, printed proof)` for every entry, in corpus order.
pub fn render(entries: &[CorpusEntry]) -> Vec<(String, String)> {
    entries
        .iter()
        .enumerate()
        .map(|(i, e)| (e.file_name(i + 1), print_proof(&e.proof)))
        .collect()
}
