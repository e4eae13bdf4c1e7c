//! Licensing actions by proved sentences, the four trust scenarios, the
//! κ-graded theory and the derivation that licenses one agent to activate
//! its successor.
//!
//! A policy maps criterion sentences to opaque action ids. Under the Box
//! rule a proved sentence licenses every action whose criterion is reached
//! by stripping zero or more leading quoted boxes; nothing else is ever
//! stripped, in particular not `Prov`. Agent criteria
//! `Act_Mi(n) → □(iterbox(κᵢ, ⌜Γ⌝))` do not respect the Box rule, so
//! policies built from them match exactly.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::kernel::theory::{con, kappa_axiom, PA};
use crate::kernel::{
    check_proof, discharge_all, BuildError, Justification, Line, ProofBuilder, ProofObject,
    ProofStore, TheoryConfig,
};
use crate::reflection::{reflect_theorem, ReflectError};
use crate::syntax::sexp::{read_all, Sexp};
use crate::syntax::{
    box_quote, eval_term, formula_to_string, numeral_of, parse, quote, strip_box, Formula,
    KappaEnv, Relation, Term, Var,
};

/// The action licensed by the trust scenarios' criterion.
pub const ALPHA0: &str = "alpha0";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgencyError {
    #[error("`{0}` has no registered proof")]
    Unregistered(String),
    #[error("missing fixture: {0}")]
    MissingFixture(String),
    #[error("agent {agent} has no successor among {kappas} κ constants")]
    NoSuccessor { agent: u32, kappas: u32 },
    #[error("the κ-graded theory needs at least one constant")]
    NoKappas,
    #[error("policy: {0}")]
    Policy(String),
    #[error("derivation rejected: {0}")]
    Rejected(String),
    #[error(transparent)]
    Reflect(#[from] ReflectError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

// ---- policies ----

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LicensingPolicy {
    rules: Vec<(Formula, String)>,
    exact: bool,
}

impl LicensingPolicy {
    /// An empty policy obeying the Box rule.
    pub fn new() -> Self {
        LicensingPolicy::default()
    }

    /// An empty policy whose criteria match exactly.
    pub fn exact() -> Self {
        LicensingPolicy {
            rules: Vec::new(),
            exact: true,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn rules(&self) -> &[(Formula, String)] {
        &self.rules
    }

    /// Add `criterion ↦ action`. Criteria must be sentences; repeating a pair
    /// is a no-op.
    pub fn add(&mut self, criterion: Formula, action: &str) -> Result<(), AgencyError> {
        if !criterion.is_sentence() {
            return Err(AgencyError::Policy(format!(
                "criterion `{}` is not a sentence",
                formula_to_string(&criterion)
            )));
        }
        if !self
            .rules
            .iter()
            .any(|(c, a)| *c == criterion && a == action)
        {
            self.rules.push((criterion, action.to_owned()));
        }
        Ok(())
    }

    pub fn with(mut self, criterion: Formula, action: &str) -> Result<Self, AgencyError> {
        self.add(criterion, action)?;
        Ok(self)
    }

    /// Parse `(policy [(mode exact)] (rule SENTENCE ACTION)*)`.
    pub fn parse(src: &str) -> Result<Self, AgencyError> {
        let perr = |s: &Sexp, m: &str| {
            let p = s.pos();
            AgencyError::Policy(format!("{}:{}: {m}", p.line, p.col))
        };
        let all = read_all(src).map_err(|e| AgencyError::Policy(e.to_string()))?;
        let [top] = all.as_slice() else {
            return Err(AgencyError::Policy(
                "expected exactly one (policy ...) form".into(),
            ));
        };
        let Some(("policy", items)) = top.head() else {
            return Err(perr(top, "expected (policy ...)"));
        };
        let mut policy = LicensingPolicy::new();
        for item in items {
            match item.head() {
                Some(("mode", [m])) => match m.atom() {
                    Some("exact") => policy.exact = true,
                    Some("box-rule") => policy.exact = false,
                    _ => return Err(perr(m, "mode is `exact` or `box-rule`")),
                },
                Some(("rule", [s, a])) => {
                    let f = parse::formula(s).map_err(|e| AgencyError::Policy(e.to_string()))?;
                    let a = a.atom().ok_or_else(|| perr(a, "expected an action id"))?;
                    policy.add(f, a)?;
                }
                _ => return Err(perr(item, "expected (rule SENTENCE ACTION) or (mode ...)")),
            }
        }
        Ok(policy)
    }

    pub fn to_sexp(&self) -> String {
        let mut out = String::from("(policy");
        if self.exact {
            out.push_str("\n  (mode exact)");
        }
        for (c, a) in &self.rules {
            out.push_str(&format!("\n  (rule {} {a})", formula_to_string(c)));
        }
        out.push(')');
        out
    }
}

/// Actions licensed by `proved` under `policy`, ignoring whether `proved`
/// actually has a proof.
pub fn licensed_actions(policy: &LicensingPolicy, proved: &Formula) -> BTreeSet<String> {
    let mut forms = vec![proved.clone()];
    if !policy.exact {
        while let Some(inner) = strip_box(forms.last().expect("nonempty")) {
            forms.push(inner);
        }
    }
    policy
        .rules
        .iter()
        .filter(|(c, _)| forms.contains(c))
        .map(|(_, a)| a.clone())
        .collect()
}

/// Actions licensed by `proved`, which must have a registered proof in
/// `theory`.
pub fn licenses(
    policy: &LicensingPolicy,
    theory: &str,
    proved: &Formula,
    store: &ProofStore,
) -> Result<BTreeSet<String>, AgencyError> {
    if !store.contains(theory, proved) {
        return Err(AgencyError::Unregistered(formula_to_string(proved)));
    }
    Ok(licensed_actions(policy, proved))
}

/// The policy `{(Con(PA) → 0=1) ↦ alpha}` and the sentence
/// `Prov⌜Con(PA)⌝ → Prov⌜0=1⌝`, which must license nothing: the Box rule
/// strips boxes, and there is no way to turn provability into a box inside
/// an implication.
pub fn too_much_case() -> (LicensingPolicy, Formula) {
    let criterion = Formula::imp(con(PA), Formula::bottom());
    let policy = LicensingPolicy::new()
        .with(criterion, "alpha")
        .expect("closed");
    let proved = Formula::imp(prov_of(PA, &con(PA)), prov_of(PA, &Formula::bottom()));
    (policy, proved)
}

// ---- trust scenarios ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrustScenario {
    Naturalistic,
    Reflective,
    Coherent,
    Disjunctive,
}

impl TrustScenario {
    pub const ALL: [TrustScenario; 4] = [
        TrustScenario::Naturalistic,
        TrustScenario::Reflective,
        TrustScenario::Coherent,
        TrustScenario::Disjunctive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TrustScenario::Naturalistic => "naturalistic",
            TrustScenario::Reflective => "reflective",
            TrustScenario::Coherent => "coherent",
            TrustScenario::Disjunctive => "disjunctive",
        }
    }
}

impl fmt::Display for TrustScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrustScenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TrustScenario::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown trust scenario `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct TrustOutcome {
    pub scenario: TrustScenario,
    /// Ends in the sentence that carries the license; conditional when
    /// `hypotheses` is nonempty.
    pub proof: ProofObject,
    /// All hypotheses discharged, when there were any.
    pub discharged: Option<ProofObject>,
    pub hypotheses: Vec<String>,
    /// The intermediate sentences of the scenario's displayed chain.
    pub steps: Vec<Formula>,
    pub licensed: BTreeSet<String>,
}

impl TrustOutcome {
    pub fn conclusion(&self) -> &Formula {
        self.proof.conclusion().expect("demo proofs are nonempty")
    }

    pub fn is_conditional(&self) -> bool {
        !self.hypotheses.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "scenario": self.scenario,
            "hypotheses": self.hypotheses,
            "conclusion": formula_to_string(self.conclusion()),
            "conditional": self.is_conditional(),
            "lines": self.proof.lines.len(),
            "licensed": self.licensed,
        })
    }
}

/// `(∀g)(Prov_T(g) → □(g))`.
pub fn soundness_sentence(theory: &str) -> Formula {
    let g = Var::new("g");
    Formula::forall(
        g.clone(),
        Formula::imp(
            Formula::rel(Relation::prov(theory), vec![Term::Var(g.clone())]),
            Formula::Box(Term::Var(g)),
        ),
    )
}

fn prov_of(theory: &str, a: &Formula) -> Formula {
    Formula::rel(Relation::prov(theory), vec![quote(a)])
}

fn ensure(theory: &TheoryConfig, p: &ProofObject, store: &ProofStore) -> Result<(), AgencyError> {
    match check_proof(theory, p, store).error {
        None => Ok(()),
        Some(e) => Err(AgencyError::Rejected(e.to_string())),
    }
}

/// Run one trust scenario for the criterion `a0 ↦ alpha0`.
///
/// Naturalistic, reflective and disjunctive trust need a registered proof
/// of `a0` in `store`; coherent trust needs `a0` of the form `(∀n)A(n)`.
/// Unconditional outputs are registered in `store`.
pub fn trust_demo(
    scenario: TrustScenario,
    theory: &TheoryConfig,
    a0: &Formula,
    store: &ProofStore,
) -> Result<TrustOutcome, AgencyError> {
    let policy = LicensingPolicy::new().with(a0.clone(), ALPHA0)?;
    let registered = || {
        store.get(&theory.name, a0).ok_or_else(|| {
            AgencyError::MissingFixture(format!("no proof of {}", formula_to_string(a0)))
        })
    };
    let finish = |proof: ProofObject, discharged, hypotheses: Vec<String>, steps| {
        ensure(theory, &proof, store)?;
        let licensed = if hypotheses.is_empty() {
            store
                .register(theory, proof.clone())
                .map_err(|e| AgencyError::Rejected(e.to_string()))?;
            licenses(
                &policy,
                &theory.name,
                proof.conclusion().expect("nonempty"),
                store,
            )?
        } else {
            licensed_actions(&policy, proof.conclusion().expect("nonempty"))
        };
        Ok(TrustOutcome {
            scenario,
            proof,
            discharged,
            hypotheses,
            steps,
            licensed,
        })
    };
    match scenario {
        // the proof the assistant found, turned into one of □⌜A₀⌝
        TrustScenario::Naturalistic => {
            let trace = reflect_theorem(theory, &registered()?, store)?;
            finish(trace.output, None, Vec::new(), Vec::new())
        }
        // knowing Prov⌜A₀⌝ suffices: Prov⌜A₀⌝ → □⌜A₀⌝ and then □⌜A₀⌝
        TrustScenario::Reflective => {
            let trace = reflect_theorem(theory, &registered()?, store)?;
            let prov = prov_of(&theory.name, a0);
            let mut b = ProofBuilder::new(&theory.name);
            let boxed = b.import(&trace.output)?;
            let bridge = b.weaken(&[], boxed, &prov)?;
            let bridge_f = b.formula(bridge).clone();
            let mut proof = b.finish(bridge);
            // keep the Prov line: it is what the agent actually knows
            let major = proof.lines.len() - 1;
            let known = push(&mut proof, prov, Justification::Computation);
            push(
                &mut proof,
                box_quote(a0),
                Justification::Mp {
                    major,
                    minor: known,
                },
            );
            finish(proof, None, Vec::new(), vec![bridge_f])
        }
        TrustScenario::Coherent => coherent(theory, a0).and_then(|(p, d, steps)| {
            finish(
                p,
                Some(d),
                vec!["Soundness".into(), "Coherence".into()],
                steps,
            )
        }),
        TrustScenario::Disjunctive => {
            let (chain, steps) = disjunctive(theory, a0, &registered()?, store)?;
            // the agent knows the disjunction through its right side
            let prov = prov_of(&theory.name, a0);
            let mut proof = chain.clone();
            let imp = proof.lines.len() - 1;
            let known = push(&mut proof, prov.clone(), Justification::Computation);
            let intro = push(
                &mut proof,
                Formula::imp(prov.clone(), Formula::or(a0.clone(), prov)),
                Justification::Axiom(None),
            );
            let d = push(
                &mut proof,
                Formula::or(a0.clone(), prov_of(&theory.name, a0)),
                Justification::Mp {
                    major: intro,
                    minor: known,
                },
            );
            push(
                &mut proof,
                box_quote(a0),
                Justification::Mp {
                    major: imp,
                    minor: d,
                },
            );
            finish(proof, Some(chain), Vec::new(), steps)
        }
    }
}

/// Append a line without the builder's deduplication, which would
/// otherwise resolve a conclusion to an earlier equal line and prune the
/// premises that matter here.
fn push(p: &mut ProofObject, sentence: Formula, justification: Justification) -> usize {
    p.lines.push(Line {
        sentence,
        justification,
    });
    p.lines.len() - 1
}

/// From `Soundness` and `(∀n)Prov⌜A(n̄)⌝` derive `□⌜(∀n)A(n)⌝`: instantiate
/// soundness at `sub(⌜A(n)⌝, n)` under the prefix `n`, apply it, fold.
fn coherent(
    theory: &TheoryConfig,
    a0: &Formula,
) -> Result<(ProofObject, ProofObject, Vec<Formula>), AgencyError> {
    let Formula::Forall(n, body) = a0 else {
        return Err(AgencyError::MissingFixture(
            "coherent trust needs a criterion (∀n)A(n)".into(),
        ));
    };
    if body.free_vars().len() != 1 {
        return Err(AgencyError::MissingFixture(
            "coherent trust needs A(n) with exactly one free variable".into(),
        ));
    }
    let p = [n.clone()];
    let inst = Term::sub(quote(body), Term::Var(n.clone()));
    let prov = Formula::rel(Relation::prov(&theory.name), vec![inst.clone()]);
    let hyp = Formula::forall(n.clone(), prov);
    let each_box = Formula::forall(n.clone(), Formula::Box(inst.clone()));

    let mut b = ProofBuilder::new(&theory.name);
    let sound = b.hyp("Soundness", soundness_sentence(&theory.name))?;
    let coh = b.hyp("Coherence", hyp.clone())?;
    let lifted = b.lift(&p, sound)?;
    let bridge = b.forall_elim(&p, lifted, &inst)?;
    let boxes = b.mp(bridge, coh)?;
    let fold = b.axiom(Formula::imp(each_box.clone(), box_quote(a0)));
    let goal = b.mp(fold, boxes)?;
    let cond = b.finish(goal);
    let discharged = discharge_all(&cond, &["Soundness", "Coherence"])?;
    ensure(theory, &discharged, &ProofStore::new())?;
    Ok((cond, discharged, vec![hyp, each_box, box_quote(a0)]))
}

/// The theorem `(A ∨ Prov⌜A⌝) → □⌜A⌝`, through `(A ∨ □⌜A⌝)` and
/// `(□⌜A⌝ ∨ □⌜A⌝)`. The bridge `Prov⌜A⌝ → □⌜A⌝` is the reflection of the
/// registered proof of `A`, weakened.
fn disjunctive(
    theory: &TheoryConfig,
    a0: &Formula,
    source: &ProofObject,
    store: &ProofStore,
) -> Result<(ProofObject, Vec<Formula>), AgencyError> {
    let prov = prov_of(&theory.name, a0);
    let bx = box_quote(a0);
    let a_or_box = Formula::or(a0.clone(), bx.clone());
    let box_or_box = Formula::or(bx.clone(), bx.clone());
    let trace = reflect_theorem(theory, source, store)?;

    let mut b = ProofBuilder::new(&theory.name);
    let boxed = b.import(&trace.output)?;
    let bridge = b.weaken(&[], boxed, &prov)?;

    let keep_a = b.axiom(Formula::imp(a0.clone(), a_or_box.clone()));
    let box_right = b.axiom(Formula::imp(bx.clone(), a_or_box));
    let prov_right = b.syll(&[], bridge, box_right)?;
    let s1 = b.or_elim(&[], keep_a, prov_right)?;

    let capture = b.axiom(Formula::imp(a0.clone(), bx.clone()));
    let box_left = b.axiom(Formula::imp(bx.clone(), box_or_box));
    let a_left = b.syll(&[], capture, box_left)?;
    let s2 = b.or_elim(&[], a_left, box_left)?;

    let id = b.imp_refl(&[], &bx)?;
    let s3 = b.or_elim(&[], id, id)?;

    let steps = vec![
        b.formula(s1).clone(),
        b.formula(s2).clone(),
        b.formula(s3).clone(),
    ];
    let s12 = b.syll(&[], s1, s2)?;
    let chain = b.syll(&[], s12, s3)?;
    let proof = b.finish(chain);
    ensure(theory, &proof, store)?;
    Ok((proof, steps))
}

// ---- the κ-graded theory ----

/// The goal Γ.
pub fn gamma() -> Formula {
    Formula::rel(Relation::Gamma, vec![])
}

/// Agent `Mᵢ`, licensed at level κᵢ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AgentSpec {
    pub index: u32,
}

impl AgentSpec {
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "agents are numbered from 1");
        AgentSpec { index }
    }

    /// `Act_Mi(t)`.
    pub fn act(&self, t: Term) -> Formula {
        Formula::rel(Relation::Act(self.index), vec![t])
    }

    /// `iterbox(κᵢ, ⌜Γ⌝)`.
    pub fn level(&self) -> Term {
        Term::iterbox(Term::Kappa(self.index), quote(&gamma()))
    }

    /// `Act_Mi(t) → □(iterbox(κᵢ, ⌜Γ⌝))`.
    pub fn criterion(&self, t: Term) -> Formula {
        Formula::imp(self.act(t), Formula::Box(self.level()))
    }

    /// The exact-match policy licensing action `n` by the criterion.
    pub fn policy(&self, n: u64, action: &str) -> LicensingPolicy {
        LicensingPolicy::exact()
            .with(self.criterion(numeral_of(n)), action)
            .expect("criteria are sentences")
    }
}

/// The κ-graded extension of `base` with κ₁..κ_j and `κᵢ = κᵢ₊₁ + 1` for
/// `i < j`, agents and Γ admitted.
pub fn build_sstar(base: &TheoryConfig, j: u32) -> Result<TheoryConfig, AgencyError> {
    if j == 0 {
        return Err(AgencyError::NoKappas);
    }
    let standard = TheoryConfig::sstar(j);
    let plain_base = base.extra_axioms.is_empty()
        && (*base.name == *crate::kernel::theory::PA
            || *base.name == *crate::kernel::theory::SBOX_PA);
    if plain_base {
        return Ok(standard);
    }
    let mut extra = base.extra_axioms.clone();
    extra.extend((1..j).map(kappa_axiom));
    Ok(TheoryConfig {
        name: format!("{}-star-j{j}", base.name).as_str().into(),
        extra_axioms: extra,
        ..standard
    })
}

/// An assignment of standard values to κ₁..κ_j and whether it validates
/// each κ axiom.
#[derive(Clone, Debug)]
pub struct FragmentModel {
    pub env: KappaEnv,
    pub checks: Vec<(Formula, bool)>,
}

impl FragmentModel {
    pub fn validates(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// The finite fragment with κ₁..κ_j is satisfied by `κᵢ ↦ j − i`.
pub fn finite_fragment_model(j: u32) -> FragmentModel {
    let env: KappaEnv = (1..=j).map(|i| (i, BigUint::from(j - i))).collect();
    let checks = (1..j)
        .map(|i| {
            let ax = kappa_axiom(i);
            let ok = match &ax {
                Formula::Eq(l, r) => match (eval_term(l, Some(&env)), eval_term(r, Some(&env))) {
                    (Ok(a), Ok(b)) => a == b,
                    _ => false,
                },
                _ => false,
            };
            (ax, ok)
        })
        .collect();
    FragmentModel { env, checks }
}

// ---- delegation ----

pub const DISPLAY1: &str = "Display1";
pub const DISPLAY2: &str = "Display2";
pub const SOUNDNESS: &str = "Soundness";

#[derive(Clone, Debug)]
pub struct DelegationResult {
    pub agent: u32,
    pub n0: u64,
    pub hypotheses: Vec<(String, Formula)>,
    /// The five displayed stages, each of the form `Act(n̄₀) → ...`.
    pub steps: Vec<Formula>,
    /// Ends exactly in `Act_Mi(n̄₀) → □(iterbox(κᵢ, ⌜Γ⌝))`.
    pub conditional: ProofObject,
    /// `Soundness → (Display1 → (Display2 → ...))`.
    pub discharged: ProofObject,
}

impl DelegationResult {
    pub fn conclusion(&self) -> &Formula {
        self.conditional.conclusion().expect("nonempty")
    }
}

/// Derive that agent `Mᵢ` (`i = agent`) may take action `n₀`, activating
/// `Mᵢ₊₁`, from `Mᵢ₊₁`'s acting condition (display 1), the fact that
/// `Mᵢ₊₁` will act (display 2) and the soundness sentence.
pub fn delegation_derivation(
    theory: &TheoryConfig,
    agent: u32,
    n0: u64,
) -> Result<DelegationResult, AgencyError> {
    if agent == 0 || agent >= theory.kappas || !theory.agents {
        return Err(AgencyError::NoSuccessor {
            agent,
            kappas: theory.kappas,
        });
    }
    if !theory.extra_axioms.contains(&kappa_axiom(agent)) {
        return Err(AgencyError::MissingFixture(format!(
            "κ axiom {}",
            formula_to_string(&kappa_axiom(agent))
        )));
    }
    let (me, next) = (AgentSpec::new(agent), AgentSpec::new(agent + 1));
    let n = Var::new("n");
    let x = Var::new("x");
    let p = [n.clone()];
    let vn = Term::Var(n.clone());
    let g = quote(&gamma());
    let k_next = next.level();
    let b_next = Formula::Box(k_next.clone());
    let prov = |t: Term| Formula::rel(Relation::prov(&theory.name), vec![t]);
    let exists = |f: Formula| Formula::exists(n.clone(), f);
    let under = |f: Formula| crate::kernel::all(&p, f);

    let act_next = next.act(vn.clone());
    let crit_next = next.criterion(vn.clone());
    let q = Term::sub(quote(&crit_next), vn.clone());
    let act_now = me.act(numeral_of(n0));
    let h1 = Formula::forall(n.clone(), Formula::imp(act_next.clone(), prov(q.clone())));
    let h2 = Formula::imp(act_now.clone(), exists(act_next.clone()));
    let sound = soundness_sentence(&theory.name);

    let mut b = ProofBuilder::new(&theory.name);
    let s1 = b.hyp(DISPLAY1, h1.clone())?;
    let s2 = b.hyp(DISPLAY2, h2.clone())?;
    let ss = b.hyp(SOUNDNESS, sound.clone())?;

    // Act(n̄₀) → (∃n)[Act'(n) ∧ Prov⌜Act'(n̄) → □^κ'⌜Γ⌝⌝]
    let w = Formula::and(act_next.clone(), prov(q.clone()));
    let refl = b.imp_refl(&p, &act_next)?;
    let paired = b.pair(&p, refl, s1)?;
    let intro = b.axiom(under(Formula::imp(w.clone(), exists(w.clone()))));
    let to_ex = b.syll(&p, paired, intro)?;
    let ex = b.exists_elim(&[], to_ex)?;
    let d1 = b.syll(&[], s2, ex)?;

    // soundness at sub(⌜Act'(n) → ...⌝, n): Prov becomes □
    let w2 = Formula::and(act_next.clone(), Formula::Box(q.clone()));
    let lifted = b.lift(&p, ss)?;
    let bridge = b.forall_elim(&p, lifted, &q)?;
    let left = b.axiom(under(Formula::imp(w.clone(), act_next.clone())));
    let right = b.axiom(under(Formula::imp(w.clone(), prov(q.clone()))));
    let right = b.syll(&p, right, bridge)?;
    let ww = b.pair(&p, left, right)?;
    let intro = b.axiom(under(Formula::imp(w2.clone(), exists(w2.clone()))));
    let to_ex = b.syll(&p, ww, intro)?;
    let ex = b.exists_elim(&[], to_ex)?;
    let d2 = b.syll(&[], d1, ex)?;

    // capture Act'(n), join the boxes, move □ outside ∃
    let phi = Formula::and(act_next.clone(), crit_next.clone());
    let r = Term::sub(quote(&phi), vn.clone());
    let box_act = Formula::Box(Term::sub(quote(&act_next), vn.clone()));
    let cap = b.axiom(under(Formula::imp(act_next.clone(), box_act.clone())));
    let left = b.axiom(under(Formula::imp(w2.clone(), act_next.clone())));
    let left = b.syll(&p, left, cap)?;
    let right = b.axiom(under(Formula::imp(w2.clone(), Formula::Box(q.clone()))));
    let both = b.pair(&p, left, right)?;
    let join = b.axiom(under(Formula::imp(
        Formula::and(box_act, Formula::Box(q.clone())),
        Formula::Box(r.clone()),
    )));
    let w2r = b.syll(&p, both, join)?;
    let intro = b.axiom(under(Formula::imp(
        Formula::Box(r.clone()),
        exists(Formula::Box(r.clone())),
    )));
    let to_ex = b.syll(&p, w2r, intro)?;
    let ex = b.exists_elim(&[], to_ex)?;
    let d3 = b.syll(&[], d2, ex)?;
    let out = b.axiom(Formula::imp(
        exists(Formula::Box(r)),
        box_quote(&exists(phi.clone())),
    ));
    let d3 = b.syll(&[], d3, out)?;

    // (∃n)[Act'(n) ∧ (Act'(n) → B)] → B is a theorem; capture it and use □→
    let psi = Formula::imp(exists(phi.clone()), b_next.clone());
    let pl = b.axiom(under(Formula::imp(phi.clone(), act_next.clone())));
    let pr = b.axiom(under(Formula::imp(phi.clone(), crit_next.clone())));
    let pb = b.imp_mp(&p, pr, pl)?;
    let psi_s = b.exists_elim(&[], pb)?;
    let cap = b.axiom(Formula::imp(psi.clone(), box_quote(&psi)));
    let bpsi = b.mp(cap, psi_s)?;
    let bimp = b.axiom(Formula::imp(
        box_quote(&psi),
        Formula::imp(box_quote(&exists(phi)), box_quote(&b_next)),
    ));
    let m = b.mp(bimp, bpsi)?;
    let d4 = b.syll(&[], d3, m)?;

    // □⌜□(K)⌝ → □(sub(⌜□(x)⌝, K)) for K = iterbox(κ', ⌜Γ⌝): box the Leibniz
    // instance (∀x)(K = x → (□K → □x)), instantiate x at K, apply □→ twice
    let vx = Term::Var(x.clone());
    let box_x = Formula::Box(vx.clone());
    let inner = Formula::imp(b_next.clone(), box_x.clone());
    let k_eq_x = Formula::eq(k_next.clone(), vx.clone());
    let leib = Formula::imp(k_eq_x.clone(), inner.clone());
    let lam = Formula::forall(x.clone(), leib.clone());
    let lam_s = b.axiom(lam.clone());
    let cap = b.axiom(Formula::imp(lam.clone(), box_quote(&lam)));
    let blam = b.mp(cap, lam_s)?;
    let out = b.axiom(Formula::imp(
        box_quote(&lam),
        Formula::forall(x.clone(), Formula::Box(Term::sub(quote(&leib), vx.clone()))),
    ));
    let each = b.mp(out, blam)?;
    let at_k = b.forall_elim(&[], each, &k_next)?;
    let refl = b.axiom(Formula::eq(k_next.clone(), k_next.clone()));
    let boxed_eq = Formula::Box(Term::sub(quote(&k_eq_x), k_next.clone()));
    let cap = b.axiom(Formula::imp(b.formula(refl).clone(), boxed_eq.clone()));
    let beq = b.mp(cap, refl)?;
    let boxed_inner = Formula::Box(Term::sub(quote(&inner), k_next.clone()));
    let bi = b.axiom(Formula::imp(
        b.formula(at_k).clone(),
        Formula::imp(boxed_eq, boxed_inner.clone()),
    ));
    let t = b.mp(bi, at_k)?;
    let t = b.mp(t, beq)?;
    let collapsed = Term::sub(quote(&box_x), k_next.clone());
    let bi = b.axiom(Formula::imp(
        boxed_inner,
        Formula::imp(box_quote(&b_next), Formula::Box(collapsed.clone())),
    ));
    let bridge = b.mp(bi, t)?;
    let d5 = b.syll(&[], d4, bridge)?;

    // sub(⌜□(x)⌝, K) = iterbox(Sκ', ⌜Γ⌝) = iterbox(κ, ⌜Γ⌝)
    let (k_me, k_nx) = (Term::Kappa(agent), Term::Kappa(agent + 1));
    let s0 = Term::succ(Term::Zero);
    let e1 = b.axiom(kappa_axiom(agent));
    let one = b.computation(Formula::eq(Term::numeral(1u32), s0.clone()));
    let e2 = b.rewrite(
        &[],
        one,
        e1,
        Formula::eq(k_me.clone(), Term::add(k_nx.clone(), s0.clone())),
    )?;
    let e3 = b.axiom(Formula::eq(
        Term::add(k_nx.clone(), s0),
        Term::succ(Term::add(k_nx.clone(), Term::Zero)),
    ));
    let e4 = b.eq_trans(&[], e2, e3)?;
    let e5 = b.axiom(Formula::eq(
        Term::add(k_nx.clone(), Term::Zero),
        k_nx.clone(),
    ));
    let e6 = b.rewrite(
        &[],
        e5,
        e4,
        Formula::eq(k_me.clone(), Term::succ(k_nx.clone())),
    )?;
    let succ_level = Term::iterbox(Term::succ(k_nx), g.clone());
    let unfold = b.axiom(Formula::eq(succ_level.clone(), collapsed));
    let fold = b.eq_sym(&[], unfold)?;
    let d5 = b.rewrite(
        &[],
        fold,
        d5,
        Formula::imp(act_now.clone(), Formula::Box(succ_level)),
    )?;
    let back = b.eq_sym(&[], e6)?;
    let goal_f = Formula::imp(act_now, Formula::Box(Term::iterbox(k_me, g)));
    let goal = b.rewrite(&[], back, d5, goal_f)?;

    let steps = [d1, d2, d3, d4, goal]
        .into_iter()
        .map(|s| b.formula(s).clone())
        .collect();
    let conditional = b.finish(goal);
    ensure(theory, &conditional, &ProofStore::new())?;
    let discharged = discharge_all(&conditional, &[SOUNDNESS, DISPLAY1, DISPLAY2])?;
    ensure(theory, &discharged, &ProofStore::new())?;
    Ok(DelegationResult {
        agent,
        n0,
        hypotheses: vec![
            (DISPLAY1.into(), h1),
            (DISPLAY2.into(), h2),
            (SOUNDNESS.into(), sound),
        ],
        steps,
        conditional,
        discharged,
    })
}

/// Run the delegation derivation for every agent with a successor.
pub fn delegation_chain(
    theory: &TheoryConfig,
    n0: u64,
) -> Result<Vec<DelegationResult>, AgencyError> {
    (1..theory.kappas)
        .map(|i| delegation_derivation(theory, i, n0))
        .collect()
}
