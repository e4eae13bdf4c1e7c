//! Fixed points by substitution diagonalization, the liar derivations and
//! the two hazards (release, excluded middle for □).
//!
//! For `D(x)` with one free variable, pick `y` fresh and put
//!
//! ```text
//! E(y) := D(sub(y, y))      e := ⌜E⌝      L := E(ē) = D(sub(ē, ē))
//! ```
//!
//! `sub(ē, ē)` evaluates to `⌜L⌝`, so the computation axiom
//! `sub(ē, ē) = ⌜L⌝` and one Leibniz instance in each direction give
//! `L → D(⌜L⌝)` and `D(⌜L⌝) → L`.

use thiserror::Error;

use crate::kernel::{
    check_proof, discharge, BuildError, ProofBuilder, ProofObject, ProofStore, Step, TheoryConfig,
};
use crate::syntax::{box_quote, quote, Formula, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("D must have at most one free variable, found {0}")]
    Arity(usize),
    #[error("D is not in the language of `{0}`")]
    Language(String),
    #[error("the theory lacks box axioms")]
    NoBox,
    #[error("derivation rejected: {0}")]
    Rejected(String),
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Clone, Debug)]
pub struct FixedPointResult {
    pub sentence: Formula,
    /// `D(⌜L⌝)`.
    pub unfolded: Formula,
    /// `sub(ē, ē)`.
    pub diagonal_term: Term,
    /// `L → D(⌜L⌝)`.
    pub forward: ProofObject,
    /// `D(⌜L⌝) → L`.
    pub backward: ProofObject,
}

fn all_vars(f: &Formula) -> std::collections::BTreeSet<Var> {
    let mut out = f.free_vars();
    out.extend(crate::kernel::schemes::bound_vars(f));
    fn walk(f: &Formula, out: &mut std::collections::BTreeSet<Var>) {
        match f {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => walk(b, out),
            atom => {
                for t in atom.terms() {
                    t.collect_vars(out);
                }
            }
        }
    }
    walk(f, &mut out);
    out
}

fn ensure_accepted(theory: &TheoryConfig, p: &ProofObject) -> Result<(), DiagonalError> {
    let r = check_proof(theory, p, &ProofStore::new());
    match r.error {
        None => Ok(()),
        Some(e) => Err(DiagonalError::Rejected(e.to_string())),
    }
}

/// Build the fixed point of `d` and checked proofs of both directions.
pub fn diagonalize(theory: &TheoryConfig, d: &Formula) -> Result<FixedPointResult, DiagonalError> {
    let free: Vec<Var> = d.free_vars().into_iter().collect();
    if free.len() > 1 {
        return Err(DiagonalError::Arity(free.len()));
    }
    let y = Var::fresh("y", &all_vars(d));
    let (diag, l, unfolded) = match free.first() {
        Some(x) => {
            let e = d
                .subst(x, &Term::sub(Term::Var(y.clone()), Term::Var(y.clone())))
                .expect("fresh variable cannot be captured");
            let code = quote(&e);
            let diag = Term::sub(code.clone(), code);
            let l = d.subst(x, &diag).expect("closed term cannot be captured");
            let unfolded = d
                .subst(x, &quote(&l))
                .expect("closed term cannot be captured");
            (diag, l, unfolded)
        }
        None => {
            let code = quote(d);
            (Term::sub(code.clone(), code), d.clone(), d.clone())
        }
    };
    if !theory.in_language(&l) {
        return Err(DiagonalError::Language(theory.name.to_string()));
    }
    let eq = Formula::eq(diag.clone(), quote(&l));

    let mut b = ProofBuilder::new(&theory.name);
    let st = b.computation(eq.clone());
    let leib = b.axiom(Formula::imp(eq, Formula::imp(l.clone(), unfolded.clone())));
    let fwd = b.mp(leib, st)?;
    let forward = b.finish(fwd);

    let mut b = ProofBuilder::new(&theory.name);
    let st = b.computation(Formula::eq(diag.clone(), quote(&l)));
    let ts = b.eq_sym(&[], st)?;
    let leib = b.axiom(Formula::imp(
        b.formula(ts).clone(),
        Formula::imp(unfolded.clone(), l.clone()),
    ));
    let bwd = b.mp(leib, ts)?;
    let backward = b.finish(bwd);

    ensure_accepted(theory, &forward)?;
    ensure_accepted(theory, &backward)?;
    Ok(FixedPointResult {
        sentence: l,
        unfolded,
        diagonal_term: diag,
        forward,
        backward,
    })
}

/// `¬□(x)`.
pub fn liar_schema() -> Formula {
    Formula::not(Formula::Box(Term::var("x")))
}

/// `□(x)`.
pub fn truth_teller_schema() -> Formula {
    Formula::Box(Term::var("x"))
}

#[derive(Clone, Debug)]
pub struct LiarSuite {
    pub liar: FixedPointResult,
    /// `¬L`.
    pub not_l: ProofObject,
    /// `□⌜¬L⌝`.
    pub box_not_l: ProofObject,
    /// `□⌜L⌝ → □⌜⊥⌝`.
    pub box_l_box_bot: ProofObject,
}

impl LiarSuite {
    pub fn proofs(&self) -> [(&'static str, &ProofObject); 3] {
        [
            ("not-l", &self.not_l),
            ("box-not-l", &self.box_not_l),
            ("box-l-implies-box-bot", &self.box_l_box_bot),
        ]
    }

    /// Sentences the suite must never prove unconditionally.
    pub fn forbidden(&self) -> Vec<Formula> {
        let l = &self.liar.sentence;
        vec![
            Formula::bottom(),
            box_quote(&Formula::bottom()),
            l.clone(),
            Formula::not(box_quote(l)),
        ]
    }
}

struct Liar<'a> {
    theory: &'a TheoryConfig,
    fp: FixedPointResult,
}

impl Liar<'_> {
    fn l(&self) -> &Formula {
        &self.fp.sentence
    }

    fn box_l(&self) -> Formula {
        box_quote(self.l())
    }

    fn builder(&self) -> ProofBuilder {
        ProofBuilder::new(&self.theory.name)
    }

    fn capture(&self, b: &mut ProofBuilder, s: Step) -> Result<Step, BuildError> {
        let a = b.formula(s).clone();
        let cap = b.axiom(Formula::imp(a.clone(), box_quote(&a)));
        b.mp(cap, s)
    }

    /// `¬L`: assume `L`, get `¬□⌜L⌝` from the fixed point and `□⌜L⌝` by
    /// capture, discharge.
    fn not_l(&self) -> Result<ProofObject, BuildError> {
        let mut b = self.builder();
        let h = b.hyp("L", self.l().clone())?;
        let fwd = b.import(&self.fp.forward)?;
        let not_box = b.mp(fwd, h)?;
        let boxed = self.capture(&mut b, h)?;
        let bot = b.mp(not_box, boxed)?;
        discharge(&b.finish(bot), "L")
    }

    /// `□⌜L⌝ → □⌜⊥⌝`: assume `□⌜L⌝`, combine with `□⌜¬L⌝` by □→, discharge.
    fn box_l_box_bot(&self, box_not_l: &ProofObject) -> Result<ProofObject, BuildError> {
        let mut b = self.builder();
        let bnl = b.import(box_not_l)?;
        let h = b.hyp("BoxL", self.box_l())?;
        let ax = b.axiom(Formula::imp(
            box_quote(&Formula::not(self.l().clone())),
            Formula::imp(self.box_l(), box_quote(&Formula::bottom())),
        ));
        let m = b.mp(ax, bnl)?;
        let bot = b.mp(m, h)?;
        discharge(&b.finish(bot), "BoxL")
    }

    /// `¬(□⌜L⌝ → L)`: release yields `□⌜L⌝ → ¬□⌜L⌝`, hence `¬□⌜L⌝`, hence
    /// `L`, contradicting `¬L`.
    fn release(&self, not_l: &ProofObject) -> Result<ProofObject, BuildError> {
        let mut b = self.builder();
        let release = Formula::imp(self.box_l(), self.l().clone());
        let h = b.hyp("Release", release)?;
        let fwd = b.import(&self.fp.forward)?;
        let bwd = b.import(&self.fp.backward)?;
        let nl = b.import(not_l)?;
        let self_neg = b.syll(&[], h, fwd)?;
        let id = b.imp_refl(&[], &self.box_l())?;
        let not_box = b.imp_mp(&[], self_neg, id)?;
        let l = b.mp(bwd, not_box)?;
        let bot = b.mp(nl, l)?;
        discharge(&b.finish(bot), "Release")
    }

    /// `(□⌜L⌝ ∨ ¬□⌜L⌝) → □⌜⊥⌝` by cases: the left case is the suite's
    /// `□⌜L⌝ → □⌜⊥⌝`; in the right case `¬□⌜L⌝` gives `L`, capture gives
    /// `□⌜L⌝`, so `⊥` and then `□⌜⊥⌝` ex falso.
    fn excluded_middle(&self, box_l_box_bot: &ProofObject) -> Result<ProofObject, BuildError> {
        let mut b = self.builder();
        let not_box = Formula::not(self.box_l());
        let em = Formula::or(self.box_l(), not_box.clone());
        let h = b.hyp("ExcludedMiddle", em)?;
        let left = b.import(box_l_box_bot)?;
        let bwd = b.import(&self.fp.backward)?;
        let cap = b.axiom(Formula::imp(self.l().clone(), self.box_l()));
        let nb_box = b.syll(&[], bwd, cap)?;
        let nb_nb = b.imp_refl(&[], &not_box)?;
        let nb_bot = b.imp_mp(&[], nb_nb, nb_box)?;
        let efq = b.axiom(Formula::imp(
            Formula::bottom(),
            box_quote(&Formula::bottom()),
        ));
        let right = b.syll(&[], nb_bot, efq)?;
        let cases = b.or_elim(&[], left, right)?;
        let goal = b.mp(cases, h)?;
        discharge(&b.finish(goal), "ExcludedMiddle")
    }
}

fn liar(theory: &TheoryConfig) -> Result<Liar<'_>, DiagonalError> {
    if !theory.box_axioms {
        return Err(DiagonalError::NoBox);
    }
    Ok(Liar {
        theory,
        fp: diagonalize(theory, &liar_schema())?,
    })
}

/// Checked proofs of `¬L`, `□⌜¬L⌝` and `□⌜L⌝ → □⌜⊥⌝`.
pub fn liar_suite(theory: &TheoryConfig) -> Result<LiarSuite, DiagonalError> {
    let lr = liar(theory)?;
    let not_l = lr.not_l()?;
    let mut b = lr.builder();
    let nl = b.import(&not_l)?;
    let bnl = lr.capture(&mut b, nl)?;
    let box_not_l = b.finish(bnl);
    let box_l_box_bot = lr.box_l_box_bot(&box_not_l)?;
    let suite = LiarSuite {
        liar: lr.fp,
        not_l,
        box_not_l,
        box_l_box_bot,
    };
    for (_, p) in suite.proofs() {
        ensure_accepted(theory, p)?;
    }
    Ok(suite)
}

#[derive(Clone, Debug)]
pub struct Hazards {
    pub liar: Formula,
    /// `¬(□⌜L⌝ → L)`.
    pub release: ProofObject,
    /// `(□⌜L⌝ ∨ ¬□⌜L⌝) → □⌜⊥⌝`.
    pub excluded_middle: ProofObject,
}

/// Checked proofs showing that release or excluded middle for `□⌜L⌝` would
/// be paradoxical.
pub fn hazard_demos(theory: &TheoryConfig) -> Result<Hazards, DiagonalError> {
    let suite = liar_suite(theory)?;
    let lr = Liar {
        theory,
        fp: suite.liar.clone(),
    };
    let release = lr.release(&suite.not_l)?;
    let excluded_middle = lr.excluded_middle(&suite.box_l_box_bot)?;
    ensure_accepted(theory, &release)?;
    ensure_accepted(theory, &excluded_middle)?;
    Ok(Hazards {
        liar: suite.liar.sentence,
        release,
        excluded_middle,
    })
}
