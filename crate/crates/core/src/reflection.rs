//! Instance-wise reflection: turn a checked proof of `A` into a checked proof
//! of `□⌜A⌝`.
//!
//! Each source line `X` is mapped to a derivation of `□⌜X⌝`:
//!
//! * a main axiom through the computation axiom `Ax_T(⌜X⌝)` and the jump
//!   axiom instantiated at `⌜X⌝`;
//! * the jump axiom itself, and computation axioms, through capture;
//! * a modus ponens line `(∀p⃗)B` from `(∀p⃗)(A → B)` and `(∀p⃗)A` through
//!   the chain
//!
//! ```text
//! □⌜(∀p⃗)(A → B)⌝, □⌜(∀p⃗)A⌝                   given
//! (∀p⃗)□⌜A → B⌝, (∀p⃗)□⌜A⌝                     unfold, □∀ out, outermost first
//! (∀p⃗)(□⌜A → B⌝ ∧ □⌜A⌝)                       conjunction
//! (∀p⃗)□⌜B⌝                                    □→ under the prefix
//! □⌜(∀p⃗)B⌝                                    fold, □∀ in, innermost first
//! ```
//!
//! where `□⌜F⌝` for open `F` is `□(sub(...sub(⌜F⌝, v₁)..., v_m))` over the
//! free variables of `F` in ascending order.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::kernel::schemes::is_axiom;
use crate::kernel::{
    all, check_proof, BuildError, Justification, ProofBuilder, ProofObject, ProofStore, Rejection,
    Scheme, Step, TheoryConfig,
};
use crate::syntax::{
    box_quote, formula_to_string, quote, substitute_numeral, Formula, Relation, Term, Var,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectError {
    #[error("source proof rejected: {0}")]
    SourceRejected(Rejection),
    #[error("theory `{0}` has no jump axiom")]
    NoJump(String),
    #[error("source proof has hypotheses; only unconditional proofs can be reflected")]
    Conditional,
    #[error("{0} codes a proof of 0=1")]
    ProvesFalsity(BigUint),
    #[error("output rejected: {0}")]
    OutputRejected(Rejection),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// The displayed steps of one modus ponens reflection, as printed sentences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MpChain {
    /// 1-based source line.
    pub source_line: usize,
    pub given: [String; 2],
    pub unfolded: [String; 2],
    pub conjunction: String,
    pub consequent: String,
    pub folded: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineMap {
    /// 1-based source line.
    pub source_line: usize,
    /// 1-based output line proving `□⌜X⌝`, if it survived pruning.
    pub output_line: Option<usize>,
    pub method: &'static str,
}

#[derive(Clone, Debug)]
pub struct ReflectionTrace {
    pub source: ProofObject,
    pub output: ProofObject,
    pub mapping: Vec<LineMap>,
    pub chains: Vec<MpChain>,
}

/// `□(t)` with `t` the code term of `f` under the identity assignment of
/// its free variables.
pub fn open_box(f: &Formula) -> Formula {
    Formula::Box(template_term(f, &BTreeMap::new()))
}

/// The code term of `f` with `σ(v)` (default: `v` itself) substituted for each
/// free variable `v`, in ascending variable order.
pub fn template_term(f: &Formula, sigma: &BTreeMap<Var, Term>) -> Term {
    f.free_vars().into_iter().fold(quote(f), |acc, v| {
        let arg = sigma.get(&v).cloned().unwrap_or(Term::Var(v));
        Term::sub(acc, arg)
    })
}

struct Reflector<'a> {
    theory: &'a TheoryConfig,
    b: ProofBuilder,
    jump: Option<Step>,
}

impl Reflector<'_> {
    fn jump(&mut self) -> Step {
        if let Some(s) = self.jump {
            return s;
        }
        let s = self.b.axiom(self.theory.jump_axiom());
        self.jump = Some(s);
        s
    }

    /// `□⌜X⌝` for an axiom line.
    fn axiom(&mut self, x: &Formula) -> Result<(Step, &'static str), BuildError> {
        let is_jump = is_axiom(self.theory, x).is_some_and(|m| m.scheme == Scheme::Jump);
        if is_jump {
            return Ok((self.capture(x)?, "capture"));
        }
        let code = quote(x);
        let ax = self.b.computation(Formula::rel(
            Relation::ax(&self.theory.name),
            vec![code.clone()],
        ));
        let jump = self.jump();
        let inst = self.b.forall_elim(&[], jump, &code)?;
        Ok((self.b.mp(inst, ax)?, "ax+jump"))
    }

    /// `□⌜X⌝` from `X` by capture.
    fn capture(&mut self, x: &Formula) -> Result<Step, BuildError> {
        let line = self.b.find(x).unwrap_or_else(|| self.b.axiom(x.clone()));
        let cap = self.b.axiom(Formula::imp(x.clone(), box_quote(x)));
        self.b.mp(cap, line)
    }

    /// From `□⌜(∀p⃗)F⌝` derive `(∀p⃗)□⌜F⌝`, unfolding exactly `k = |p⃗|`
    /// quantifiers.
    fn unfold(&mut self, k: usize, s: Step, f: &Formula) -> Result<Step, BuildError> {
        let mut cur = s;
        let mut prefix = Vec::with_capacity(k);
        let mut g = f.clone();
        for _ in 0..k {
            let Formula::Forall(x, body) = g.clone() else {
                unreachable!("prefix of a checked premise");
            };
            let inner = (*body).clone();
            let ax = self.b.axiom(all(
                &prefix,
                Formula::imp(open_box(&g), Formula::forall(x.clone(), open_box(&inner))),
            ));
            cur = self.b.mp(ax, cur)?;
            prefix.push(x);
            g = inner;
        }
        Ok(cur)
    }

    /// From `(∀p⃗)□⌜F⌝` derive `□⌜(∀p⃗)F⌝`.
    fn fold(&mut self, p: &[Var], s: Step, f: &Formula) -> Result<Step, BuildError> {
        let mut cur = s;
        let mut g = f.clone();
        for i in (0..p.len()).rev() {
            let x = &p[i];
            let whole = Formula::forall(x.clone(), g.clone());
            let ax = self.b.axiom(all(
                &p[..i],
                Formula::imp(Formula::forall(x.clone(), open_box(&g)), open_box(&whole)),
            ));
            cur = self.b.mp(ax, cur)?;
            g = whole;
        }
        Ok(cur)
    }

    fn mp(
        &mut self,
        major: &Formula,
        minor_box: Step,
        major_box: Step,
        source_line: usize,
    ) -> Result<(Step, MpChain), BuildError> {
        let k = major.forall_depth();
        let (p, body) = major.strip_foralls(k).expect("depth is exact");
        let (a, bf) = body.as_imp().expect("checked modus ponens major");
        let (a, bf) = (a.clone(), bf.clone());
        let body = body.clone();
        let given = [
            formula_to_string(self.b.formula(major_box)),
            formula_to_string(self.b.formula(minor_box)),
        ];
        let u_major = self.unfold(k, major_box, major)?;
        let minor = all(&p, a.clone());
        let u_minor = self.unfold(k, minor_box, &minor)?;
        let conj = self.b.and_intro(&p, u_major, u_minor)?;
        let left = self.b.and_elim(&p, conj, true)?;
        let right = self.b.and_elim(&p, conj, false)?;
        let imp_ax = self.b.axiom(all(
            &p,
            Formula::imp(open_box(&body), Formula::imp(open_box(&a), open_box(&bf))),
        ));
        let m1 = self.b.mp(imp_ax, left)?;
        let consequent = self.b.mp(m1, right)?;
        let folded = self.fold(&p, consequent, &bf)?;
        let chain = MpChain {
            source_line,
            given,
            unfolded: [
                formula_to_string(self.b.formula(u_major)),
                formula_to_string(self.b.formula(u_minor)),
            ],
            conjunction: formula_to_string(self.b.formula(conj)),
            consequent: formula_to_string(self.b.formula(consequent)),
            folded: formula_to_string(self.b.formula(folded)),
        };
        Ok((folded, chain))
    }
}

fn require_accepted(
    theory: &TheoryConfig,
    p: &ProofObject,
    store: &ProofStore,
) -> Result<(), ReflectError> {
    if !theory.jump || !theory.box_axioms {
        return Err(ReflectError::NoJump(theory.name.to_string()));
    }
    if p.is_conditional() {
        return Err(ReflectError::Conditional);
    }
    let r = check_proof(theory, p, store);
    match r.error {
        Some(e) => Err(ReflectError::SourceRejected(e)),
        None => Ok(()),
    }
}

/// Reflect an accepted unconditional proof of `A` into a proof of `□⌜A⌝`.
/// The output is re-checked before it is returned.
pub fn reflect_theorem(
    theory: &TheoryConfig,
    source: &ProofObject,
    store: &ProofStore,
) -> Result<ReflectionTrace, ReflectError> {
    require_accepted(theory, source, store)?;
    let mut r = Reflector {
        theory,
        b: ProofBuilder::new(&theory.name),
        jump: None,
    };
    // The source lines themselves are available to capture steps.
    let mut copied = Vec::with_capacity(source.lines.len());
    for l in &source.lines {
        let s = match &l.justification {
            Justification::Mp { major, minor } => r.b.mp(copied[*major], copied[*minor])?,
            Justification::Computation => r.b.computation(l.sentence.clone()),
            _ => r.b.axiom(l.sentence.clone()),
        };
        copied.push(s);
    }
    let mut boxed: Vec<Step> = Vec::with_capacity(source.lines.len());
    let mut methods = Vec::with_capacity(source.lines.len());
    let mut chains = Vec::new();
    for (i, l) in source.lines.iter().enumerate() {
        let x = &l.sentence;
        let (s, method) = match &l.justification {
            Justification::Mp { major, minor } => {
                let (s, chain) = r.mp(
                    &source.lines[*major].sentence,
                    boxed[*minor],
                    boxed[*major],
                    i + 1,
                )?;
                chains.push(chain);
                (s, "mp-chain")
            }
            Justification::Computation => (r.capture(x)?, "capture"),
            Justification::Axiom(_) => {
                if is_axiom(theory, x).is_some() {
                    r.axiom(x)?
                } else {
                    (r.capture(x)?, "capture")
                }
            }
            Justification::Hypothesis(_) => return Err(ReflectError::Conditional),
        };
        debug_assert_eq!(*r.b.formula(s), box_quote(x));
        boxed.push(s);
        methods.push(method);
    }
    let output =
        r.b.finish(*boxed.last().expect("accepted proofs are nonempty"));
    let report = check_proof(theory, &output, store);
    if let Some(e) = report.error {
        return Err(ReflectError::OutputRejected(e));
    }
    let position: std::collections::HashMap<&Formula, usize> = output
        .lines
        .iter()
        .enumerate()
        .map(|(i, l)| (&l.sentence, i + 1))
        .collect();
    let mapping = source
        .lines
        .iter()
        .enumerate()
        .map(|(i, l)| LineMap {
            source_line: i + 1,
            output_line: position.get(&box_quote(&l.sentence)).copied(),
            method: methods[i],
        })
        .collect();
    Ok(ReflectionTrace {
        source: source.clone(),
        output,
        mapping,
        chains,
    })
}

/// `k = 0`: the proof itself; otherwise reflect `k` times, checking each
/// stage.
pub fn reflect_iterated(
    theory: &TheoryConfig,
    source: &ProofObject,
    k: usize,
    store: &ProofStore,
) -> Result<ProofObject, ReflectError> {
    if k == 0 {
        require_accepted(theory, source, store)?;
        return Ok(source.clone());
    }
    let mut cur = source.clone();
    for _ in 0..k {
        cur = reflect_theorem(theory, &cur, store)?.output;
    }
    Ok(cur)
}

/// `A(g) := ¬ProofOf_T(g, ⌜0=1⌝)`, open in `g`.
pub fn consistency_predicate(theory: &TheoryConfig) -> Formula {
    Formula::not(Formula::rel(
        Relation::proof_of(&theory.name),
        vec![Term::var("g"), quote(&Formula::bottom())],
    ))
}

/// `A(ḡ)`.
pub fn consistency_instance(theory: &TheoryConfig, g: &BigUint) -> Formula {
    substitute_numeral(&consistency_predicate(theory), &Var::new("g"), g.clone())
}

/// A checked proof of `□⌜A(ḡ)⌝` from the computation axiom `A(ḡ)` and
/// capture.
pub fn assertible_consistency_instance(
    theory: &TheoryConfig,
    g: &BigUint,
    store: &ProofStore,
) -> Result<ProofObject, ReflectError> {
    if !theory.box_axioms {
        return Err(ReflectError::NoJump(theory.name.to_string()));
    }
    let a = consistency_instance(theory, g);
    let mut b = ProofBuilder::new(&theory.name);
    let c = b.computation(a.clone());
    let cap = b.axiom(Formula::imp(a.clone(), box_quote(&a)));
    let s = b.mp(cap, c)?;
    let p = b.finish(s);
    let report = check_proof(theory, &p, store);
    match report.error {
        None => Ok(p),
        Some(e) if e.line == Some(1) => Err(ReflectError::ProvesFalsity(g.clone())),
        Some(e) => Err(ReflectError::OutputRejected(e)),
    }
}
