//! Incremental proof construction and derived rules.
//!
//! Every derived rule emits ordinary lines (axiom instances and modus
//! ponens), so the result is checked by the same kernel as hand-written
//! proofs. Rules taking a prefix `p` work uniformly under `(∀p⃗)`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use super::proof::{Hypothesis, Justification, Line, ProofObject};
use crate::syntax::{formula_to_string, Formula, Term, Var};

/// Index of a line in the proof under construction.
pub type Step = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("{rule}: expected {expected}, found {found}")]
    Shape {
        rule: &'static str,
        expected: &'static str,
        found: String,
    },
    #[error("{rule}: {message}")]
    Other { rule: &'static str, message: String },
}

fn shape(rule: &'static str, expected: &'static str, f: &Formula) -> BuildError {
    BuildError::Shape {
        rule,
        expected,
        found: formula_to_string(f),
    }
}

/// `(∀p⃗)f`.
pub fn all(p: &[Var], f: Formula) -> Formula {
    Formula::forall_all(p, f)
}

#[derive(Clone, Debug)]
pub struct ProofBuilder {
    theory: Arc<str>,
    hypotheses: Vec<Hypothesis>,
    lines: Vec<Line>,
    index: HashMap<Formula, Step>,
}

impl ProofBuilder {
    pub fn new(theory: &str) -> Self {
        ProofBuilder {
            theory: Arc::from(theory),
            hypotheses: vec![],
            lines: vec![],
            index: HashMap::new(),
        }
    }

    pub fn theory(&self) -> &str {
        &self.theory
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    fn emit(&mut self, sentence: Formula, justification: Justification) -> Step {
        if let Some(&i) = self.index.get(&sentence) {
            return i;
        }
        let i = self.lines.len();
        self.index.insert(sentence.clone(), i);
        self.lines.push(Line {
            sentence,
            justification,
        });
        i
    }

    pub fn formula(&self, s: Step) -> &Formula {
        &self.lines[s].sentence
    }

    /// Has `f` been derived already?
    pub fn find(&self, f: &Formula) -> Option<Step> {
        self.index.get(f).copied()
    }

    pub fn axiom(&mut self, f: Formula) -> Step {
        self.emit(f, Justification::Axiom(None))
    }

    pub fn axiom_hint(&mut self, f: Formula, hint: &str) -> Step {
        self.emit(f, Justification::Axiom(Some(hint.to_owned())))
    }

    pub fn computation(&mut self, f: Formula) -> Step {
        self.emit(f, Justification::Computation)
    }

    /// Declare (if new) and cite a hypothesis.
    pub fn hyp(&mut self, name: &str, f: Formula) -> Result<Step, BuildError> {
        match self.hypotheses.iter().find(|h| h.name == name) {
            Some(h) if h.sentence != f => {
                return Err(BuildError::Other {
                    rule: "hyp",
                    message: format!("hypothesis `{name}` already declared differently"),
                })
            }
            Some(_) => {}
            None => self.hypotheses.push(Hypothesis {
                name: name.to_owned(),
                sentence: f.clone(),
            }),
        }
        Ok(self.emit(f, Justification::Hypothesis(name.to_owned())))
    }

    /// Quantified modus ponens; the prefix is read off the major premise.
    pub fn mp(&mut self, major: Step, minor: Step) -> Result<Step, BuildError> {
        let maj = self.formula(major);
        let k = maj.forall_depth();
        let (prefix, body) = maj.strip_foralls(k).expect("depth is exact");
        let Formula::Imp(a, b) = body else {
            return Err(shape("mp", "(∀p)(A → B)", maj));
        };
        if all(&prefix, (**a).clone()) != *self.formula(minor) {
            return Err(BuildError::Other {
                rule: "mp",
                message: format!(
                    "minor {} does not match antecedent of {}",
                    formula_to_string(self.formula(minor)),
                    formula_to_string(maj)
                ),
            });
        }
        let concl = all(&prefix, (**b).clone());
        Ok(self.emit(concl, Justification::Mp { major, minor }))
    }

    /// Copy every line of `p` (which must be for the same theory) and return
    /// the step of its conclusion.
    pub fn import(&mut self, p: &ProofObject) -> Result<Step, BuildError> {
        if p.theory != self.theory {
            return Err(BuildError::Other {
                rule: "import",
                message: format!("proof is for `{}`", p.theory),
            });
        }
        let mut map = Vec::with_capacity(p.lines.len());
        for l in &p.lines {
            let s = match &l.justification {
                Justification::Mp { major, minor } => self.mp(map[*major], map[*minor])?,
                Justification::Hypothesis(name) => {
                    let h = p.hypothesis(name).ok_or_else(|| BuildError::Other {
                        rule: "import",
                        message: format!("undeclared hypothesis `{name}`"),
                    })?;
                    self.hyp(name, h.clone())?
                }
                j => self.emit(l.sentence.clone(), j.clone()),
            };
            map.push(s);
        }
        map.last().copied().ok_or(BuildError::Other {
            rule: "import",
            message: "empty proof".into(),
        })
    }

    /// The proof of `goal`, pruned to the lines it depends on.
    pub fn finish(&self, goal: Step) -> ProofObject {
        ProofObject {
            theory: self.theory.clone(),
            hypotheses: self.hypotheses.clone(),
            lines: self.lines[..=goal].to_vec(),
        }
        .pruned()
    }

    /// The body of line `s` below the prefix `p`.
    pub fn body(&self, s: Step, p: &[Var]) -> Result<Formula, BuildError> {
        self.formula(s)
            .strip_prefix(p)
            .cloned()
            .ok_or_else(|| shape("prefix", "a line under the given prefix", self.formula(s)))
    }

    fn body_imp(
        &self,
        s: Step,
        p: &[Var],
        rule: &'static str,
    ) -> Result<(Formula, Formula), BuildError> {
        match self.body(s, p)? {
            Formula::Imp(a, b) => Ok(((*a).clone(), (*b).clone())),
            _ => Err(shape(rule, "(∀p)(A → B)", self.formula(s))),
        }
    }

    // ---- propositional rules under a prefix ----

    /// `(∀p⃗)(A → A)`.
    pub fn imp_refl(&mut self, p: &[Var], a: &Formula) -> Result<Step, BuildError> {
        let aa = Formula::imp(a.clone(), a.clone());
        let s = self.axiom(all(
            p,
            Formula::imp(
                Formula::imp(a.clone(), Formula::imp(aa.clone(), a.clone())),
                Formula::imp(Formula::imp(a.clone(), aa.clone()), aa.clone()),
            ),
        ));
        let k1 = self.axiom(all(
            p,
            Formula::imp(a.clone(), Formula::imp(aa.clone(), a.clone())),
        ));
        let m = self.mp(s, k1)?;
        let k2 = self.axiom(all(p, Formula::imp(a.clone(), aa)));
        self.mp(m, k2)
    }

    /// From `(∀p⃗)B` infer `(∀p⃗)(A → B)`.
    pub fn weaken(&mut self, p: &[Var], s: Step, a: &Formula) -> Result<Step, BuildError> {
        let b = self.body(s, p)?;
        let k = self.axiom(all(p, Formula::imp(b.clone(), Formula::imp(a.clone(), b))));
        self.mp(k, s)
    }

    /// From `(∀p⃗)(Z → (A → B))` and `(∀p⃗)(Z → A)` infer `(∀p⃗)(Z → B)`.
    pub fn imp_mp(&mut self, p: &[Var], zab: Step, za: Step) -> Result<Step, BuildError> {
        let (z, ab) = self.body_imp(zab, p, "imp_mp")?;
        let Formula::Imp(a, b) = &ab else {
            return Err(shape("imp_mp", "(∀p)(Z → (A → B))", self.formula(zab)));
        };
        let (a, b) = ((**a).clone(), (**b).clone());
        let s = self.axiom(all(
            p,
            Formula::imp(
                Formula::imp(z.clone(), ab.clone()),
                Formula::imp(Formula::imp(z.clone(), a), Formula::imp(z, b)),
            ),
        ));
        let m = self.mp(s, zab)?;
        self.mp(m, za)
    }

    /// From `(∀p⃗)(A → B)` and `(∀p⃗)(B → C)` infer `(∀p⃗)(A → C)`.
    pub fn syll(&mut self, p: &[Var], ab: Step, bc: Step) -> Result<Step, BuildError> {
        let (a, _) = self.body_imp(ab, p, "syll")?;
        let w = self.weaken(p, bc, &a)?;
        self.imp_mp(p, w, ab)
    }

    /// From a sentence `C` infer `(∀p⃗)C`.
    pub fn lift(&mut self, p: &[Var], c: Step) -> Result<Step, BuildError> {
        if p.is_empty() {
            return Ok(c);
        }
        let f = self.formula(c).clone();
        let id = self.imp_refl(p, &f)?;
        let pulled = self.pull(p, id)?;
        self.mp(pulled, c)
    }

    /// From `(∀p⃗)(H → Y)`, with no variable of `p` free in `H`, infer
    /// `H → (∀p⃗)Y` by generalizing the innermost variable first.
    pub fn pull(&mut self, p: &[Var], s: Step) -> Result<Step, BuildError> {
        let mut cur = s;
        for i in (0..p.len()).rev() {
            let q = &p[..i];
            let x = &p[i];
            let (h, y) = self.body_imp(cur, &p[..=i], "pull")?;
            if h.has_free(x) {
                return Err(BuildError::Other {
                    rule: "pull",
                    message: format!("`{x}` is free in the antecedent"),
                });
            }
            let g = self.axiom(Formula::imp(
                self.formula(cur).clone(),
                all(q, Formula::imp(h, Formula::forall(x.clone(), y))),
            ));
            cur = self.mp(g, cur)?;
        }
        Ok(cur)
    }

    /// `(∀p⃗)((∀p⃗)Y → Y)`.
    pub fn inst_self(&mut self, p: &[Var], y: &Formula) -> Result<Step, BuildError> {
        let whole = all(p, y.clone());
        let mut acc = self.imp_refl(p, &whole)?;
        for i in 0..p.len() {
            let from = all(&p[i..], y.clone());
            let to = all(&p[i + 1..], y.clone());
            let e = self.axiom(all(p, Formula::imp(from, to)));
            acc = self.syll(p, acc, e)?;
        }
        Ok(acc)
    }

    /// From `H → (∀p⃗)Y` infer `(∀p⃗)(H → Y)`.
    pub fn push(&mut self, p: &[Var], s: Step) -> Result<Step, BuildError> {
        if p.is_empty() {
            return Ok(s);
        }
        let (_, py) = self.body_imp(s, &[], "push")?;
        let y = py
            .strip_prefix(p)
            .cloned()
            .ok_or_else(|| shape("push", "H → (∀p)Y", self.formula(s)))?;
        let lifted = self.lift(p, s)?;
        let inst = self.inst_self(p, &y)?;
        self.syll(p, lifted, inst)
    }

    /// `(∀p⃗)(A ∧ B)` from `(∀p⃗)A` and `(∀p⃗)B`.
    pub fn and_intro(&mut self, p: &[Var], a: Step, b: Step) -> Result<Step, BuildError> {
        let (fa, fb) = (self.body(a, p)?, self.body(b, p)?);
        let ax = self.axiom(all(
            p,
            Formula::imp(fa.clone(), Formula::imp(fb.clone(), Formula::and(fa, fb))),
        ));
        let m = self.mp(ax, a)?;
        self.mp(m, b)
    }

    /// `(∀p⃗)A` or `(∀p⃗)B` from `(∀p⃗)(A ∧ B)`.
    pub fn and_elim(&mut self, p: &[Var], s: Step, left: bool) -> Result<Step, BuildError> {
        let Formula::And(a, b) = self.body(s, p)? else {
            return Err(shape("and_elim", "(∀p)(A ∧ B)", self.formula(s)));
        };
        let pick = if left { (*a).clone() } else { (*b).clone() };
        let ax = self.axiom(all(p, Formula::imp(Formula::And(a, b), pick)));
        self.mp(ax, s)
    }

    /// From `(∀p⃗)(Z → A)` and `(∀p⃗)(Z → B)` infer `(∀p⃗)(Z → A ∧ B)`.
    pub fn pair(&mut self, p: &[Var], za: Step, zb: Step) -> Result<Step, BuildError> {
        let (_, a) = self.body_imp(za, p, "pair")?;
        let (_, b) = self.body_imp(zb, p, "pair")?;
        let ax = self.axiom(all(
            p,
            Formula::imp(a.clone(), Formula::imp(b.clone(), Formula::and(a, b))),
        ));
        let zbab = self.syll(p, za, ax)?;
        self.imp_mp(p, zbab, zb)
    }

    /// From `(∀p⃗)(A → C)` and `(∀p⃗)(B → C)` infer `(∀p⃗)(A ∨ B → C)`.
    pub fn or_elim(&mut self, p: &[Var], ac: Step, bc: Step) -> Result<Step, BuildError> {
        let (a, c) = self.body_imp(ac, p, "or_elim")?;
        let (b, _) = self.body_imp(bc, p, "or_elim")?;
        let ax = self.axiom(all(
            p,
            Formula::imp(
                Formula::imp(a.clone(), c.clone()),
                Formula::imp(
                    Formula::imp(b.clone(), c.clone()),
                    Formula::imp(Formula::or(a, b), c),
                ),
            ),
        ));
        let m = self.mp(ax, ac)?;
        self.mp(m, bc)
    }

    // ---- quantifier rules ----

    /// From `(∀p⃗)(∀x)A` infer `(∀p⃗)A[x := t]`.
    pub fn forall_elim(&mut self, p: &[Var], s: Step, t: &Term) -> Result<Step, BuildError> {
        let Formula::Forall(x, a) = self.body(s, p)? else {
            return Err(shape("forall_elim", "(∀p)(∀x)A", self.formula(s)));
        };
        let inst = a.subst(&x, t).ok_or_else(|| BuildError::Other {
            rule: "forall_elim",
            message: "substitution would capture".into(),
        })?;
        let ax = self.axiom(all(p, Formula::imp(Formula::Forall(x, a), inst)));
        self.mp(ax, s)
    }

    /// From `(∀p⃗)(∀x)(A → B)` with `x` not free in `A` infer
    /// `(∀p⃗)(A → (∀x)B)`.
    pub fn gen(&mut self, p: &[Var], s: Step) -> Result<Step, BuildError> {
        let Formula::Forall(x, body) = self.body(s, p)? else {
            return Err(shape("gen", "(∀p)(∀x)(A → B)", self.formula(s)));
        };
        let Formula::Imp(a, b) = &*body else {
            return Err(shape("gen", "(∀p)(∀x)(A → B)", self.formula(s)));
        };
        let concl = all(
            p,
            Formula::imp((**a).clone(), Formula::Forall(x, b.clone())),
        );
        let ax = self.axiom(Formula::imp(self.formula(s).clone(), concl));
        self.mp(ax, s)
    }

    /// From `(∀p⃗)(∀x)(A → B)` with `x` not free in `B` infer
    /// `(∀p⃗)((∃x)A → B)`.
    pub fn exists_elim(&mut self, p: &[Var], s: Step) -> Result<Step, BuildError> {
        let Formula::Forall(x, body) = self.body(s, p)? else {
            return Err(shape("exists_elim", "(∀p)(∀x)(A → B)", self.formula(s)));
        };
        let Formula::Imp(a, b) = &*body else {
            return Err(shape("exists_elim", "(∀p)(∀x)(A → B)", self.formula(s)));
        };
        let concl = all(
            p,
            Formula::imp(Formula::Exists(x, a.clone()), (**b).clone()),
        );
        let ax = self.axiom(Formula::imp(self.formula(s).clone(), concl));
        self.mp(ax, s)
    }

    // ---- equality ----

    /// From `(∀p⃗)(s = t)` infer `(∀p⃗)(t = s)`.
    pub fn eq_sym(&mut self, p: &[Var], st: Step) -> Result<Step, BuildError> {
        let Formula::Eq(s, t) = self.body(st, p)? else {
            return Err(shape("eq_sym", "(∀p)(s = t)", self.formula(st)));
        };
        let ax = self.axiom(all(
            p,
            Formula::imp(Formula::eq(s.clone(), t.clone()), Formula::eq(t, s)),
        ));
        self.mp(ax, st)
    }

    /// From `(∀p⃗)(r = s)` and `(∀p⃗)(s = t)` infer `(∀p⃗)(r = t)`.
    pub fn eq_trans(&mut self, p: &[Var], rs: Step, st: Step) -> Result<Step, BuildError> {
        let (Formula::Eq(r, s), Formula::Eq(s2, t)) = (self.body(rs, p)?, self.body(st, p)?) else {
            return Err(shape("eq_trans", "two equations", self.formula(rs)));
        };
        if s != s2 {
            return Err(shape("eq_trans", "chained equations", self.formula(st)));
        }
        let ax = self.axiom(all(
            p,
            Formula::imp(
                Formula::eq(r.clone(), s.clone()),
                Formula::imp(Formula::eq(s, t.clone()), Formula::eq(r, t)),
            ),
        ));
        let m = self.mp(ax, rs)?;
        self.mp(m, st)
    }

    /// From `(∀p⃗)(s = t)` and `(∀p⃗)P` infer `(∀p⃗)Q`, where `Q` is `P` with
    /// some occurrences of `s` replaced by `t`.
    pub fn rewrite(
        &mut self,
        p: &[Var],
        st: Step,
        src: Step,
        target: Formula,
    ) -> Result<Step, BuildError> {
        let eq = self.body(st, p)?;
        let pf = self.body(src, p)?;
        let ax = self.axiom(all(p, Formula::imp(eq, Formula::imp(pf, target))));
        let m = self.mp(ax, st)?;
        self.mp(m, src)
    }
}
