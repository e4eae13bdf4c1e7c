//! Reading a term as "the code of a formula template with some arguments".
//!
//! The box axioms relate `□(t)` for terms `t` that denote codes of sentences
//! built from a known formula `F` by substituting terms for its free
//! variables. A term `t` is viewed as `(F, σ)` when
//!
//! * `t` is closed and κ-free and evaluates to `⌜F⌝` (then `σ` is empty), or
//! * `t` is `sub(t', a)`, `t'` is viewed as `(F, σ')`, and `σ = σ' ∪ {v ↦ a}`
//!   with `v` the least free variable of `F` not already assigned.
//!
//! This is exactly how `sub` evaluates, so whenever the arguments are closed
//! the view agrees with the value of `t`.

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{decode_formula, eval_term, numeral_of, Formula, Term, Var};

/// `(F, σ)`: the formula `F` with `σ` substituted for (some of) its free
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuoteView {
    pub template: Formula,
    pub args: BTreeMap<Var, Term>,
}

impl QuoteView {
    /// Every free variable of the template is assigned.
    pub fn is_total(&self) -> bool {
        self.template
            .free_vars()
            .iter()
            .all(|v| self.args.contains_key(v))
    }

    /// Replace arguments that are closed κ-free terms by their numerals, and
    /// substitute those numerals into the template. Two views of terms with
    /// the same value in every assignment compare equal after normalizing.
    pub fn normalized(&self) -> QuoteView {
        let mut template = self.template.clone();
        let mut args = BTreeMap::new();
        for (v, a) in &self.args {
            match closed_value(a) {
                Some(n) => {
                    template = template
                        .subst(v, &n)
                        .expect("numerals are closed, substitution cannot capture");
                }
                None => {
                    args.insert(v.clone(), a.clone());
                }
            }
        }
        QuoteView { template, args }
    }

    /// The view of the sub-template `sub`, keeping only its own variables.
    pub fn restrict(&self, sub: &Formula) -> QuoteView {
        let fv = sub.free_vars();
        QuoteView {
            template: sub.clone(),
            args: self
                .args
                .iter()
                .filter(|(v, _)| fv.contains(*v))
                .map(|(v, a)| (v.clone(), a.clone()))
                .collect(),
        }
    }

    /// `F[σ]`, when no argument is captured.
    pub fn instantiate(&self) -> Option<Formula> {
        self.template.subst_all(self.args.iter())
    }

    /// Variables occurring in the arguments.
    pub fn arg_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for a in self.args.values() {
            a.collect_vars(&mut out);
        }
        out
    }
}

fn closed_value(t: &Term) -> Option<Term> {
    if t.is_closed() && !t.has_kappa() {
        eval_term(t, None).ok().map(numeral_of)
    } else {
        None
    }
}

/// The raw view of `t`, or `None` if `t` is not of the shapes above.
pub fn quote_view(t: &Term) -> Option<QuoteView> {
    if let Term::Sub(g, a) = t {
        if let Some(mut view) = quote_view(g) {
            let next = view
                .template
                .free_vars()
                .into_iter()
                .find(|v| !view.args.contains_key(v));
            if let Some(v) = next {
                view.args.insert(v, (**a).clone());
            }
            return Some(view);
        }
    }
    if t.is_closed() && !t.has_kappa() {
        let c = eval_term(t, None).ok()?;
        let template = decode_formula(&c)?;
        return Some(QuoteView {
            template,
            args: BTreeMap::new(),
        });
    }
    None
}

/// Normalized view of a term denoting a sentence (all variables assigned).
pub fn sentence_view(t: &Term) -> Option<QuoteView> {
    let v = quote_view(t)?;
    v.is_total().then(|| v.normalized())
}
