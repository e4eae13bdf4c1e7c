use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::term::{Term, Var};

/// Relation symbols other than equality and □.
///
/// `Prov`, `Ax` and `ProofOf` stand for the standard arithmetic formulas
/// "is a theorem of T", "is a main axiom of T" and "codes a T-proof whose
/// conclusion is coded by"; their closed instances are decided by the
/// trusted evaluator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Relation {
    /// `Act_Mi(n)`: agent `i` takes action `n`.
    Act(u32),
    /// Γ: the goal has been achieved. Nullary.
    Gamma,
    Prov(Arc<str>),
    Ax(Arc<str>),
    ProofOf(Arc<str>),
}

impl Relation {
    pub fn arity(&self) -> usize {
        match self {
            Relation::Gamma => 0,
            Relation::Act(_) | Relation::Prov(_) | Relation::Ax(_) => 1,
            Relation::ProofOf(_) => 2,
        }
    }

    pub fn prov(theory: &str) -> Relation {
        Relation::Prov(Arc::from(theory))
    }

    pub fn ax(theory: &str) -> Relation {
        Relation::Ax(Arc::from(theory))
    }

    pub fn proof_of(theory: &str) -> Relation {
        Relation::ProofOf(Arc::from(theory))
    }
}

/// Formulas. Negation is not a constructor: `¬A` is `A → ⊥` with ⊥ the
/// sentence `0 = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Box(Term),
    Rel(Relation, Arc<[Term]>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Forall(Var, Arc<Formula>),
    Exists(Var, Arc<Formula>),
}

/// A formula with no free variables. Kept as an alias: closedness is checked
/// at the entry points that require it.
pub type Sentence = Formula;

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn boxed(t: Term) -> Formula {
        Formula::Box(t)
    }

    pub fn rel(r: Relation, args: Vec<Term>) -> Formula {
        Formula::Rel(r, args.into())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::bottom())
    }

    /// `(A → B) ∧ (B → A)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Arc::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Arc::new(body))
    }

    /// Wrap `body` in universal quantifiers, `prefix[0]` outermost.
    pub fn forall_all(prefix: &[Var], body: Formula) -> Formula {
        prefix
            .iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v.clone(), acc))
    }

    /// ⊥, i.e. `0 = 1`.
    pub fn bottom() -> Formula {
        Formula::Eq(Term::Zero, Term::numeral(1u32))
    }

    pub fn is_bottom(&self) -> bool {
        *self == Formula::bottom()
    }

    /// `A` if this is `A → ⊥`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(a, b) if b.is_bottom() => Some(a),
            _ => None,
        }
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Strip exactly `k` leading universal quantifiers.
    pub fn strip_foralls(&self, k: usize) -> Option<(Vec<Var>, &Formula)> {
        let mut vars = Vec::with_capacity(k);
        let mut cur = self;
        for _ in 0..k {
            match cur {
                Formula::Forall(v, body) => {
                    vars.push(v.clone());
                    cur = body;
                }
                _ => return None,
            }
        }
        Some((vars, cur))
    }

    /// Number of leading universal quantifiers.
    pub fn forall_depth(&self) -> usize {
        let mut n = 0;
        let mut cur = self;
        while let Formula::Forall(_, body) = cur {
            n += 1;
            cur = body;
        }
        n
    }

    /// Strip the given quantifier prefix (names must match).
    pub fn strip_prefix(&self, prefix: &[Var]) -> Option<&Formula> {
        let mut cur = self;
        for v in prefix {
            match cur {
                Formula::Forall(w, body) if w == v => cur = body,
                _ => return None,
            }
        }
        Some(cur)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut add_term = |t: &Term, bound: &Vec<Var>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Eq(a, b) => {
                add_term(a, bound);
                add_term(b, bound);
            }
            Formula::Box(t) => add_term(t, bound),
            Formula::Rel(_, args) => args.iter().for_each(|t| add_term(t, bound)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, v: &Var) -> bool {
        match self {
            Formula::Eq(a, b) => a.mentions_var(v) || b.mentions_var(v),
            Formula::Box(t) => t.mentions_var(v),
            Formula::Rel(_, args) => args.iter().any(|t| t.mentions_var(v)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.has_free(v) || b.has_free(v)
            }
            Formula::Forall(w, body) | Formula::Exists(w, body) => w != v && body.has_free(v),
        }
    }

    /// Capture-checked substitution of `t` for the free occurrences of `v`.
    /// Returns `None` if a variable of `t` would be captured.
    pub fn subst(&self, v: &Var, t: &Term) -> Option<Formula> {
        if !self.has_free(v) {
            return Some(self.clone());
        }
        Some(match self {
            Formula::Eq(a, b) => Formula::Eq(a.subst(v, t), b.subst(v, t)),
            Formula::Box(a) => Formula::Box(a.subst(v, t)),
            Formula::Rel(r, args) => {
                Formula::Rel(r.clone(), args.iter().map(|a| a.subst(v, t)).collect())
            }
            Formula::And(a, b) => Formula::and(a.subst(v, t)?, b.subst(v, t)?),
            Formula::Or(a, b) => Formula::or(a.subst(v, t)?, b.subst(v, t)?),
            Formula::Imp(a, b) => Formula::imp(a.subst(v, t)?, b.subst(v, t)?),
            Formula::Forall(w, body) | Formula::Exists(w, body) => {
                if t.mentions_var(w) {
                    return None;
                }
                let body = Arc::new(body.subst(v, t)?);
                match self {
                    Formula::Forall(..) => Formula::Forall(w.clone(), body),
                    _ => Formula::Exists(w.clone(), body),
                }
            }
        })
    }

    /// Substitute several variables one after another.
    pub fn subst_all<'a>(
        &self,
        pairs: impl IntoIterator<Item = (&'a Var, &'a Term)>,
    ) -> Option<Formula> {
        let mut cur = self.clone();
        for (v, t) in pairs {
            cur = cur.subst(v, t)?;
        }
        Some(cur)
    }

    /// Universal closure over the free variables in their total order.
    pub fn universal_closure(&self) -> Formula {
        let vars: Vec<Var> = self.free_vars().into_iter().collect();
        Formula::forall_all(&vars, self.clone())
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Formula::Eq(a, b) => vec![a, b],
            Formula::Box(t) => vec![t],
            Formula::Rel(_, args) => args.iter().collect(),
            _ => vec![],
        }
    }

    pub fn contains_box(&self) -> bool {
        match self {
            Formula::Box(_) => true,
            Formula::Eq(..) | Formula::Rel(..) => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.contains_box() || b.contains_box()
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.contains_box(),
        }
    }

    pub fn has_kappa(&self) -> bool {
        self.max_kappa() > 0
    }

    pub fn max_kappa(&self) -> u32 {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.max_kappa().max(b.max_kappa())
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.max_kappa(),
            atom => atom
                .terms()
                .into_iter()
                .map(Term::max_kappa)
                .max()
                .unwrap_or(0),
        }
    }

    /// Visit every relation symbol occurring in the formula.
    pub fn relations(&self, out: &mut Vec<Relation>) {
        match self {
            Formula::Rel(r, _) => out.push(r.clone()),
            Formula::Eq(..) | Formula::Box(_) => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.relations(out);
                b.relations(out);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.relations(out),
        }
    }

    /// Number of AST nodes, terms included.
    pub fn size(&self) -> usize {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.size(),
            atom => 1 + atom.terms().into_iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.depth(),
            _ => 1,
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::print::formula_to_string(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::print::formula_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subst_respects_shadowing() {
        let n = Var::new("n");
        let a = Formula::forall(n.clone(), Formula::eq(Term::var("n"), Term::var("n")));
        assert_eq!(a.subst(&n, &Term::numeral(5u32)).unwrap(), a);
    }

    #[test]
    fn subst_detects_capture() {
        let a = Formula::forall(Var::new("y"), Formula::eq(Term::var("x"), Term::var("y")));
        assert!(a.subst(&Var::new("x"), &Term::var("y")).is_none());
        assert!(a.subst(&Var::new("x"), &Term::var("z")).is_some());
    }

    #[test]
    fn closure_uses_name_order() {
        let a = Formula::eq(Term::var("y"), Term::var("x"));
        let c = a.universal_closure();
        let (vars, _) = c.strip_foralls(2).unwrap();
        assert_eq!(vars, vec![Var::new("x"), Var::new("y")]);
        assert!(c.is_sentence());
    }
}
