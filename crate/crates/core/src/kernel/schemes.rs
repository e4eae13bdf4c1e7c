//! Axiom recognizers.
//!
//! An axiom line is a sentence `(∀p⃗)B` where `B` is an instance of one of the
//! schemes below; every split of the leading quantifier prefix is tried, so
//! universal closures in any variable order are accepted. Recognition is by
//! structural matching only: no search, no evaluation beyond the quotation
//! views of box-axiom arguments.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::quote::{quote_view, QuoteView};
use super::theory::TheoryConfig;
use crate::syntax::numeral::expand_numeral;
use crate::syntax::{decode_formula, Formula, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    K,
    S,
    AndIntro,
    AndElimLeft,
    AndElimRight,
    OrIntroLeft,
    OrIntroRight,
    OrElim,
    ExFalso,
    ForallElim,
    ExistsIntro,
    /// `(∀q⃗)(∀x)(A → B) → (∀q⃗)(A → (∀x)B)`, `x` not free in `A`.
    GenForall,
    /// `(∀q⃗)(∀x)(A → B) → (∀q⃗)((∃x)A → B)`, `x` not free in `B`.
    GenExists,
    EqRefl,
    EqSym,
    EqTrans,
    /// `s = t → u = u'` with `u'` obtained from `u` by replacing some
    /// occurrences of `s` with `t`.
    EqCongruence,
    /// `s = t → (P → Q)` with `Q` obtained from `P` likewise.
    EqLeibniz,
    SuccNonzero,
    SuccInjective,
    AddZero,
    AddSucc,
    MulZero,
    MulSucc,
    Induction,
    /// `n̄ = SS0 × m̄` or `n̄ = S(SS0 × m̄)`, one step of the dyadic numeral.
    NumeralDef,
    IterBoxZero,
    IterBoxSucc,
    ExcludedMiddle,
    BoxOrOut,
    BoxOrIn,
    BoxOrIff,
    BoxAndOut,
    BoxAndIn,
    BoxAndIff,
    BoxExists,
    BoxForallOut,
    BoxForallIn,
    BoxForallIff,
    BoxImp,
    Capture,
    Jump,
    Extra,
}

impl Scheme {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }

    pub fn is_box_axiom(self) -> bool {
        use Scheme::*;
        matches!(
            self,
            BoxOrOut
                | BoxOrIn
                | BoxOrIff
                | BoxAndOut
                | BoxAndIn
                | BoxAndIff
                | BoxExists
                | BoxForallOut
                | BoxForallIn
                | BoxForallIff
                | BoxImp
        )
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A recognized axiom: its scheme and the universally quantified prefix that
/// was stripped before matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomMatch {
    pub scheme: Scheme,
    pub prefix: Vec<Var>,
}

/// Recognize `a` as an axiom of `theory`.
pub fn is_axiom(theory: &TheoryConfig, a: &Formula) -> Option<AxiomMatch> {
    if !a.is_sentence() || !theory.in_language(a) {
        return None;
    }
    if theory.jump && *a == theory.jump_axiom() {
        return Some(AxiomMatch {
            scheme: Scheme::Jump,
            prefix: vec![],
        });
    }
    if theory.extra_axioms.contains(a) {
        return Some(AxiomMatch {
            scheme: Scheme::Extra,
            prefix: vec![],
        });
    }
    for j in 0..=a.forall_depth() {
        let (prefix, body) = a.strip_foralls(j)?;
        if let Some(scheme) = match_body(theory, body) {
            return Some(AxiomMatch { scheme, prefix });
        }
    }
    None
}

/// Axioms other than the jump axiom. This is the relation `Ax_T` exposes.
pub fn is_main_axiom(theory: &TheoryConfig, a: &Formula) -> bool {
    is_axiom(theory, a).is_some_and(|m| m.scheme != Scheme::Jump)
}

fn match_body(theory: &TheoryConfig, f: &Formula) -> Option<Scheme> {
    logical(f)
        .or_else(|| equality(f))
        .or_else(|| arithmetic(f))
        .or_else(|| (theory.classical && excluded_middle(f)).then_some(Scheme::ExcludedMiddle))
        .or_else(|| if theory.box_axioms { boxes(f) } else { None })
}

// ---- shape helpers ----

fn imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Imp(a, b) => Some((a, b)),
        _ => None,
    }
}

fn and(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::And(a, b) => Some((a, b)),
        _ => None,
    }
}

fn or(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Or(a, b) => Some((a, b)),
        _ => None,
    }
}

fn forall(f: &Formula) -> Option<(&Var, &Formula)> {
    match f {
        Formula::Forall(v, b) => Some((v, b)),
        _ => None,
    }
}

fn exists(f: &Formula) -> Option<(&Var, &Formula)> {
    match f {
        Formula::Exists(v, b) => Some((v, b)),
        _ => None,
    }
}

fn eq(f: &Formula) -> Option<(&Term, &Term)> {
    match f {
        Formula::Eq(a, b) => Some((a, b)),
        _ => None,
    }
}

fn boxed(f: &Formula) -> Option<&Term> {
    match f {
        Formula::Box(t) => Some(t),
        _ => None,
    }
}

fn succ(t: &Term) -> Option<&Term> {
    match t {
        Term::Succ(a) => Some(a),
        _ => None,
    }
}

// ---- logic ----

fn logical(f: &Formula) -> Option<Scheme> {
    let (l, r) = imp(f)?;
    let s = if imp(r).is_some_and(|(_, a)| a == l) {
        Scheme::K
    } else if s_scheme(l, r) {
        Scheme::S
    } else if imp(r)
        .and_then(|(b, ab)| and(ab).map(|(a2, b2)| a2 == l && b2 == b))
        .unwrap_or(false)
    {
        Scheme::AndIntro
    } else if and(l).is_some_and(|(a, _)| a == r) {
        Scheme::AndElimLeft
    } else if and(l).is_some_and(|(_, b)| b == r) {
        Scheme::AndElimRight
    } else if or(r).is_some_and(|(a, _)| a == l) {
        Scheme::OrIntroLeft
    } else if or(r).is_some_and(|(_, b)| b == l) {
        Scheme::OrIntroRight
    } else if or_elim(l, r) {
        Scheme::OrElim
    } else if l.is_bottom() {
        Scheme::ExFalso
    } else if forall(l).is_some_and(|(x, a)| instance_of(a, x, r)) {
        Scheme::ForallElim
    } else if exists(r).is_some_and(|(x, a)| instance_of(a, x, l)) {
        Scheme::ExistsIntro
    } else if generalization(l, r, false) {
        Scheme::GenForall
    } else if generalization(l, r, true) {
        Scheme::GenExists
    } else if induction(l, r) {
        Scheme::Induction
    } else {
        return None;
    };
    Some(s)
}

/// `(A → (B → C)) → ((A → B) → (A → C))`.
fn s_scheme(l: &Formula, r: &Formula) -> bool {
    let Some((a, bc)) = imp(l) else { return false };
    let Some((b, c)) = imp(bc) else { return false };
    let Some((ab, ac)) = imp(r) else { return false };
    let Some((a2, b2)) = imp(ab) else {
        return false;
    };
    let Some((a3, c3)) = imp(ac) else {
        return false;
    };
    a == a2 && a == a3 && b == b2 && c == c3
}

/// `(A → C) → ((B → C) → (A ∨ B → C))`.
fn or_elim(l: &Formula, r: &Formula) -> bool {
    let Some((a, c)) = imp(l) else { return false };
    let Some((bc, rest)) = imp(r) else {
        return false;
    };
    let Some((b, c2)) = imp(bc) else { return false };
    let Some((ab, c3)) = imp(rest) else {
        return false;
    };
    let Some((a2, b2)) = or(ab) else { return false };
    a == a2 && b == b2 && c == c2 && c == c3
}

/// Both sides share the prefix `q⃗`; below it `l` is `(∀x)(A → B)` and `r` is
/// `A → (∀x)B` (or `(∃x)A → B` for the existential form).
fn generalization(l: &Formula, r: &Formula, existential: bool) -> bool {
    let depth = l.forall_depth();
    (0..depth).any(|j| {
        let Some((q, lb)) = l.strip_foralls(j) else {
            return false;
        };
        let Some(rb) = r.strip_prefix(&q) else {
            return false;
        };
        let Some((x, body)) = forall(lb) else {
            return false;
        };
        let Some((a, b)) = imp(body) else {
            return false;
        };
        let Some((ra, rb)) = imp(rb) else {
            return false;
        };
        if existential {
            exists(ra).is_some_and(|(x2, a2)| x2 == x && a2 == a) && rb == b && !b.has_free(x)
        } else {
            forall(rb).is_some_and(|(x2, b2)| x2 == x && b2 == b) && ra == a && !a.has_free(x)
        }
    })
}

/// `A(0) → ((∀x)(A(x) → A(Sx)) → (∀x)A(x))`.
fn induction(l: &Formula, r: &Formula) -> bool {
    let Some((step, concl)) = imp(r) else {
        return false;
    };
    let Some((x, a)) = forall(concl) else {
        return false;
    };
    let Some((x2, sbody)) = forall(step) else {
        return false;
    };
    let Some((ax, asx)) = imp(sbody) else {
        return false;
    };
    if x != x2 || ax != a {
        return false;
    }
    let sx = Term::succ(Term::Var(x.clone()));
    a.subst(x, &Term::Zero).as_ref() == Some(l) && a.subst(x, &sx).as_ref() == Some(asx)
}

/// Is `target` equal to `pattern[x := t]` for some term `t` free for `x`?
pub fn instance_of(pattern: &Formula, x: &Var, target: &Formula) -> bool {
    let mut found = None;
    inst_formula(pattern, x, target, &mut Vec::new(), &mut found)
}

fn inst_formula(
    p: &Formula,
    x: &Var,
    q: &Formula,
    bound: &mut Vec<Var>,
    found: &mut Option<Term>,
) -> bool {
    match (p, q) {
        (Formula::Eq(a, b), Formula::Eq(c, d)) => {
            inst_term(a, x, c, bound, found) && inst_term(b, x, d, bound, found)
        }
        (Formula::Box(a), Formula::Box(c)) => inst_term(a, x, c, bound, found),
        (Formula::Rel(r, xs), Formula::Rel(s, ys)) => {
            r == s
                && xs.len() == ys.len()
                && xs
                    .iter()
                    .zip(ys.iter())
                    .all(|(a, c)| inst_term(a, x, c, bound, found))
        }
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Imp(a, b), Formula::Imp(c, d)) => {
            inst_formula(a, x, c, bound, found) && inst_formula(b, x, d, bound, found)
        }
        (Formula::Forall(v, a), Formula::Forall(w, c))
        | (Formula::Exists(v, a), Formula::Exists(w, c)) => {
            if v != w {
                return false;
            }
            if v == x {
                return a == c;
            }
            bound.push(v.clone());
            let ok = inst_formula(a, x, c, bound, found);
            bound.pop();
            ok
        }
        _ => false,
    }
}

fn inst_term(p: &Term, x: &Var, q: &Term, bound: &[Var], found: &mut Option<Term>) -> bool {
    if let Term::Var(v) = p {
        if v == x {
            if bound.iter().any(|b| q.mentions_var(b)) {
                return false;
            }
            return match found {
                Some(t) => t == q,
                None => {
                    *found = Some(q.clone());
                    true
                }
            };
        }
    }
    if !p.mentions_var(x) {
        return p == q;
    }
    p.same_head(q)
        && p.children()
            .into_iter()
            .zip(q.children())
            .all(|(a, c)| inst_term(a, x, c, bound, found))
}

// ---- equality ----

fn equality(f: &Formula) -> Option<Scheme> {
    if let Some((a, b)) = eq(f) {
        return (a == b).then_some(Scheme::EqRefl);
    }
    let (l, r) = imp(f)?;
    let (s, t) = eq(l)?;
    if let Some((t2, s2)) = eq(r) {
        if t2 == t && s2 == s {
            return Some(Scheme::EqSym);
        }
        if congruent_term(t2, s2, s, t, &[]) {
            return Some(Scheme::EqCongruence);
        }
    }
    let (m, rest) = imp(r)?;
    if let (Some((s2, u)), Some((r2, u2))) = (eq(m), eq(rest)) {
        if s2 == t && r2 == s && u2 == u {
            return Some(Scheme::EqTrans);
        }
    }
    congruent_formula(m, rest, s, t, &mut Vec::new()).then_some(Scheme::EqLeibniz)
}

/// `q` is `p` with some occurrences of `s` replaced by `t`, none of them
/// under a binder of a variable of `s` or `t`.
fn congruent_term(p: &Term, q: &Term, s: &Term, t: &Term, bound: &[Var]) -> bool {
    if p == q {
        return true;
    }
    if p == s && q == t {
        return !bound.iter().any(|b| s.mentions_var(b) || t.mentions_var(b));
    }
    p.same_head(q)
        && p.children()
            .into_iter()
            .zip(q.children())
            .all(|(a, b)| congruent_term(a, b, s, t, bound))
}

fn congruent_formula(p: &Formula, q: &Formula, s: &Term, t: &Term, bound: &mut Vec<Var>) -> bool {
    if p == q {
        return true;
    }
    let terms = |xs: &[&Term], ys: &[&Term], bound: &[Var]| {
        xs.len() == ys.len()
            && xs
                .iter()
                .zip(ys)
                .all(|(a, b)| congruent_term(a, b, s, t, bound))
    };
    match (p, q) {
        (Formula::Eq(..), Formula::Eq(..)) | (Formula::Box(_), Formula::Box(_)) => {
            terms(&p.terms(), &q.terms(), bound)
        }
        (Formula::Rel(r, _), Formula::Rel(r2, _)) => {
            r == r2 && terms(&p.terms(), &q.terms(), bound)
        }
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Imp(a, b), Formula::Imp(c, d)) => {
            congruent_formula(a, c, s, t, bound) && congruent_formula(b, d, s, t, bound)
        }
        (Formula::Forall(v, a), Formula::Forall(w, c))
        | (Formula::Exists(v, a), Formula::Exists(w, c)) => {
            if v != w {
                return false;
            }
            bound.push(v.clone());
            let ok = congruent_formula(a, c, s, t, bound);
            bound.pop();
            ok
        }
        _ => false,
    }
}

// ---- arithmetic ----

fn arithmetic(f: &Formula) -> Option<Scheme> {
    if let Some((l, r)) = imp(f) {
        let (a, b) = eq(l)?;
        if r.is_bottom() && succ(a).is_some() && *b == Term::Zero {
            return Some(Scheme::SuccNonzero);
        }
        let (s, t) = (succ(a)?, succ(b)?);
        return (eq(r)? == (s, t)).then_some(Scheme::SuccInjective);
    }
    let (l, r) = eq(f)?;
    let s = match l {
        Term::Add(s, t) => match &**t {
            Term::Zero if r == &**s => Scheme::AddZero,
            Term::Succ(t) if *r == Term::succ(Term::add((**s).clone(), (**t).clone())) => {
                Scheme::AddSucc
            }
            _ => return None,
        },
        Term::Mul(s, t) => match &**t {
            Term::Zero if *r == Term::Zero => Scheme::MulZero,
            Term::Succ(t)
                if *r == Term::add(Term::mul((**s).clone(), (**t).clone()), (**s).clone()) =>
            {
                Scheme::MulSucc
            }
            _ => return None,
        },
        Term::Numeral(_) if expand_numeral(l).as_ref() == Some(r) => Scheme::NumeralDef,
        Term::IterBox(k, g) => match &**k {
            Term::Zero if r == &**g => Scheme::IterBoxZero,
            Term::Succ(k) => match r {
                Term::Sub(c, rest)
                    if is_box_of_var(c)
                        && **rest == Term::iterbox((**k).clone(), (**g).clone()) =>
                {
                    Scheme::IterBoxSucc
                }
                _ => return None,
            },
            _ => return None,
        },
        _ => return None,
    };
    Some(s)
}

/// A numeral coding `□(v)` for a variable `v`.
fn is_box_of_var(c: &Term) -> bool {
    c.numeral_value()
        .and_then(|n| decode_formula(&n))
        .is_some_and(|f| matches!(f, Formula::Box(Term::Var(_))))
}

fn excluded_middle(f: &Formula) -> bool {
    or(f).is_some_and(|(a, na)| na.negated() == Some(a) && !a.contains_box())
}

// ---- box axioms ----

fn boxes(f: &Formula) -> Option<Scheme> {
    if let Some((fwd, back)) = and(f) {
        let (l, r) = imp(fwd)?;
        if imp(back)? != (r, l) {
            return None;
        }
        return match box_directional(l, r)? {
            Scheme::BoxOrOut | Scheme::BoxOrIn => Some(Scheme::BoxOrIff),
            Scheme::BoxAndOut | Scheme::BoxAndIn => Some(Scheme::BoxAndIff),
            Scheme::BoxForallOut | Scheme::BoxForallIn => Some(Scheme::BoxForallIff),
            _ => None,
        };
    }
    let (l, r) = imp(f)?;
    box_directional(l, r)
        .or_else(|| box_imp(l, r).then_some(Scheme::BoxImp))
        .or_else(|| capture(l, r).then_some(Scheme::Capture))
}

/// Views of `t`, both raw and normalized, when `t` denotes a sentence.
fn view(t: &Term) -> Option<QuoteView> {
    let v = quote_view(t)?;
    v.is_total().then(|| v.normalized())
}

fn box_view(f: &Formula) -> Option<QuoteView> {
    view(boxed(f)?)
}

/// The three directional shapes: connective splitting for ∨/∧ and the
/// quantifier shapes. `l → r` in either orientation.
fn box_directional(l: &Formula, r: &Formula) -> Option<Scheme> {
    if let Some(whole) = box_view(l) {
        if let Some(s) = split(&whole, r) {
            return Some(match s {
                Split::Or => Scheme::BoxOrOut,
                Split::And => Scheme::BoxAndOut,
                Split::Forall => Scheme::BoxForallOut,
                Split::Exists => return None,
            });
        }
    }
    if let Some(whole) = box_view(r) {
        if let Some(s) = split(&whole, l) {
            return Some(match s {
                Split::Or => Scheme::BoxOrIn,
                Split::And => Scheme::BoxAndIn,
                Split::Forall => Scheme::BoxForallIn,
                Split::Exists => Scheme::BoxExists,
            });
        }
    }
    None
}

enum Split {
    Or,
    And,
    Forall,
    Exists,
}

/// Does `parts` distribute □ over the top connective of `whole`?
fn split(whole: &QuoteView, parts: &Formula) -> Option<Split> {
    let two = |x: &Formula, y: &Formula, p: &Formula, q: &Formula| {
        box_view(p).as_ref() == Some(&whole.restrict(x))
            && box_view(q).as_ref() == Some(&whole.restrict(y))
    };
    match (&whole.template, parts) {
        (Formula::Or(x, y), Formula::Or(p, q)) if two(x, y, p, q) => Some(Split::Or),
        (Formula::And(x, y), Formula::And(p, q)) if two(x, y, p, q) => Some(Split::And),
        (Formula::Forall(m, x), Formula::Forall(n, p)) if instance_view(whole, m, x, n, p) => {
            Some(Split::Forall)
        }
        (Formula::Exists(m, x), Formula::Exists(n, p)) if instance_view(whole, m, x, n, p) => {
            Some(Split::Exists)
        }
        _ => None,
    }
}

/// `p` is `□(t)` with `t` viewed as `X` under `σ ∪ {m ↦ n}`.
fn instance_view(whole: &QuoteView, m: &Var, x: &Formula, n: &Var, p: &Formula) -> bool {
    if whole.arg_vars().contains(n) {
        return false;
    }
    let mut want = whole.restrict(x);
    if x.has_free(m) {
        want.args.insert(m.clone(), Term::Var(n.clone()));
    }
    box_view(p).as_ref() == Some(&want)
}

/// `□(t₀) → (□(t₁) → □(t₂))` with `t₀` viewed as `X → Y`.
fn box_imp(l: &Formula, r: &Formula) -> bool {
    let Some((p, q)) = imp(r) else { return false };
    let Some(whole) = box_view(l) else {
        return false;
    };
    let Formula::Imp(x, y) = &whole.template else {
        return false;
    };
    box_view(p).as_ref() == Some(&whole.restrict(x))
        && box_view(q).as_ref() == Some(&whole.restrict(y))
}

/// `A → □(t)` with `t` viewed as `(F, σ)` and `A = F[σ]`.
fn capture(l: &Formula, r: &Formula) -> bool {
    let Some(t) = boxed(r) else { return false };
    let Some(raw) = quote_view(t) else {
        return false;
    };
    if !raw.is_total() {
        return false;
    }
    raw.instantiate().as_ref() == Some(l) || raw.normalized().instantiate().as_ref() == Some(l)
}

/// Variables bound anywhere in `f`.
pub fn bound_vars(f: &Formula) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    fn go(f: &Formula, out: &mut BTreeSet<Var>) {
        match f {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                go(a, out);
                go(b, out);
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                out.insert(v.clone());
                go(b, out);
            }
            _ => {}
        }
    }
    go(f, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{box_quote, parse_formula, parse_sentence, quote};

    fn scheme(src: &str) -> Option<Scheme> {
        is_axiom(&TheoryConfig::sbox_pa(), &parse_sentence(src).unwrap()).map(|m| m.scheme)
    }

    fn scheme_of(f: &Formula) -> Option<Scheme> {
        is_axiom(&TheoryConfig::sbox_pa(), f).map(|m| m.scheme)
    }

    #[test]
    fn logical_schemes() {
        assert_eq!(scheme("(-> (= 0 0) (-> bot (= 0 0)))"), Some(Scheme::K));
        assert_eq!(scheme("(-> bot (= 1 1))"), Some(Scheme::ExFalso));
        assert_eq!(
            scheme("(-> (forall x (= x x)) (= (S 0) (S 0)))"),
            Some(Scheme::ForallElim)
        );
        assert_eq!(scheme("(-> (forall x (= x x)) (= 1 2))"), None);
        assert_eq!(
            scheme("(forall y (-> (forall x (= x y)) (= y y)))"),
            Some(Scheme::ForallElim)
        );
    }

    #[test]
    fn forall_elim_respects_capture() {
        // (∀x)(∃y)(x ≠ y) → (∃y)(y ≠ y) is not an instance
        assert_eq!(
            scheme("(forall y (-> (forall x (exists y (not (= x y)))) (exists y (not (= y y)))))"),
            None
        );
    }

    #[test]
    fn generalization_side_condition() {
        assert_eq!(
            scheme("(-> (forall x (-> (= 0 0) (= x x))) (-> (= 0 0) (forall x (= x x))))"),
            Some(Scheme::GenForall)
        );
        assert_eq!(
            scheme(
                "(forall y (-> (forall y (-> (= y 0) (= y y))) (-> (= y 0) (forall y (= y y)))))"
            ),
            None
        );
        assert_eq!(
            scheme("(-> (forall x (-> (= x 0) (= 0 0))) (-> (exists x (= x 0)) (= 0 0)))"),
            Some(Scheme::GenExists)
        );
    }

    #[test]
    fn arithmetic_schemes() {
        assert_eq!(scheme("(forall x (= (+ x 0) x))"), Some(Scheme::AddZero));
        assert_eq!(
            scheme("(forall x (forall y (= (* x (S y)) (+ (* x y) x))))"),
            Some(Scheme::MulSucc)
        );
        assert_eq!(
            scheme("(= 5 (S (* (S (S 0)) 2)))"),
            Some(Scheme::NumeralDef)
        );
        let ind = "(-> (= (+ 0 0) 0) (-> (forall x (-> (= (+ x 0) x) (= (+ (S x) 0) (S x)))) (forall x (= (+ x 0) x))))";
        assert_eq!(scheme(ind), Some(Scheme::Induction));
    }

    #[test]
    fn excluded_middle_only_box_free() {
        assert_eq!(
            scheme("(or (= 0 1) (not (= 0 1)))"),
            Some(Scheme::ExcludedMiddle)
        );
        let b = box_quote(&Formula::bottom());
        assert_eq!(scheme_of(&Formula::or(b.clone(), Formula::not(b))), None);
    }

    #[test]
    fn box_or_iff_instance() {
        let a = parse_sentence("(= 0 0)").unwrap();
        let b = Formula::bottom();
        let whole = box_quote(&Formula::or(a.clone(), b.clone()));
        let parts = Formula::or(box_quote(&a), box_quote(&b));
        assert_eq!(
            scheme_of(&Formula::iff(whole.clone(), parts.clone())),
            Some(Scheme::BoxOrIff)
        );
        assert_eq!(
            scheme_of(&Formula::imp(whole.clone(), parts.clone())),
            Some(Scheme::BoxOrOut)
        );
        assert_eq!(
            scheme_of(&Formula::imp(parts, whole)),
            Some(Scheme::BoxOrIn)
        );
    }

    #[test]
    fn box_forall_with_sub() {
        let a = parse_formula("(= n n)").unwrap();
        let n = Var::new("n");
        let whole = box_quote(&Formula::forall(n.clone(), a.clone()));
        let inst = Formula::forall(n.clone(), Formula::Box(Term::sub(quote(&a), Term::Var(n))));
        assert_eq!(
            scheme_of(&Formula::imp(whole, inst)),
            Some(Scheme::BoxForallOut)
        );
    }

    #[test]
    fn capture_and_release() {
        let a = parse_sentence("(= 0 0)").unwrap();
        assert_eq!(
            scheme_of(&Formula::imp(a.clone(), box_quote(&a))),
            Some(Scheme::Capture)
        );
        assert_eq!(scheme_of(&Formula::imp(box_quote(&a), a)), None);
        let open = parse_formula("(= n 0)").unwrap();
        let cap = Formula::forall(
            Var::new("n"),
            Formula::imp(
                open.clone(),
                Formula::Box(Term::sub(quote(&open), Term::var("n"))),
            ),
        );
        assert_eq!(scheme_of(&cap), Some(Scheme::Capture));
    }

    #[test]
    fn box_axioms_need_box_theory() {
        let a = parse_sentence("(= 0 0)").unwrap();
        assert!(is_axiom(&TheoryConfig::pa(), &Formula::imp(a.clone(), box_quote(&a))).is_none());
    }

    #[test]
    fn jump_is_not_a_main_axiom() {
        let t = TheoryConfig::sbox_pa();
        assert_eq!(is_axiom(&t, &t.jump_axiom()).unwrap().scheme, Scheme::Jump);
        assert!(!is_main_axiom(&t, &t.jump_axiom()));
    }
}
