use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero as _;

/// A variable name. Names are totally ordered by their string value, which is
/// the order used for canonical universal closure and for `sub`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// First name of the form `base`, `base1`, `base2`, ... not in `avoid`.
    pub fn fresh(base: &str, avoid: &BTreeSet<Var>) -> Var {
        let first = Var::new(base);
        if !avoid.contains(&first) {
            return first;
        }
        (1..)
            .map(|i| Var::new(&format!("{base}{i}")))
            .find(|v| !avoid.contains(v))
            .expect("infinitely many candidates")
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Arithmetic terms of the object language.
///
/// `Numeral(n)` is the canonical dyadic numeral of `n >= 1` kept as a single
/// node; `numeral_of(0)` is `Zero`. [`expand_numeral`](super::numeral::expand_numeral)
/// unfolds one level of the dyadic recursion.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    Succ(Arc<Term>),
    Add(Arc<Term>, Arc<Term>),
    Mul(Arc<Term>, Arc<Term>),
    Var(Var),
    /// The constant κᵢ, `i >= 1`.
    Kappa(u32),
    Numeral(Arc<BigUint>),
    /// `sub(g, c)`: code of the formula coded by `g` with the numeral of `c`
    /// substituted for its least free variable.
    Sub(Arc<Term>, Arc<Term>),
    /// `num(n)`: code of the canonical numeral of `n`.
    Num(Arc<Term>),
    /// `iterbox(k, g)`: code of □ᵏ applied to the sentence coded by `g`.
    IterBox(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Arc::new(t))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Arc::new(a), Arc::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Arc::new(a), Arc::new(b))
    }

    pub fn sub(g: Term, c: Term) -> Term {
        Term::Sub(Arc::new(g), Arc::new(c))
    }

    pub fn num(n: Term) -> Term {
        Term::Num(Arc::new(n))
    }

    pub fn iterbox(k: Term, g: Term) -> Term {
        Term::IterBox(Arc::new(k), Arc::new(g))
    }

    /// The canonical numeral of `n`.
    pub fn numeral(n: impl Into<BigUint>) -> Term {
        let n = n.into();
        if n.is_zero() {
            Term::Zero
        } else {
            Term::Numeral(Arc::new(n))
        }
    }

    /// Value of the term if it is a canonical numeral.
    pub fn numeral_value(&self) -> Option<BigUint> {
        match self {
            Term::Zero => Some(BigUint::zero()),
            Term::Numeral(n) => Some((**n).clone()),
            _ => None,
        }
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Zero | Term::Var(_) | Term::Kappa(_) | Term::Numeral(_) => vec![],
            Term::Succ(a) | Term::Num(a) => vec![a],
            Term::Add(a, b) | Term::Mul(a, b) | Term::Sub(a, b) | Term::IterBox(a, b) => {
                vec![a, b]
            }
        }
    }

    /// Rebuild a node of the same shape with new children.
    pub(crate) fn with_children(&self, mut kids: Vec<Term>) -> Term {
        let mut next = || Arc::new(kids.remove(0));
        match self {
            Term::Zero | Term::Var(_) | Term::Kappa(_) | Term::Numeral(_) => self.clone(),
            Term::Succ(_) => Term::Succ(next()),
            Term::Num(_) => Term::Num(next()),
            Term::Add(..) => Term::Add(next(), next()),
            Term::Mul(..) => Term::Mul(next(), next()),
            Term::Sub(..) => Term::Sub(next(), next()),
            Term::IterBox(..) => Term::IterBox(next(), next()),
        }
    }

    pub fn same_head(&self, other: &Term) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
            && match (self, other) {
                (Term::Var(a), Term::Var(b)) => a == b,
                (Term::Kappa(a), Term::Kappa(b)) => a == b,
                (Term::Numeral(a), Term::Numeral(b)) => a == b,
                _ => true,
            }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            _ => self
                .children()
                .into_iter()
                .for_each(|c| c.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            _ => self.children().into_iter().all(Term::is_closed),
        }
    }

    pub fn mentions_var(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            _ => self.children().into_iter().any(|c| c.mentions_var(v)),
        }
    }

    pub fn has_kappa(&self) -> bool {
        match self {
            Term::Kappa(_) => true,
            _ => self.children().into_iter().any(Term::has_kappa),
        }
    }

    pub fn max_kappa(&self) -> u32 {
        match self {
            Term::Kappa(i) => *i,
            _ => self
                .children()
                .into_iter()
                .map(Term::max_kappa)
                .max()
                .unwrap_or(0),
        }
    }

    /// Replace every occurrence of `v` by `t`. Terms have no binders.
    pub fn subst(&self, v: &Var, t: &Term) -> Term {
        match self {
            Term::Var(w) if w == v => t.clone(),
            Term::Var(_) | Term::Zero | Term::Kappa(_) | Term::Numeral(_) => self.clone(),
            _ => {
                if !self.mentions_var(v) {
                    return self.clone();
                }
                self.with_children(self.children().into_iter().map(|c| c.subst(v, t)).collect())
            }
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Term::size).sum::<usize>()
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::print::term_to_string(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::print::term_to_string(self))
    }
}
