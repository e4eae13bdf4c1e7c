//! Canonical numerals and closed-term evaluation.
//!
//! The canonical numeral of `n` is dyadic: `2m ↦ (SS0)·m̄` and
//! `2m+1 ↦ S((SS0)·m̄)`, so its size is logarithmic in `n`. Inside the AST it
//! is stored as the single node [`Term::Numeral`].

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use super::codec::{decode_formula, encode_formula, encode_term};
use super::formula::Formula;
use super::term::{Term, Var};

/// Values assigned to the constants κᵢ.
pub type KappaEnv = BTreeMap<u32, BigUint>;

/// Largest exponent `iterbox` will unfold.
pub const ITERBOX_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("term is not closed: variable `{0}`")]
    Open(Var),
    #[error("no value assigned to kappa {0}")]
    UnassignedKappa(u32),
    #[error("iterbox exponent {0} exceeds the evaluation limit")]
    TooLarge(BigUint),
}

pub fn numeral_of(n: impl Into<BigUint>) -> Term {
    Term::numeral(n)
}

pub fn two() -> Term {
    Term::succ(Term::succ(Term::Zero))
}

/// One step of the dyadic recursion, `None` for non-numerals and for `0`.
pub fn expand_numeral(t: &Term) -> Option<Term> {
    let n = match t {
        Term::Numeral(n) => (**n).clone(),
        _ => return None,
    };
    let half = numeral_of(&n >> 1u32);
    let doubled = Term::mul(two(), half);
    Some(if n.bit(0) {
        Term::succ(doubled)
    } else {
        doubled
    })
}

/// Fully expanded numeral over `0, S, +, ×`. Size is O(log n).
pub fn dyadic_numeral(n: &BigUint) -> Term {
    if n.is_zero() {
        return Term::Zero;
    }
    let doubled = Term::mul(two(), dyadic_numeral(&(n >> 1u32)));
    if n.bit(0) {
        Term::succ(doubled)
    } else {
        doubled
    }
}

/// Evaluate a closed term. κ constants need `env`.
pub fn eval_term(t: &Term, env: Option<&KappaEnv>) -> Result<BigUint, EvalError> {
    Ok(match t {
        Term::Zero => BigUint::zero(),
        Term::Numeral(n) => (**n).clone(),
        Term::Succ(a) => eval_term(a, env)? + 1u32,
        Term::Add(a, b) => eval_term(a, env)? + eval_term(b, env)?,
        Term::Mul(a, b) => eval_term(a, env)? * eval_term(b, env)?,
        Term::Var(v) => return Err(EvalError::Open(v.clone())),
        Term::Kappa(i) => env
            .and_then(|e| e.get(i))
            .cloned()
            .ok_or(EvalError::UnassignedKappa(*i))?,
        Term::Sub(g, c) => sub_value(&eval_term(g, env)?, &eval_term(c, env)?),
        Term::Num(n) => num_value(&eval_term(n, env)?),
        Term::IterBox(k, g) => {
            let k = eval_term(k, env)?;
            let steps = k
                .to_u64()
                .filter(|s| *s <= ITERBOX_LIMIT)
                .ok_or_else(|| EvalError::TooLarge(k.clone()))?;
            let mut g = eval_term(g, env)?;
            for _ in 0..steps {
                g = box_code_value(&g);
            }
            g
        }
    })
}

/// `sub(g, c)`: if `g` codes a formula with a free variable, the code of that
/// formula with the numeral of `c` put in for its least free variable;
/// otherwise `g` itself. Total on all naturals.
pub fn sub_value(g: &BigUint, c: &BigUint) -> BigUint {
    let Some(f) = decode_formula(g) else {
        return g.clone();
    };
    let Some(v) = f.free_vars().into_iter().next() else {
        return g.clone();
    };
    let f = f
        .subst(&v, &numeral_of(c.clone()))
        .expect("numerals are closed, substitution cannot capture");
    encode_formula(&f)
}

/// `num(n)`: code of the canonical numeral of `n`.
pub fn num_value(n: &BigUint) -> BigUint {
    encode_term(&numeral_of(n.clone()))
}

/// Code of `□(x̄)`.
pub fn box_code_value(x: &BigUint) -> BigUint {
    encode_formula(&Formula::Box(numeral_of(x.clone())))
}

/// Is `n` equal to one?
pub fn is_one(n: &BigUint) -> bool {
    n.is_one()
}
