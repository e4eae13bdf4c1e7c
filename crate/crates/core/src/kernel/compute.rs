//! Computation axioms: closed atomic claims, and negations of atomic claims,
//! that the kernel settles by evaluation.
//!
//! * `s = t` when both sides evaluate to the same number, `¬(s = t)` when not;
//! * `Ax_T(c)` / `¬Ax_T(c)` by running the axiom recognizer of `T` on the
//!   sentence coded by `c`;
//! * `ProofOf_T(g, c)` / its negation by decoding `g` and checking it;
//! * `Prov_T(c)` only when a checked proof of the coded sentence is
//!   registered in the store. Its negation is never a computation.

use num_bigint::BigUint;
use serde::Serialize;

use super::checker::check_proof;
use super::proof::decode_proof;
use super::schemes::is_main_axiom;
use super::store::ProofStore;
use super::theory::TheoryConfig;
use crate::syntax::{
    decode_sentence, encode_formula, eval_term, EvalError, Formula, Relation, Term,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Computation {
    TrueEquation,
    FalseEquation,
    IsAxiom,
    IsNotAxiom,
    IsProof,
    IsNotProof,
    Registered,
}

impl Computation {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

fn eval(t: &Term) -> Result<BigUint, EvalError> {
    eval_term(t, None)
}

/// Is `a` a true computation claim? `Err` when evaluation itself fails, for
/// instance on an `iterbox` exponent beyond the unfolding limit.
pub fn admit_computation(
    theory: &TheoryConfig,
    a: &Formula,
    store: &ProofStore,
) -> Result<Option<Computation>, EvalError> {
    if !a.is_sentence() || a.has_kappa() {
        return Ok(None);
    }
    let (atom, positive) = match a.negated() {
        Some(b) => (b, false),
        None => (a, true),
    };
    let pick = |holds: bool, yes: Computation, no: Computation| {
        Ok(match (holds, positive) {
            (true, true) => Some(yes),
            (false, false) => Some(no),
            _ => None,
        })
    };
    match atom {
        Formula::Eq(l, r) => {
            let holds = eval(l)? == eval(r)?;
            pick(holds, Computation::TrueEquation, Computation::FalseEquation)
        }
        Formula::Rel(Relation::Ax(name), args) => {
            let Some(t) = theory.resolve(name) else {
                return Ok(None);
            };
            let c = eval(&args[0])?;
            let holds = decode_sentence(&c).is_some_and(|x| is_main_axiom(&t, &x));
            pick(holds, Computation::IsAxiom, Computation::IsNotAxiom)
        }
        Formula::Rel(Relation::ProofOf(name), args) => {
            let Some(t) = theory.resolve(name) else {
                return Ok(None);
            };
            let g = eval(&args[0])?;
            let c = eval(&args[1])?;
            let holds = is_proof_of(&t, &g, &c, store);
            pick(holds, Computation::IsProof, Computation::IsNotProof)
        }
        Formula::Rel(Relation::Prov(name), args) if positive => {
            let c = eval(&args[0])?;
            let holds = decode_sentence(&c).is_some_and(|x| store.contains(name, &x));
            Ok(holds.then_some(Computation::Registered))
        }
        _ => Ok(None),
    }
}

/// `g` codes an unconditional proof in `theory` whose conclusion has code `c`.
pub fn is_proof_of(theory: &TheoryConfig, g: &BigUint, c: &BigUint, store: &ProofStore) -> bool {
    let Some(p) = decode_proof(g, &theory.name) else {
        return false;
    };
    match p.conclusion() {
        Some(concl) if encode_formula(concl) == *c => check_proof(theory, &p, store).accepted,
        _ => false,
    }
}
