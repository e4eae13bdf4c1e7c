//! The proof checker. Its only inference rule is quantified modus ponens:
//!
//! ```text
//! (∀p⃗)(A → B)    (∀p⃗)A
//! ──────────────────────
//!        (∀p⃗)B
//! ```
//!
//! with the same prefix `p⃗` on all three lines. Every other line is an axiom,
//! a computation axiom or a declared hypothesis.

use std::fmt;

use serde::Serialize;

use super::compute::admit_computation;
use super::proof::{Justification, ProofObject};
use super::schemes::is_axiom;
use super::store::ProofStore;
use super::theory::TheoryConfig;
use crate::syntax::{formula_to_string, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectKind {
    EmptyProof,
    TheoryMismatch,
    NotASentence,
    OutOfLanguage,
    NotAnAxiom,
    EvaluationFailed,
    BadReference,
    NotAnImplication,
    MinorMismatch,
    ConclusionMismatch,
    UnknownHypothesis,
    HypothesisMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    /// 1-based line index; `None` for whole-proof failures.
    pub line: Option<usize>,
    pub kind: RejectKind,
    pub message: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(i) => write!(f, "line {i}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineReport {
    pub index: usize,
    /// `axiom:<scheme>`, `computation:<kind>`, `mp`, or `hyp:<name>`.
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub theory: String,
    pub accepted: bool,
    /// Accepted relative to the listed hypotheses.
    pub conditional: bool,
    pub hypotheses: Vec<String>,
    pub conclusion: Option<String>,
    pub lines: Vec<LineReport>,
    pub error: Option<Rejection>,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn reject(line: Option<usize>, kind: RejectKind, message: impl Into<String>) -> Rejection {
    Rejection {
        line,
        kind,
        message: message.into(),
    }
}

/// Check `proof` line by line against `theory`. `Prov` computation claims
/// consult `store`.
pub fn check_proof(theory: &TheoryConfig, proof: &ProofObject, store: &ProofStore) -> CheckReport {
    let mut report = CheckReport {
        theory: theory.name.to_string(),
        accepted: false,
        conditional: proof.is_conditional(),
        hypotheses: proof.hypotheses.iter().map(|h| h.name.clone()).collect(),
        conclusion: proof.conclusion().map(formula_to_string),
        lines: Vec::with_capacity(proof.lines.len()),
        error: None,
    };
    match check_lines(theory, proof, store, &mut report.lines) {
        Ok(()) => report.accepted = true,
        Err(e) => report.error = Some(e),
    }
    report
}

fn check_lines(
    theory: &TheoryConfig,
    proof: &ProofObject,
    store: &ProofStore,
    out: &mut Vec<LineReport>,
) -> Result<(), Rejection> {
    if proof.theory != theory.name {
        return Err(reject(
            None,
            RejectKind::TheoryMismatch,
            format!(
                "proof is for `{}`, checking against `{}`",
                proof.theory, theory.name
            ),
        ));
    }
    if proof.lines.is_empty() {
        return Err(reject(None, RejectKind::EmptyProof, "proof has no lines"));
    }
    for h in &proof.hypotheses {
        if !h.sentence.is_sentence() || !theory.in_language(&h.sentence) {
            return Err(reject(
                None,
                RejectKind::OutOfLanguage,
                format!("hypothesis `{}` is not a sentence of the theory", h.name),
            ));
        }
    }
    for (i, line) in proof.lines.iter().enumerate() {
        let index = i + 1;
        let a = &line.sentence;
        let free = a.free_vars();
        if !free.is_empty() {
            let names: Vec<_> = free.iter().map(|v| v.name().to_owned()).collect();
            return Err(reject(
                Some(index),
                RejectKind::NotASentence,
                format!("free variables: {}", names.join(", ")),
            ));
        }
        if !theory.in_language(a) {
            return Err(reject(
                Some(index),
                RejectKind::OutOfLanguage,
                "uses a symbol the theory does not admit",
            ));
        }
        let rule = match &line.justification {
            Justification::Axiom(_) | Justification::Computation => {
                axiom_or_computation(theory, a, store)
                    .map_err(|(kind, m)| reject(Some(index), kind, m))?
            }
            Justification::Mp { major, minor } => {
                check_mp(proof, i, *major, *minor)
                    .map_err(|(kind, m)| reject(Some(index), kind, m))?;
                "mp".to_owned()
            }
            Justification::Hypothesis(name) => match proof.hypothesis(name) {
                None => {
                    return Err(reject(
                        Some(index),
                        RejectKind::UnknownHypothesis,
                        format!("no hypothesis named `{name}`"),
                    ))
                }
                Some(h) if h != a => {
                    return Err(reject(
                        Some(index),
                        RejectKind::HypothesisMismatch,
                        format!("line differs from hypothesis `{name}`"),
                    ))
                }
                Some(_) => format!("hyp:{name}"),
            },
        };
        out.push(LineReport { index, rule });
    }
    Ok(())
}

fn axiom_or_computation(
    theory: &TheoryConfig,
    a: &Formula,
    store: &ProofStore,
) -> Result<String, (RejectKind, String)> {
    if let Some(m) = is_axiom(theory, a) {
        return Ok(format!("axiom:{}", m.scheme));
    }
    match admit_computation(theory, a, store) {
        Ok(Some(c)) => Ok(format!("computation:{}", c.name())),
        Ok(None) => Err((
            RejectKind::NotAnAxiom,
            "neither an axiom nor a true computation claim".to_owned(),
        )),
        Err(e) => Err((RejectKind::EvaluationFailed, e.to_string())),
    }
}

fn check_mp(
    proof: &ProofObject,
    i: usize,
    major: usize,
    minor: usize,
) -> Result<(), (RejectKind, String)> {
    if major >= i || minor >= i {
        return Err((
            RejectKind::BadReference,
            "modus ponens must cite earlier lines".to_owned(),
        ));
    }
    let maj = &proof.lines[major].sentence;
    let min = &proof.lines[minor].sentence;
    let concl = &proof.lines[i].sentence;
    let k = maj.forall_depth();
    let (prefix, body) = maj.strip_foralls(k).expect("depth is exact");
    let Formula::Imp(a, b) = body else {
        return Err((
            RejectKind::NotAnImplication,
            format!("line {} is not of the form (∀p)(A → B)", major + 1),
        ));
    };
    if Formula::forall_all(&prefix, (**a).clone()) != *min {
        return Err((
            RejectKind::MinorMismatch,
            format!(
                "line {} does not match the antecedent of line {} under its prefix",
                minor + 1,
                major + 1
            ),
        ));
    }
    if Formula::forall_all(&prefix, (**b).clone()) != *concl {
        return Err((
            RejectKind::ConclusionMismatch,
            "line is not the consequent under the same prefix".to_owned(),
        ));
    }
    Ok(())
}

/// Convenience: check and report only the verdict.
pub fn accepts(theory: &TheoryConfig, proof: &ProofObject, store: &ProofStore) -> bool {
    check_proof(theory, proof, store).accepted
}
