//! Proof objects, their s-expression script form and their codes.
//!
//! ```text
//! (proof (theory NAME)
//!   (hyp NAME SENTENCE)*
//!   (line INDEX SENTENCE JUSTIFICATION)*)
//!
//! JUSTIFICATION := axiom | (axiom HINT) | computation | (mp MAJOR MINOR) | (hyp NAME)
//! ```
//!
//! Line indices in scripts are 1-based and must be consecutive. Annotations
//! other than `mp` and `hyp` are hints: the checker recomputes them.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::syntax::codec::{code_bytes, tag, write_formula, write_u64, Reader};
use crate::syntax::parse::{check_closed, formula};
use crate::syntax::print::write_formula as print_formula;
use crate::syntax::sexp::{read_all, Sexp, SyntaxError};
use crate::syntax::{Formula, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    /// Claimed axiom; the optional hint is informational.
    Axiom(Option<String>),
    Computation,
    /// Quantified modus ponens from two earlier lines (0-based).
    Mp {
        major: usize,
        minor: usize,
    },
    Hypothesis(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub sentence: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypothesis {
    pub name: String,
    pub sentence: Formula,
}

/// A finite sequence of sentences with justifications, relative to a named
/// theory and a list of named hypotheses. The last line is the conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofObject {
    pub theory: Arc<str>,
    pub hypotheses: Vec<Hypothesis>,
    pub lines: Vec<Line>,
}

impl ProofObject {
    pub fn new(theory: &str) -> Self {
        ProofObject {
            theory: Arc::from(theory),
            hypotheses: vec![],
            lines: vec![],
        }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.sentence)
    }

    pub fn is_conditional(&self) -> bool {
        !self.hypotheses.is_empty()
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Formula> {
        self.hypotheses
            .iter()
            .find(|h| h.name == name)
            .map(|h| &h.sentence)
    }

    /// Lines transitively used by the conclusion, as a sorted index list.
    pub fn used_lines(&self) -> Vec<usize> {
        let mut used = vec![false; self.lines.len()];
        if let Some(last) = self.lines.len().checked_sub(1) {
            used[last] = true;
        }
        for i in (0..self.lines.len()).rev() {
            if !used[i] {
                continue;
            }
            if let Justification::Mp { major, minor } = self.lines[i].justification {
                for j in [major, minor] {
                    if j < i {
                        used[j] = true;
                    }
                }
            }
        }
        (0..self.lines.len()).filter(|&i| used[i]).collect()
    }

    /// Drop lines the conclusion does not depend on, renumbering references.
    pub fn pruned(&self) -> ProofObject {
        let keep = self.used_lines();
        let mut map = vec![usize::MAX; self.lines.len()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let lines = keep
            .iter()
            .map(|&i| {
                let l = &self.lines[i];
                let justification = match &l.justification {
                    Justification::Mp { major, minor } => Justification::Mp {
                        major: map[*major],
                        minor: map[*minor],
                    },
                    j => j.clone(),
                };
                Line {
                    sentence: l.sentence.clone(),
                    justification,
                }
            })
            .collect::<Vec<_>>();
        let hypotheses = self
            .hypotheses
            .iter()
            .filter(|h| {
                lines.iter().any(
                    |l| matches!(&l.justification, Justification::Hypothesis(n) if *n == h.name),
                )
            })
            .cloned()
            .collect();
        ProofObject {
            theory: self.theory.clone(),
            hypotheses,
            lines,
        }
    }
}

// ---- script form ----

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {index}: {message}")]
    Line { index: usize, message: String },
}

impl From<SyntaxError> for ScriptError {
    fn from(e: SyntaxError) -> Self {
        ScriptError::Parse(ParseError::Syntax(e))
    }
}

fn serr(s: &Sexp, msg: impl Into<String>) -> ScriptError {
    SyntaxError::new(s.pos(), msg).into()
}

fn sentence(s: &Sexp) -> Result<Formula, ScriptError> {
    Ok(check_closed(formula(s)?)?)
}

fn line_ref(s: &Sexp, current: usize) -> Result<usize, ScriptError> {
    let i: usize = s
        .atom()
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| serr(s, "expected a line number"))?;
    if i == 0 || i >= current {
        return Err(ScriptError::Line {
            index: current,
            message: format!("reference to line {i} is not to an earlier line"),
        });
    }
    Ok(i - 1)
}

fn justification(s: &Sexp, current: usize) -> Result<Justification, ScriptError> {
    match s.atom() {
        Some("axiom") => return Ok(Justification::Axiom(None)),
        Some("computation") => return Ok(Justification::Computation),
        Some(a) => return Err(serr(s, format!("unknown justification `{a}`"))),
        None => {}
    }
    let (head, args) = s
        .head()
        .ok_or_else(|| serr(s, "expected a justification"))?;
    match (head, args) {
        ("axiom", [hint]) => Ok(Justification::Axiom(Some(
            hint.atom()
                .ok_or_else(|| serr(hint, "expected a scheme name"))?
                .to_owned(),
        ))),
        ("mp", [major, minor]) => Ok(Justification::Mp {
            major: line_ref(major, current)?,
            minor: line_ref(minor, current)?,
        }),
        ("hyp", [name]) => Ok(Justification::Hypothesis(
            name.atom()
                .ok_or_else(|| serr(name, "expected a hypothesis name"))?
                .to_owned(),
        )),
        _ => Err(serr(s, format!("malformed `{head}` justification"))),
    }
}

/// Parse a proof script. Every line must carry a sentence.
pub fn parse_proof(src: &str) -> Result<ProofObject, ScriptError> {
    let all = read_all(src)?;
    let [top] = all.as_slice() else {
        return Err(
            SyntaxError::new(Default::default(), "expected exactly one (proof ...) form").into(),
        );
    };
    let (head, items) = top
        .head()
        .ok_or_else(|| serr(top, "expected (proof ...)"))?;
    if head != "proof" {
        return Err(serr(top, "expected (proof ...)"));
    }
    let mut proof = ProofObject::new("");
    let mut have_theory = false;
    for item in items {
        let (h, args) = item
            .head()
            .ok_or_else(|| serr(item, "expected a proof clause"))?;
        match (h, args) {
            ("theory", [name]) if !have_theory => {
                let n = name
                    .atom()
                    .ok_or_else(|| serr(name, "expected a theory name"))?;
                proof.theory = Arc::from(n);
                have_theory = true;
            }
            ("hyp", [name, s]) => {
                let name = name.atom().ok_or_else(|| serr(name, "expected a name"))?;
                if proof.hypothesis(name).is_some() {
                    return Err(serr(item, format!("duplicate hypothesis `{name}`")));
                }
                proof.hypotheses.push(Hypothesis {
                    name: name.to_owned(),
                    sentence: sentence(s)?,
                });
            }
            ("line", [idx, s, j]) => {
                let current = proof.lines.len() + 1;
                if idx.atom() != Some(current.to_string().as_str()) {
                    return Err(serr(idx, format!("expected line number {current}")));
                }
                let sentence = sentence(s).map_err(|e| match e {
                    ScriptError::Parse(ParseError::FreeVariables(vs)) => ScriptError::Line {
                        index: current,
                        message: format!(
                            "not a sentence; free variables: {}",
                            vs.iter().map(|v| v.name()).collect::<Vec<_>>().join(", ")
                        ),
                    },
                    other => other,
                })?;
                proof.lines.push(Line {
                    sentence,
                    justification: justification(j, current)?,
                });
            }
            _ => return Err(serr(item, format!("unexpected `{h}` clause"))),
        }
    }
    if !have_theory {
        return Err(serr(top, "missing (theory NAME)"));
    }
    Ok(proof)
}

/// Print in the script form accepted by [`parse_proof`].
pub fn print_proof(p: &ProofObject) -> String {
    let mut out = format!("(proof (theory {})\n", p.theory);
    for h in &p.hypotheses {
        let _ = write!(out, "  (hyp {} ", h.name);
        print_formula(&mut out, &h.sentence);
        out.push_str(")\n");
    }
    for (i, l) in p.lines.iter().enumerate() {
        let _ = write!(out, "  (line {} ", i + 1);
        print_formula(&mut out, &l.sentence);
        out.push(' ');
        match &l.justification {
            Justification::Axiom(None) => out.push_str("axiom"),
            Justification::Axiom(Some(h)) => {
                let _ = write!(out, "(axiom {h})");
            }
            Justification::Computation => out.push_str("computation"),
            Justification::Mp { major, minor } => {
                let _ = write!(out, "(mp {} {})", major + 1, minor + 1);
            }
            Justification::Hypothesis(n) => {
                let _ = write!(out, "(hyp {n})");
            }
        }
        out.push_str(")\n");
    }
    out.push_str(")\n");
    out
}

// ---- codes ----

const JUST_AXIOM: u64 = 0;
const JUST_COMPUTATION: u64 = 1;
const JUST_MP: u64 = 2;

/// Code of an unconditional proof: tag, line count, then each line's
/// formula followed by its justification. Hints and the theory name are not
/// part of the code. `None` for proofs with hypothesis lines.
pub fn encode_proof(p: &ProofObject) -> Option<BigUint> {
    let mut out = vec![tag::PROOF];
    write_u64(&mut out, p.lines.len() as u64);
    for l in &p.lines {
        write_formula(&mut out, &l.sentence);
        match l.justification {
            Justification::Axiom(_) => write_u64(&mut out, JUST_AXIOM),
            Justification::Computation => write_u64(&mut out, JUST_COMPUTATION),
            Justification::Mp { major, minor } => {
                write_u64(&mut out, JUST_MP);
                write_u64(&mut out, major as u64);
                write_u64(&mut out, minor as u64);
            }
            Justification::Hypothesis(_) => return None,
        }
    }
    Some(BigUint::from_bytes_be(&out))
}

/// Inverse of [`encode_proof`], attaching `theory`.
pub fn decode_proof(c: &BigUint, theory: &str) -> Option<ProofObject> {
    let bytes = code_bytes(c);
    let mut r = Reader::new(&bytes);
    if r.byte()? != tag::PROOF {
        return None;
    }
    let n = usize::try_from(r.small()?).ok()?;
    let mut lines = Vec::new();
    for i in 0..n {
        let sentence = r.formula()?;
        let justification = match r.small()? {
            JUST_AXIOM => Justification::Axiom(None),
            JUST_COMPUTATION => Justification::Computation,
            JUST_MP => {
                let major = usize::try_from(r.small()?).ok().filter(|&m| m < i)?;
                let minor = usize::try_from(r.small()?).ok().filter(|&m| m < i)?;
                Justification::Mp { major, minor }
            }
            _ => return None,
        };
        lines.push(Line {
            sentence,
            justification,
        });
    }
    r.at_end().then(|| ProofObject {
        theory: Arc::from(theory),
        hypotheses: vec![],
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCRIPT: &str = "(proof (theory pa)
  (line 1 (= 0 0) axiom)
  (line 2 (-> (= 0 0) (-> (= 0 1) (= 0 0))) (axiom k))
  (line 3 (-> (= 0 1) (= 0 0)) (mp 2 1))
)
";

    #[test]
    fn script_roundtrip() {
        let p = parse_proof(SCRIPT).unwrap();
        assert_eq!(p.lines.len(), 3);
        assert_eq!(
            p.lines[2].justification,
            Justification::Mp { major: 1, minor: 0 }
        );
        assert_eq!(parse_proof(&print_proof(&p)).unwrap(), p);
    }

    #[test]
    fn code_roundtrip_drops_hints() {
        let p = parse_proof(SCRIPT).unwrap();
        let c = encode_proof(&p).unwrap();
        let q = decode_proof(&c, "pa").unwrap();
        assert_eq!(q.lines[1].justification, Justification::Axiom(None));
        assert_eq!(encode_proof(&q).unwrap(), c);
    }

    #[test]
    fn forward_references_rejected() {
        let bad = "(proof (theory pa) (line 1 (= 0 0) (mp 1 1)))";
        assert!(matches!(
            parse_proof(bad),
            Err(ScriptError::Line { index: 1, .. })
        ));
    }

    #[test]
    fn open_line_rejected_with_index() {
        let bad = "(proof (theory pa) (line 1 (= x x) axiom))";
        match parse_proof(bad) {
            Err(ScriptError::Line { index, message }) => {
                assert_eq!(index, 1);
                assert!(message.contains('x'));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pruning_keeps_dependencies() {
        let mut p = parse_proof(SCRIPT).unwrap();
        p.lines.insert(
            0,
            Line {
                sentence: Formula::eq(crate::syntax::Term::Zero, crate::syntax::Term::Zero),
                justification: Justification::Axiom(None),
            },
        );
        // shift references
        p.lines[3].justification = Justification::Mp { major: 2, minor: 1 };
        assert_eq!(p.pruned().lines.len(), 3);
    }
}
