//! Terms and formulas from s-expressions.
//!
//! ```text
//! term    := 0 | <decimal> | <var> | (S t) | (+ t t) | (* t t) | (kappa i)
//!          | (sub t t) | (num t) | (iterbox t t) | (num-of nat) | (godel F)
//! nat     := <decimal> | (godel F)
//! formula := (= t t) | (box t) | (and A B) | (or A B) | (-> A B) | (not A)
//!          | (iff A B) | (forall x A) | (exists x A) | bot | gamma
//!          | (act i t) | (prov T t) | (ax T t) | (proof-of T t t)
//! ```
//!
//! `(godel F)` and `(num-of n)` are resolved at parse time to canonical
//! numerals.

use num_bigint::BigUint;
use thiserror::Error;

use super::codec::{encode_formula, valid_theory_name, valid_var_name};
use super::formula::{Formula, Relation};
use super::sexp::{read_one, Sexp, SyntaxError};
use super::term::{Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("formula has free variables: {}", .0.iter().map(Var::name).collect::<Vec<_>>().join(", "))]
    FreeVariables(Vec<Var>),
}

fn err(s: &Sexp, msg: impl Into<String>) -> SyntaxError {
    SyntaxError::new(s.pos(), msg)
}

fn arity(s: &Sexp, head: &str, args: &[Sexp], n: usize) -> Result<(), SyntaxError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(err(
            s,
            format!("`{head}` takes {n} argument(s), found {}", args.len()),
        ))
    }
}

fn decimal(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0'))
    {
        return None;
    }
    s.parse().ok()
}

fn index(s: &Sexp) -> Result<u32, SyntaxError> {
    s.atom()
        .and_then(|a| a.parse::<u32>().ok())
        .filter(|i| *i >= 1)
        .ok_or_else(|| err(s, "expected a positive index"))
}

fn theory(s: &Sexp) -> Result<&str, SyntaxError> {
    s.atom()
        .filter(|a| valid_theory_name(a))
        .ok_or_else(|| err(s, "expected a theory name"))
}

fn var(s: &Sexp) -> Result<Var, SyntaxError> {
    match s.atom() {
        Some(a) if valid_var_name(a) => Ok(Var::new(a)),
        _ => Err(err(s, "expected a variable name")),
    }
}

fn nat(s: &Sexp) -> Result<BigUint, SyntaxError> {
    if let Some(a) = s.atom() {
        return decimal(a).ok_or_else(|| err(s, "expected a natural number"));
    }
    match s.head() {
        Some(("godel", args)) => {
            arity(s, "godel", args, 1)?;
            Ok(encode_formula(&formula(&args[0])?))
        }
        _ => Err(err(s, "expected a natural number or (godel F)")),
    }
}

pub fn term(s: &Sexp) -> Result<Term, SyntaxError> {
    if let Some(a) = s.atom() {
        if let Some(n) = decimal(a) {
            return Ok(Term::numeral(n));
        }
        return Ok(Term::Var(var(s)?));
    }
    let (head, args) = s.head().ok_or_else(|| err(s, "expected a term"))?;
    let t = |i: usize| term(&args[i]);
    Ok(match head {
        "S" => {
            arity(s, head, args, 1)?;
            Term::succ(t(0)?)
        }
        "+" => {
            arity(s, head, args, 2)?;
            Term::add(t(0)?, t(1)?)
        }
        "*" => {
            arity(s, head, args, 2)?;
            Term::mul(t(0)?, t(1)?)
        }
        "kappa" => {
            arity(s, head, args, 1)?;
            Term::Kappa(index(&args[0])?)
        }
        "sub" => {
            arity(s, head, args, 2)?;
            Term::sub(t(0)?, t(1)?)
        }
        "num" => {
            arity(s, head, args, 1)?;
            Term::num(t(0)?)
        }
        "iterbox" => {
            arity(s, head, args, 2)?;
            Term::iterbox(t(0)?, t(1)?)
        }
        "num-of" => {
            arity(s, head, args, 1)?;
            Term::numeral(nat(&args[0])?)
        }
        "godel" => Term::numeral(nat(s)?),
        other => return Err(err(s, format!("unknown term operator `{other}`"))),
    })
}

pub fn formula(s: &Sexp) -> Result<Formula, SyntaxError> {
    if let Some(a) = s.atom() {
        return match a {
            "bot" => Ok(Formula::bottom()),
            "gamma" => Ok(Formula::rel(Relation::Gamma, vec![])),
            _ => Err(err(s, format!("expected a formula, found `{a}`"))),
        };
    }
    let (head, args) = s.head().ok_or_else(|| err(s, "expected a formula"))?;
    let f = |i: usize| formula(&args[i]);
    let t = |i: usize| term(&args[i]);
    Ok(match head {
        "=" => {
            arity(s, head, args, 2)?;
            Formula::eq(t(0)?, t(1)?)
        }
        "box" => {
            arity(s, head, args, 1)?;
            Formula::Box(t(0)?)
        }
        "and" => {
            arity(s, head, args, 2)?;
            Formula::and(f(0)?, f(1)?)
        }
        "or" => {
            arity(s, head, args, 2)?;
            Formula::or(f(0)?, f(1)?)
        }
        "->" => {
            arity(s, head, args, 2)?;
            Formula::imp(f(0)?, f(1)?)
        }
        "iff" => {
            arity(s, head, args, 2)?;
            Formula::iff(f(0)?, f(1)?)
        }
        "not" => {
            arity(s, head, args, 1)?;
            Formula::not(f(0)?)
        }
        "forall" | "exists" => {
            arity(s, head, args, 2)?;
            let v = var(&args[0])?;
            if head == "forall" {
                Formula::forall(v, f(1)?)
            } else {
                Formula::exists(v, f(1)?)
            }
        }
        "gamma" => {
            arity(s, head, args, 0)?;
            Formula::rel(Relation::Gamma, vec![])
        }
        "act" => {
            arity(s, head, args, 2)?;
            Formula::rel(Relation::Act(index(&args[0])?), vec![t(1)?])
        }
        "prov" | "ax" => {
            arity(s, head, args, 2)?;
            let name = theory(&args[0])?;
            let r = if head == "prov" {
                Relation::prov(name)
            } else {
                Relation::ax(name)
            };
            Formula::rel(r, vec![t(1)?])
        }
        "proof-of" => {
            arity(s, head, args, 3)?;
            Formula::rel(Relation::proof_of(theory(&args[0])?), vec![t(1)?, t(2)?])
        }
        other => return Err(err(s, format!("unknown formula operator `{other}`"))),
    })
}

/// Parse a formula that may have free variables.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    Ok(formula(&read_one(text)?)?)
}

/// Parse a sentence; open formulas are rejected.
pub fn parse_sentence(text: &str) -> Result<Formula, ParseError> {
    let f = parse_formula(text)?;
    check_closed(f)
}

pub fn check_closed(f: Formula) -> Result<Formula, ParseError> {
    let free = f.free_vars();
    if free.is_empty() {
        Ok(f)
    } else {
        Err(ParseError::FreeVariables(free.into_iter().collect()))
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    Ok(term(&read_one(text)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::box_quote;

    #[test]
    fn smallest_sentence() {
        assert_eq!(
            parse_sentence("(= 0 0)").unwrap(),
            Formula::eq(Term::Zero, Term::Zero)
        );
    }

    #[test]
    fn godel_literal_resolves_to_numeral() {
        let f = parse_sentence("(box (num-of (godel (= 0 1))))").unwrap();
        assert_eq!(f, box_quote(&Formula::bottom()));
    }

    #[test]
    fn quantified_identity() {
        let f = parse_sentence("(forall n (-> (= n n) (= n n)))").unwrap();
        let n = Var::new("n");
        let a = Formula::eq(Term::Var(n.clone()), Term::Var(n.clone()));
        assert_eq!(f, Formula::forall(n, Formula::imp(a.clone(), a)));
    }

    #[test]
    fn open_formula_rejected_with_names() {
        match parse_sentence("(= x (+ y 0))") {
            Err(ParseError::FreeVariables(vs)) => {
                assert_eq!(vs, vec![Var::new("x"), Var::new("y")]);
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("(= x 0)").is_ok());
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_sentence("(and (= 0 0)\n  (frob 0))") {
            Err(ParseError::Syntax(e)) => assert_eq!((e.pos.line, e.pos.col), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn not_is_sugar() {
        assert_eq!(
            parse_sentence("(not (= 0 0))").unwrap(),
            Formula::imp(Formula::eq(Term::Zero, Term::Zero), Formula::bottom())
        );
    }

    #[test]
    fn reserved_words_are_not_variables() {
        assert!(parse_formula("(= box 0)").is_err());
        assert!(parse_formula("(= 007 0)").is_err());
    }
}
