//! Object language: terms, formulas, numerals, the Gödel codec and the
//! s-expression surface syntax.

pub mod codec;
pub mod formula;
pub mod numeral;
pub mod parse;
pub mod print;
pub mod sexp;
pub mod term;

use num_bigint::BigUint;

pub use codec::{decode_formula, decode_sentence, decode_term, encode_formula, encode_term, Code};
pub use formula::{Formula, Relation, Sentence};
pub use numeral::{eval_term, numeral_of, EvalError, KappaEnv};
pub use parse::{parse_formula, parse_sentence, parse_term, ParseError};
pub use print::{formula_to_string, term_to_string};
pub use term::{Term, Var};

/// Code of a formula (alias kept for the public surface).
pub fn encode_sentence(a: &Formula) -> Code {
    encode_formula(a)
}

/// Inverse of [`encode_sentence`]; `None` means "not a formula".
pub fn decode_code(c: &BigUint) -> Option<Formula> {
    decode_formula(c)
}

/// Replace the free occurrences of `v` by the canonical numeral of `n`.
pub fn substitute_numeral(a: &Formula, v: &Var, n: impl Into<BigUint>) -> Formula {
    a.subst(v, &numeral_of(n))
        .expect("numerals are closed, substitution cannot capture")
}

/// Numeral of the code of `a`: the term written ⌜A⌝.
pub fn quote(a: &Formula) -> Term {
    numeral_of(encode_formula(a))
}

/// `□⌜A⌝`.
pub fn box_quote(a: &Formula) -> Formula {
    Formula::Box(quote(a))
}

/// `□ᵏ⌜A⌝` for `k >= 1`, `A` for `k = 0`.
pub fn box_power(a: &Formula, k: usize) -> Formula {
    (0..k).fold(a.clone(), |acc, _| box_quote(&acc))
}

/// Peel one □: `B` when `a` is `□(t)` with `t` closed, κ-free and evaluating
/// to the code of the sentence `B`.
pub fn strip_box(a: &Formula) -> Option<Formula> {
    match a {
        Formula::Box(t) if t.is_closed() && !t.has_kappa() => {
            let c = eval_term(t, None).ok()?;
            decode_sentence(&c)
        }
        _ => None,
    }
}
