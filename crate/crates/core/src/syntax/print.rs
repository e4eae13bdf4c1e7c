//! Canonical s-expression printer; `parse(print(x)) == x`.

use std::fmt::Write;

use super::formula::{Formula, Relation};
use super::term::Term;

pub fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Zero => out.push('0'),
        Term::Numeral(n) => {
            let _ = write!(out, "{n}");
        }
        Term::Var(v) => out.push_str(v.name()),
        Term::Kappa(i) => {
            let _ = write!(out, "(kappa {i})");
        }
        Term::Succ(a) => app(out, "S", &[a]),
        Term::Add(a, b) => app(out, "+", &[a, b]),
        Term::Mul(a, b) => app(out, "*", &[a, b]),
        Term::Sub(a, b) => app(out, "sub", &[a, b]),
        Term::Num(a) => app(out, "num", &[a]),
        Term::IterBox(a, b) => app(out, "iterbox", &[a, b]),
    }
}

fn app(out: &mut String, head: &str, args: &[&Term]) {
    out.push('(');
    out.push_str(head);
    for a in args {
        out.push(' ');
        write_term(out, a);
    }
    out.push(')');
}

pub fn write_formula(out: &mut String, f: &Formula) {
    let bin = |out: &mut String, head: &str, a: &Formula, b: &Formula| {
        let _ = write!(out, "({head} ");
        write_formula(out, a);
        out.push(' ');
        write_formula(out, b);
        out.push(')');
    };
    match f {
        Formula::Eq(a, b) => app(out, "=", &[a, b]),
        Formula::Box(t) => app(out, "box", &[t]),
        Formula::Rel(r, args) => {
            let head = match r {
                Relation::Gamma => {
                    out.push_str("gamma");
                    return;
                }
                Relation::Act(i) => format!("act {i}"),
                Relation::Prov(t) => format!("prov {t}"),
                Relation::Ax(t) => format!("ax {t}"),
                Relation::ProofOf(t) => format!("proof-of {t}"),
            };
            app(out, &head, &args.iter().collect::<Vec<_>>());
        }
        Formula::And(a, b) => bin(out, "and", a, b),
        Formula::Or(a, b) => bin(out, "or", a, b),
        Formula::Imp(a, b) if b.is_bottom() => {
            out.push_str("(not ");
            write_formula(out, a);
            out.push(')');
        }
        Formula::Imp(a, b) => bin(out, "->", a, b),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let q = if matches!(f, Formula::Forall(..)) {
                "forall"
            } else {
                "exists"
            };
            let _ = write!(out, "({q} {v} ");
            write_formula(out, body);
            out.push(')');
        }
    }
}

pub fn term_to_string(t: &Term) -> String {
    let mut s = String::new();
    write_term(&mut s, t);
    s
}

pub fn formula_to_string(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f);
    s
}
