//! An encoder written from the tag table alone, working on printed text, and
//! a strategy over the whole formula syntax.

use asrt_core::syntax::formula::Relation;
use asrt_core::syntax::{Formula, Term, Var};
use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

#[derive(Debug)]
enum Sx {
    Atom(String),
    List(Vec<Sx>),
}

fn read(text: &str) -> Sx {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let mut toks = spaced.split_whitespace();
    let s = read_one(&mut toks);
    assert!(toks.next().is_none(), "trailing input in {text}");
    s
}

fn read_one<'a>(toks: &mut impl Iterator<Item = &'a str>) -> Sx {
    read_one_or_close(toks).expect("unexpected )")
}

fn read_one_or_close<'a>(toks: &mut impl Iterator<Item = &'a str>) -> Option<Sx> {
    match toks.next().expect("unexpected end") {
        ")" => None,
        "(" => {
            let mut items = Vec::new();
            while let Some(s) = read_one_or_close(toks) {
                items.push(s);
            }
            Some(Sx::List(items))
        }
        a => Some(Sx::Atom(a.to_owned())),
    }
}

fn leb(out: &mut Vec<u8>, n: &BigUint) {
    let mut n = n.clone();
    let mask = BigUint::from(0x7fu8);
    loop {
        let low = (&n & &mask).to_u32_digits().first().copied().unwrap_or(0) as u8;
        n >>= 7;
        if n.is_zero() {
            out.push(low);
            return;
        }
        out.push(low | 0x80);
    }
}

fn string(out: &mut Vec<u8>, s: &str) {
    leb(out, &BigUint::from(s.len()));
    out.extend_from_slice(s.as_bytes());
}

fn atom(s: &Sx) -> &str {
    match s {
        Sx::Atom(a) => a,
        Sx::List(_) => panic!("expected atom, got {s:?}"),
    }
}

fn ref_term(out: &mut Vec<u8>, s: &Sx) {
    match s {
        Sx::Atom(a) if a.bytes().all(|b| b.is_ascii_digit()) => {
            let n: BigUint = a.parse().unwrap();
            if n.is_zero() {
                out.push(0x01);
            } else {
                out.push(0x07);
                leb(out, &n);
            }
        }
        Sx::Atom(a) => {
            out.push(0x05);
            string(out, a);
        }
        Sx::List(xs) => {
            let head = atom(&xs[0]);
            match head {
                "kappa" => {
                    out.push(0x06);
                    leb(out, &atom(&xs[1]).parse().unwrap());
                    return;
                }
                "S" => out.push(0x02),
                "+" => out.push(0x03),
                "*" => out.push(0x04),
                "sub" => out.push(0x08),
                "num" => out.push(0x09),
                "iterbox" => out.push(0x0A),
                h => panic!("unknown term head {h}"),
            }
            for x in &xs[1..] {
                ref_term(out, x);
            }
        }
    }
}

fn ref_bot(out: &mut Vec<u8>) {
    out.extend_from_slice(&[0x10, 0x01, 0x07, 0x01]);
}

fn ref_formula(out: &mut Vec<u8>, s: &Sx) {
    let xs = match s {
        Sx::Atom(a) if a == "gamma" => return out.push(0x18),
        Sx::Atom(a) if a == "bot" => return ref_bot(out),
        Sx::Atom(a) => panic!("unknown formula atom {a}"),
        Sx::List(xs) => xs,
    };
    match atom(&xs[0]) {
        "=" => {
            out.push(0x10);
            ref_term(out, &xs[1]);
            ref_term(out, &xs[2]);
        }
        "box" => {
            out.push(0x11);
            ref_term(out, &xs[1]);
        }
        "not" => {
            out.push(0x14);
            ref_formula(out, &xs[1]);
            ref_bot(out);
        }
        h @ ("and" | "or" | "->") => {
            out.push(match h {
                "and" => 0x12,
                "or" => 0x13,
                _ => 0x14,
            });
            ref_formula(out, &xs[1]);
            ref_formula(out, &xs[2]);
        }
        h @ ("forall" | "exists") => {
            out.push(if h == "forall" { 0x15 } else { 0x16 });
            string(out, atom(&xs[1]));
            ref_formula(out, &xs[2]);
        }
        "act" => {
            out.push(0x17);
            leb(out, &atom(&xs[1]).parse().unwrap());
            ref_term(out, &xs[2]);
        }
        h @ ("prov" | "ax" | "proof-of") => {
            out.push(match h {
                "prov" => 0x19,
                "ax" => 0x1A,
                _ => 0x1B,
            });
            string(out, atom(&xs[1]));
            for x in &xs[2..] {
                ref_term(out, x);
            }
        }
        h => panic!("unknown formula head {h}"),
    }
}

pub fn reference_code(text: &str) -> BigUint {
    let mut out = Vec::new();
    ref_formula(&mut out, &read(text));
    BigUint::from_bytes_be(&out)
}

/// Printed formulas and their code bytes, frozen by hand from the tag table.
pub const GOLDEN: &[(&str, &[u8])] = &[
    ("(= 0 0)", &[0x10, 0x01, 0x01]),
    ("(= 0 1)", &[0x10, 0x01, 0x07, 0x01]),
    ("bot", &[0x10, 0x01, 0x07, 0x01]),
    ("(box 0)", &[0x11, 0x01]),
    ("gamma", &[0x18]),
    ("(act 1 0)", &[0x17, 0x01, 0x01]),
    ("(= 128 0)", &[0x10, 0x07, 0x80, 0x01, 0x01]),
    ("(forall x (= x x))", &[0x15, 0x01, b'x', 0x10, 0x05, 0x01, b'x', 0x05, 0x01, b'x']),
    ("(not (= 0 0))", &[0x14, 0x10, 0x01, 0x01, 0x10, 0x01, 0x07, 0x01]),
    ("(prov pa 5)", &[0x19, 0x02, b'p', b'a', 0x07, 0x05]),
    ("(box (iterbox (kappa 1) 24))", &[0x11, 0x0A, 0x06, 0x01, 0x07, 0x18]),
    ("(proof-of pa 3 (num 2))", &[0x1B, 0x02, b'p', b'a', 0x07, 0x03, 0x09, 0x07, 0x02]),
    (
        "(ax sbox-pa (sub 1 0))",
        &[0x1A, 0x07, b's', b'b', b'o', b'x', b'-', b'p', b'a', 0x08, 0x07, 0x01, 0x01],
    ),
    (
        "(exists y (= (S y) (+ y (* 1 y))))",
        &[
            0x16, 0x01, b'y', 0x10, 0x02, 0x05, 0x01, b'y', 0x03, 0x05, 0x01, b'y', 0x04, 0x07,
            0x01, 0x05, 0x01, b'y',
        ],
    ),
];

fn var() -> impl Strategy<Value = Var> {
    prop_oneof![Just("x"), Just("y"), Just("z"), Just("v1"), Just("long_name")].prop_map(Var::new)
}

fn theory() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("pa"), Just("sbox-pa"), Just("sstar-j2")]
}

fn big() -> impl Strategy<Value = BigUint> {
    prop_oneof![
        (0u64..300).prop_map(BigUint::from),
        any::<u64>().prop_map(BigUint::from),
        proptest::collection::vec(any::<u8>(), 1..24).prop_map(|b| BigUint::from_bytes_be(&b)),
    ]
}

pub fn any_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        big().prop_map(Term::numeral),
        var().prop_map(Term::Var),
        (1u32..200).prop_map(Term::Kappa),
    ];
    leaf.prop_recursive(4, 24, 2, |t| {
        prop_oneof![
            t.clone().prop_map(Term::succ),
            (t.clone(), t.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (t.clone(), t.clone()).prop_map(|(a, b)| Term::mul(a, b)),
            (t.clone(), t.clone()).prop_map(|(a, b)| Term::sub(a, b)),
            t.clone().prop_map(Term::num),
            (t.clone(), t).prop_map(|(a, b)| Term::iterbox(a, b)),
        ]
    })
}

pub fn any_formula() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        (any_term(), any_term()).prop_map(|(a, b)| Formula::eq(a, b)),
        any_term().prop_map(Formula::boxed),
        Just(Formula::rel(Relation::Gamma, vec![])),
        Just(Formula::bottom()),
        (1u32..300, any_term()).prop_map(|(i, t)| Formula::rel(Relation::Act(i), vec![t])),
        (theory(), any_term()).prop_map(|(th, t)| Formula::rel(Relation::prov(th), vec![t])),
        (theory(), any_term()).prop_map(|(th, t)| Formula::rel(Relation::ax(th), vec![t])),
        (theory(), any_term(), any_term())
            .prop_map(|(th, a, b)| Formula::rel(Relation::proof_of(th), vec![a, b])),
    ];
    atom.prop_recursive(5, 32, 2, |f| {
        prop_oneof![
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            f.clone().prop_map(Formula::not),
            (var(), f.clone()).prop_map(|(v, a)| Formula::forall(v, a)),
            (var(), f).prop_map(|(v, a)| Formula::exists(v, a)),
        ]
    })
}

