//! Gödel numbering.
//!
//! A term or formula is written as a byte string in prefix order, one tag
//! byte per node followed by the node's payload and children. The code is
//! that byte string read as a big-endian natural. Every tag is nonzero, so no
//! code has a leading zero byte and the map is injective; `decode` accepts
//! exactly the byte strings `encode` produces. The tag table is mirrored in
//! `docs/encoding.md`.
//!
//! Payloads: naturals are unsigned LEB128 in minimal form, strings are a
//! LEB128 length followed by UTF-8 bytes.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::formula::{Formula, Relation};
use super::term::{Term, Var};

pub mod tag {
    pub const ZERO: u8 = 0x01;
    pub const SUCC: u8 = 0x02;
    pub const ADD: u8 = 0x03;
    pub const MUL: u8 = 0x04;
    pub const VAR: u8 = 0x05;
    pub const KAPPA: u8 = 0x06;
    pub const NUMERAL: u8 = 0x07;
    pub const SUB: u8 = 0x08;
    pub const NUM: u8 = 0x09;
    pub const ITERBOX: u8 = 0x0A;

    pub const EQ: u8 = 0x10;
    pub const BOX: u8 = 0x11;
    pub const AND: u8 = 0x12;
    pub const OR: u8 = 0x13;
    pub const IMP: u8 = 0x14;
    pub const FORALL: u8 = 0x15;
    pub const EXISTS: u8 = 0x16;
    pub const ACT: u8 = 0x17;
    pub const GAMMA: u8 = 0x18;
    pub const PROV: u8 = 0x19;
    pub const AX: u8 = 0x1A;
    pub const PROOF_OF: u8 = 0x1B;

    pub const PROOF: u8 = 0x20;
}

/// Code of a formula.
pub type Code = BigUint;

pub fn write_nat(out: &mut Vec<u8>, n: &BigUint) {
    let mut bytes = n.to_radix_le(128);
    // to_radix_le(0) yields [0]
    let last = bytes.len() - 1;
    for b in &mut bytes[..last] {
        *b |= 0x80;
    }
    out.extend_from_slice(&bytes);
}

pub fn write_u64(out: &mut Vec<u8>, n: u64) {
    write_nat(out, &BigUint::from(n));
}

fn write_str(out: &mut Vec<u8>, s: &str) {
    write_u64(out, s.len() as u64);
    out.extend_from_slice(s.as_bytes());
}

pub fn write_term(out: &mut Vec<u8>, t: &Term) {
    match t {
        Term::Zero => out.push(tag::ZERO),
        Term::Succ(a) => {
            out.push(tag::SUCC);
            write_term(out, a);
        }
        Term::Add(a, b) => {
            out.push(tag::ADD);
            write_term(out, a);
            write_term(out, b);
        }
        Term::Mul(a, b) => {
            out.push(tag::MUL);
            write_term(out, a);
            write_term(out, b);
        }
        Term::Var(v) => {
            out.push(tag::VAR);
            write_str(out, v.name());
        }
        Term::Kappa(i) => {
            out.push(tag::KAPPA);
            write_u64(out, *i as u64);
        }
        Term::Numeral(n) => {
            out.push(tag::NUMERAL);
            write_nat(out, n);
        }
        Term::Sub(a, b) => {
            out.push(tag::SUB);
            write_term(out, a);
            write_term(out, b);
        }
        Term::Num(a) => {
            out.push(tag::NUM);
            write_term(out, a);
        }
        Term::IterBox(a, b) => {
            out.push(tag::ITERBOX);
            write_term(out, a);
            write_term(out, b);
        }
    }
}

pub fn write_formula(out: &mut Vec<u8>, f: &Formula) {
    match f {
        Formula::Eq(a, b) => {
            out.push(tag::EQ);
            write_term(out, a);
            write_term(out, b);
        }
        Formula::Box(t) => {
            out.push(tag::BOX);
            write_term(out, t);
        }
        Formula::Rel(r, args) => {
            match r {
                Relation::Act(i) => {
                    out.push(tag::ACT);
                    write_u64(out, *i as u64);
                }
                Relation::Gamma => out.push(tag::GAMMA),
                Relation::Prov(t) => {
                    out.push(tag::PROV);
                    write_str(out, t);
                }
                Relation::Ax(t) => {
                    out.push(tag::AX);
                    write_str(out, t);
                }
                Relation::ProofOf(t) => {
                    out.push(tag::PROOF_OF);
                    write_str(out, t);
                }
            }
            args.iter().for_each(|a| write_term(out, a));
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            out.push(match f {
                Formula::And(..) => tag::AND,
                Formula::Or(..) => tag::OR,
                _ => tag::IMP,
            });
            write_formula(out, a);
            write_formula(out, b);
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            out.push(if matches!(f, Formula::Forall(..)) {
                tag::FORALL
            } else {
                tag::EXISTS
            });
            write_str(out, v.name());
            write_formula(out, body);
        }
    }
}

pub fn encode_formula(f: &Formula) -> Code {
    let mut out = Vec::new();
    write_formula(&mut out, f);
    BigUint::from_bytes_be(&out)
}

pub fn encode_term(t: &Term) -> Code {
    let mut out = Vec::new();
    write_term(&mut out, t);
    BigUint::from_bytes_be(&out)
}

/// Byte string of a code (empty for 0).
pub fn code_bytes(c: &BigUint) -> Vec<u8> {
    if c.is_zero() {
        Vec::new()
    } else {
        c.to_bytes_be()
    }
}

/// Cursor over an encoded byte string.
pub struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Reader { bytes, pos: 0 }
    }

    pub fn at_end(&self) -> bool {
        self.pos == self.bytes.len()
    }

    pub fn byte(&mut self) -> Option<u8> {
        let b = *self.bytes.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    pub fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    /// Minimal LEB128 natural.
    pub fn nat(&mut self) -> Option<BigUint> {
        let start = self.pos;
        loop {
            let b = self.byte()?;
            if b & 0x80 == 0 {
                break;
            }
        }
        let digits: Vec<u8> = self.bytes[start..self.pos]
            .iter()
            .map(|b| b & 0x7F)
            .collect();
        // reject redundant high zero groups
        if digits.len() > 1 && *digits.last()? == 0 {
            return None;
        }
        BigUint::from_radix_le(&digits, 128)
    }

    pub fn small(&mut self) -> Option<u64> {
        self.nat()?.to_u64()
    }

    fn string(&mut self) -> Option<String> {
        let len = usize::try_from(self.small()?).ok()?;
        let end = self.pos.checked_add(len)?;
        let s = std::str::from_utf8(self.bytes.get(self.pos..end)?).ok()?;
        self.pos = end;
        Some(s.to_owned())
    }

    fn var(&mut self) -> Option<Var> {
        let s = self.string()?;
        valid_var_name(&s).then(|| Var::new(&s))
    }

    pub fn term(&mut self) -> Option<Term> {
        Some(match self.byte()? {
            tag::ZERO => Term::Zero,
            tag::SUCC => Term::succ(self.term()?),
            tag::ADD => Term::add(self.term()?, self.term()?),
            tag::MUL => Term::mul(self.term()?, self.term()?),
            tag::VAR => Term::Var(self.var()?),
            tag::KAPPA => {
                let i = u32::try_from(self.small()?).ok()?;
                if i == 0 {
                    return None;
                }
                Term::Kappa(i)
            }
            tag::NUMERAL => {
                let n = self.nat()?;
                if n.is_zero() {
                    return None;
                }
                Term::Numeral(Arc::new(n))
            }
            tag::SUB => Term::sub(self.term()?, self.term()?),
            tag::NUM => Term::num(self.term()?),
            tag::ITERBOX => Term::iterbox(self.term()?, self.term()?),
            _ => return None,
        })
    }

    fn theory_name(&mut self) -> Option<Arc<str>> {
        let s = self.string()?;
        valid_theory_name(&s).then(|| Arc::from(s.as_str()))
    }

    pub fn formula(&mut self) -> Option<Formula> {
        Some(match self.byte()? {
            tag::EQ => Formula::eq(self.term()?, self.term()?),
            tag::BOX => Formula::Box(self.term()?),
            tag::AND => Formula::and(self.formula()?, self.formula()?),
            tag::OR => Formula::or(self.formula()?, self.formula()?),
            tag::IMP => Formula::imp(self.formula()?, self.formula()?),
            tag::FORALL => Formula::forall(self.var()?, self.formula()?),
            tag::EXISTS => Formula::exists(self.var()?, self.formula()?),
            tag::ACT => {
                let i = u32::try_from(self.small()?).ok()?;
                if i == 0 {
                    return None;
                }
                Formula::rel(Relation::Act(i), vec![self.term()?])
            }
            tag::GAMMA => Formula::rel(Relation::Gamma, vec![]),
            tag::PROV => {
                let t = self.theory_name()?;
                Formula::rel(Relation::Prov(t), vec![self.term()?])
            }
            tag::AX => {
                let t = self.theory_name()?;
                Formula::rel(Relation::Ax(t), vec![self.term()?])
            }
            tag::PROOF_OF => {
                let t = self.theory_name()?;
                Formula::rel(Relation::ProofOf(t), vec![self.term()?, self.term()?])
            }
            _ => return None,
        })
    }
}

/// Variable names: an ASCII letter or `_`, then letters, digits, `_` or `'`,
/// and not a reserved word of the s-expression grammar.
pub fn valid_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !super::sexp::is_reserved(s)
}

/// Theory names: nonempty, ASCII alphanumerics, `-`, `_`, `+`.
pub fn valid_theory_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_+".contains(c))
}

/// Inverse of [`encode_formula`]; `None` off its image (including 0).
pub fn decode_formula(c: &BigUint) -> Option<Formula> {
    let bytes = code_bytes(c);
    let mut r = Reader::new(&bytes);
    let f = r.formula()?;
    r.at_end().then_some(f)
}

/// Inverse of [`encode_term`]; `None` off its image.
pub fn decode_term(c: &BigUint) -> Option<Term> {
    let bytes = code_bytes(c);
    let mut r = Reader::new(&bytes);
    let t = r.term()?;
    r.at_end().then_some(t)
}

/// Decode and require a sentence.
pub fn decode_sentence(c: &BigUint) -> Option<Formula> {
    decode_formula(c).filter(Formula::is_sentence)
}
