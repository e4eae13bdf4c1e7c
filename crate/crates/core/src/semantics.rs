//! The stratified falsity sets `F₀ ⊆ F₁ ⊆ ...` as a bounded evaluator.
//!
//! Membership of closed atoms is decided by evaluation: `t = t'` is in every
//! `Fᵢ` when the sides differ, and `□(t)` is in `Fᵢ` (`i ≥ 1`) when `t`
//! codes a sentence in `Fᵢ₋₁`. Connectives follow the usual clauses, with
//! `A → B` in `Fᵢ` when for some `j ≤ i` the antecedent is out of `Fⱼ` and
//! the consequent is in it.
//!
//! Quantifiers range over all naturals, so a faithful decision procedure is
//! impossible. The ledger scans instances `0..=B` and adds a third verdict,
//! [`Verdict::Indeterminate`], for the cases the scan cannot settle. A scan
//! is extended past `B` only when the body has a recognized shape whose
//! verdict is provably constant above `B`: bodies not mentioning the
//! variable, polynomial equations, and boolean combinations of those. Every
//! `In` or `Out` is therefore exact; only `Indeterminate` depends on `B`.
//!
//! Sentences with κ constants, agent atoms or Γ are outside the ledger's
//! language and evaluate to `Indeterminate`. So does `Prov(t)` unless the
//! session store holds a proof of the coded sentence (then it is true, so
//! out) or `t` codes no sentence of that theory (false, so in).
//!
//! Every model of the base theory extends to one of the full theory by
//! reading `□(g)` as true for all `g`, so the consistency of the base alone
//! would be easy. The ledger is what separates `□ᵏ⌜0=1⌝` from theoremhood.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::kernel::{
    is_main_axiom, is_proof_of, Justification, ProofObject, ProofStore, TheoryConfig,
};
use crate::syntax::{
    decode_sentence, eval_term, formula_to_string, numeral_of, Formula, Relation, Term, Var,
};

pub const DEFAULT_STAGES: usize = 8;
pub const DEFAULT_BOUND: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// In the falsity set at the stage asked.
    In,
    /// Definitively not in it.
    Out,
    Indeterminate,
}

impl Verdict {
    fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::In, _) | (_, Verdict::In) => Verdict::In,
            (Verdict::Out, Verdict::Out) => Verdict::Out,
            _ => Verdict::Indeterminate,
        }
    }

    fn or(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Out, _) | (_, Verdict::Out) => Verdict::Out,
            (Verdict::In, Verdict::In) => Verdict::In,
            _ => Verdict::Indeterminate,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::In => "in",
            Verdict::Out => "out",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

/// Memoized membership oracle for the falsity sets.
///
/// The memo is keyed on `(sentence, stage)`; concurrent readers share it
/// and a miss is computed outside the lock, so racing writers insert the
/// same value.
pub struct FalsityLedger {
    stages: usize,
    bound: u64,
    store: Arc<ProofStore>,
    memo: RwLock<HashMap<(Formula, usize), Verdict>>,
}

impl Default for FalsityLedger {
    fn default() -> Self {
        FalsityLedger::new(DEFAULT_STAGES, DEFAULT_BOUND)
    }
}

impl FalsityLedger {
    pub fn new(stages: usize, bound: u64) -> Self {
        FalsityLedger::with_store(stages, bound, Arc::new(ProofStore::new()))
    }

    /// A ledger that reads `Prov` and proof-code atoms against `store`.
    pub fn with_store(stages: usize, bound: u64, store: Arc<ProofStore>) -> Self {
        FalsityLedger {
            stages,
            bound,
            store,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn stages(&self) -> usize {
        self.stages
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Verdict for `a` at stage `i`, clamped to the ledger's stage count.
    pub fn member(&self, a: &Formula, i: usize) -> Verdict {
        let i = i.min(self.stages);
        if !a.is_sentence() {
            return Verdict::Indeterminate;
        }
        self.verdict(a, i)
    }

    fn verdict(&self, a: &Formula, i: usize) -> Verdict {
        let key = (a.clone(), i);
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return *v;
        }
        let v = self.compute(a, i);
        self.memo.write().expect("memo lock").insert(key, v);
        v
    }

    fn compute(&self, a: &Formula, i: usize) -> Verdict {
        match a {
            Formula::Eq(l, r) => match (eval(l), eval(r)) {
                (Some(x), Some(y)) => in_if(x != y),
                _ => Verdict::Indeterminate,
            },
            Formula::Box(t) => {
                if i == 0 {
                    return Verdict::Out;
                }
                let Some(c) = eval(t) else {
                    return Verdict::Indeterminate;
                };
                match decode_sentence(&c) {
                    Some(b) => self.verdict(&b, i - 1),
                    None => Verdict::Out,
                }
            }
            Formula::Rel(rel, args) => self.relation(rel, args),
            Formula::And(x, y) => self.verdict(x, i).and(self.verdict(y, i)),
            Formula::Or(x, y) => self.verdict(x, i).or(self.verdict(y, i)),
            Formula::Imp(x, y) => {
                let mut settled = true;
                for j in 0..=i {
                    match (self.verdict(x, j), self.verdict(y, j)) {
                        (Verdict::Out, Verdict::In) => return Verdict::In,
                        (Verdict::In, _) | (_, Verdict::Out) => {}
                        _ => settled = false,
                    }
                }
                if settled {
                    Verdict::Out
                } else {
                    Verdict::Indeterminate
                }
            }
            Formula::Forall(v, body) => {
                let (any_in, all_out) = self.scan(v, body, i);
                if any_in {
                    return Verdict::In;
                }
                match self.tail(body, v, i) {
                    Some(Verdict::In) => Verdict::In,
                    Some(Verdict::Out) if all_out => Verdict::Out,
                    _ => Verdict::Indeterminate,
                }
            }
            Formula::Exists(v, body) => {
                let mut all_in = true;
                for n in 0..=self.bound {
                    match self.verdict(&instance(body, v, n), i) {
                        Verdict::Out => return Verdict::Out,
                        Verdict::Indeterminate => all_in = false,
                        Verdict::In => {}
                    }
                }
                match self.tail(body, v, i) {
                    Some(Verdict::Out) => Verdict::Out,
                    Some(Verdict::In) if all_in => Verdict::In,
                    _ => Verdict::Indeterminate,
                }
            }
        }
    }

    /// `(some instance in, every instance out)` over `0..=B`.
    fn scan(&self, v: &Var, body: &Formula, i: usize) -> (bool, bool) {
        let mut all_out = true;
        for n in 0..=self.bound {
            match self.verdict(&instance(body, v, n), i) {
                Verdict::In => return (true, false),
                Verdict::Indeterminate => all_out = false,
                Verdict::Out => {}
            }
        }
        (false, all_out)
    }

    fn relation(&self, rel: &Relation, args: &[Term]) -> Verdict {
        let theory = |name: &str| TheoryConfig::preset(name);
        match rel {
            Relation::Ax(name) => match (theory(name), eval(&args[0])) {
                (Some(t), Some(c)) => {
                    in_if(!decode_sentence(&c).is_some_and(|s| is_main_axiom(&t, &s)))
                }
                _ => Verdict::Indeterminate,
            },
            Relation::ProofOf(name) => match (theory(name), eval(&args[0]), eval(&args[1])) {
                (Some(t), Some(g), Some(c)) => in_if(!is_proof_of(&t, &g, &c, &self.store)),
                _ => Verdict::Indeterminate,
            },
            Relation::Prov(name) => {
                let (Some(t), Some(c)) = (theory(name), eval(&args[0])) else {
                    return Verdict::Indeterminate;
                };
                match decode_sentence(&c) {
                    Some(s) if self.store.contains(name, &s) => Verdict::Out,
                    Some(s) if t.in_language(&s) => Verdict::Indeterminate,
                    _ => Verdict::In,
                }
            }
            Relation::Act(_) | Relation::Gamma => Verdict::Indeterminate,
        }
    }

    /// A verdict for `body[v := n̄]` valid for every `n > B` and computed
    /// without scanning, when the shape allows it.
    fn tail(&self, body: &Formula, v: &Var, i: usize) -> Option<Verdict> {
        if !body.free_vars().contains(v) {
            return match self.verdict(body, i) {
                Verdict::Indeterminate => None,
                x => Some(x),
            };
        }
        match body {
            Formula::Eq(l, r) => {
                let d = poly_sub(&poly(l, v)?, &poly(r, v)?);
                match d.iter().rposition(|c| !c.is_zero()) {
                    None => Some(Verdict::Out),
                    // every root lies within the Cauchy bound 1 + max|aₖ|
                    Some(deg) => {
                        let max = d[..deg].iter().map(|c| c.abs()).max().unwrap_or_default();
                        (max + 1u32 <= BigInt::from(self.bound)).then_some(Verdict::In)
                    }
                }
            }
            Formula::And(x, y) => {
                let (a, b) = (self.tail(x, v, i), self.tail(y, v, i));
                match (a, b) {
                    (Some(Verdict::In), _) | (_, Some(Verdict::In)) => Some(Verdict::In),
                    (Some(Verdict::Out), Some(Verdict::Out)) => Some(Verdict::Out),
                    _ => None,
                }
            }
            Formula::Or(x, y) => {
                let (a, b) = (self.tail(x, v, i), self.tail(y, v, i));
                match (a, b) {
                    (Some(Verdict::Out), _) | (_, Some(Verdict::Out)) => Some(Verdict::Out),
                    (Some(Verdict::In), Some(Verdict::In)) => Some(Verdict::In),
                    _ => None,
                }
            }
            Formula::Imp(x, y) => {
                let mut settled = true;
                for j in 0..=i {
                    match (self.tail(x, v, j), self.tail(y, v, j)) {
                        (Some(Verdict::Out), Some(Verdict::In)) => return Some(Verdict::In),
                        (Some(Verdict::In), _) | (_, Some(Verdict::Out)) => {}
                        _ => settled = false,
                    }
                }
                settled.then_some(Verdict::Out)
            }
            _ => None,
        }
    }
}

fn in_if(b: bool) -> Verdict {
    if b {
        Verdict::In
    } else {
        Verdict::Out
    }
}

fn eval(t: &Term) -> Option<BigUint> {
    eval_term(t, None).ok()
}

fn instance(body: &Formula, v: &Var, n: u64) -> Formula {
    body.subst(v, &numeral_of(n))
        .expect("numerals are closed, substitution cannot capture")
}

/// Coefficients, lowest degree first, of `t` as a polynomial in `v`. `None`
/// if `t` mentions anything other than `v` inside a coding function.
fn poly(t: &Term, v: &Var) -> Option<Vec<BigInt>> {
    Some(match t {
        Term::Var(w) if w == v => vec![BigInt::zero(), BigInt::from(1u32)],
        Term::Var(_) | Term::Kappa(_) => return None,
        Term::Succ(a) => poly_add(&poly(a, v)?, &[BigInt::from(1u32)]),
        Term::Add(a, b) => poly_add(&poly(a, v)?, &poly(b, v)?),
        Term::Mul(a, b) => poly_mul(&poly(a, v)?, &poly(b, v)?),
        closed => vec![BigInt::from(eval(closed)?)],
    })
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).cloned().unwrap_or_default() + b.get(k).cloned().unwrap_or_default())
        .collect()
}

fn poly_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let neg: Vec<BigInt> = b.iter().map(|c| -c).collect();
    poly_add(a, &neg)
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Verdict of `a` at stage `i` under `ledger`.
pub fn falsity_member(ledger: &FalsityLedger, a: &Formula, i: usize) -> Verdict {
    ledger.member(a, i)
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditRecord {
    pub index: usize,
    pub theory: String,
    pub conclusion: String,
    pub verdict: Verdict,
}

/// An MP line both of whose premises are out while the conclusion is in.
#[derive(Clone, Debug, Serialize)]
pub struct MpViolation {
    pub index: usize,
    pub line: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AuditReport {
    pub stage: usize,
    pub bound: u64,
    pub records: Vec<AuditRecord>,
    pub in_count: usize,
    pub out_count: usize,
    pub indeterminate_count: usize,
    pub mp_checked: usize,
    pub mp_violations: Vec<MpViolation>,
}

impl AuditReport {
    /// No theorem in the falsity set and no MP-stability violation.
    pub fn is_clean(&self) -> bool {
        self.in_count == 0 && self.mp_violations.is_empty()
    }

    /// Theorems flagged `in`.
    pub fn failures(&self) -> impl Iterator<Item = &AuditRecord> {
        self.records.iter().filter(|r| r.verdict == Verdict::In)
    }

    /// One JSON record per audited proof followed by a summary record.
    pub fn to_json_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .records
            .iter()
            .map(|r| {
                let mut v = serde_json::to_value(r).expect("serializable");
                v["kind"] = "audit".into();
                v.to_string()
            })
            .collect();
        out.push(
            serde_json::json!({
                "kind": "audit-summary",
                "stage": self.stage,
                "bound": self.bound,
                "in": self.in_count,
                "out": self.out_count,
                "indeterminate": self.indeterminate_count,
                "mp_checked": self.mp_checked,
                "mp_violations": self.mp_violations,
            })
            .to_string(),
        );
        out
    }
}

/// Audit the conclusions of `proofs` at stage `i`, and check every
/// unconditional MP line for stability: out premises never give an in
/// conclusion.
pub fn audit_corpus(ledger: &FalsityLedger, proofs: &[ProofObject], i: usize) -> AuditReport {
    let mut report = AuditReport {
        stage: i.min(ledger.stages()),
        bound: ledger.bound(),
        ..AuditReport::default()
    };
    for (index, p) in proofs.iter().enumerate() {
        let Some(c) = p.conclusion() else { continue };
        let verdict = ledger.member(c, i);
        match verdict {
            Verdict::In => report.in_count += 1,
            Verdict::Out => report.out_count += 1,
            Verdict::Indeterminate => report.indeterminate_count += 1,
        }
        report.records.push(AuditRecord {
            index,
            theory: p.theory.to_string(),
            conclusion: formula_to_string(c),
            verdict,
        });
        if p.is_conditional() {
            continue;
        }
        for (line, l) in p.lines.iter().enumerate() {
            let Justification::Mp { major, minor } = l.justification else {
                continue;
            };
            report.mp_checked += 1;
            let out = |k: usize| ledger.member(&p.lines[k].sentence, i) == Verdict::Out;
            if out(major) && out(minor) && ledger.member(&l.sentence, i) == Verdict::In {
                report.mp_violations.push(MpViolation {
                    index,
                    line: line + 1,
                });
            }
        }
    }
    report
}

/// `□⌜0=1⌝` in the theory over PA + ¬Con(PA), derived from its extra axiom
/// `Prov_PA(⌜0=1⌝)` and two named hypotheses: `Mono`, that a PA-proof is a
/// proof in the extended theory, and `Sound`, the instance
/// `Prov(⌜0=1⌝) → □⌜0=1⌝` of soundness for it. Both hold in that theory but
/// their internal proofs need arithmetized syntax, so the witness stays
/// conditional. A sound ledger must flag its conclusion.
pub fn unsound_base_witness() -> ProofObject {
    use crate::kernel::theory::{not_con_pa, SBOX_PA_INCON};
    use crate::kernel::ProofBuilder;
    use crate::syntax::{box_quote, quote};

    let bot = Formula::bottom();
    let prov = Formula::rel(Relation::prov(SBOX_PA_INCON), vec![quote(&bot)]);
    let mut b = ProofBuilder::new(SBOX_PA_INCON);
    let ax = b.axiom(not_con_pa());
    let mono = b
        .hyp("Mono", Formula::imp(not_con_pa(), prov.clone()))
        .expect("fresh hypothesis");
    let sound = b
        .hyp("Sound", Formula::imp(prov, box_quote(&bot)))
        .expect("fresh hypothesis");
    let p = b.mp(mono, ax).expect("shapes match");
    let goal = b.mp(sound, p).expect("shapes match");
    b.finish(goal)
}
