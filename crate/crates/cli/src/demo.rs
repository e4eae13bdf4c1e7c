//! Named demos. Each emits a manifest: one record per proof (conclusion,
//! hypotheses, proof file, license outcome) plus any verdict records, and
//! every proof is printed, re-parsed and re-checked before it is reported.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use asrt_core::agency::{
    delegation_chain, delegation_derivation, finite_fragment_model, licensed_actions, too_much_case,
    trust_demo, AgencyError, TrustScenario,
};
use asrt_core::corpus::trust_fixture;
use asrt_core::diagonal::{diagonalize, hazard_demos, liar_schema, liar_suite};
use asrt_core::kernel::{check_proof, parse_proof, print_proof, ProofObject, ProofStore, TheoryConfig};
use asrt_core::reflection::assertible_consistency_instance;
use asrt_core::semantics::{audit_corpus, falsity_member, unsound_base_witness, FalsityLedger, Verdict};
use asrt_core::syntax::{box_power, formula_to_string, parse_sentence, Formula};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::{Fatal, Out};

pub struct Ctx<'a> {
    pub out_dir: Option<&'a Path>,
    pub store: Arc<ProofStore>,
}

pub struct Demo {
    pub name: &'static str,
    pub about: &'static str,
    pub run: fn(&Ctx, &mut Out) -> Result<(), Fatal>,
}

pub const DEMOS: &[Demo] = &[
    Demo {
        name: "fixed-point",
        about: "both directions of L ↔ ¬□⌜L⌝ for the liar sentence",
        run: fixed_point,
    },
    Demo {
        name: "liar-suite",
        about: "¬L, □⌜¬L⌝ and □⌜L⌝ → □⌜⊥⌝, with a scan for forbidden theorems",
        run: liar,
    },
    Demo {
        name: "hazards",
        about: "release and excluded middle over □ each lead to trouble",
        run: hazards,
    },
    Demo {
        name: "naturalistic",
        about: "a registered proof of A₀ reflected to □⌜A₀⌝ licenses α₀",
        run: |c, o| trust(TrustScenario::Naturalistic, c, o),
    },
    Demo {
        name: "reflective",
        about: "knowing Prov⌜A₀⌝ yields □⌜A₀⌝, which licenses α₀",
        run: |c, o| trust(TrustScenario::Reflective, c, o),
    },
    Demo {
        name: "coherent",
        about: "(∀n)Prov⌜A(n̄)⌝ with soundness yields □⌜(∀n)A(n)⌝",
        run: |c, o| trust(TrustScenario::Coherent, c, o),
    },
    Demo {
        name: "disjunctive",
        about: "A₀ ∨ Prov⌜A₀⌝ yields □⌜A₀⌝ by cases",
        run: |c, o| trust(TrustScenario::Disjunctive, c, o),
    },
    Demo {
        name: "too-much",
        about: "Prov⌜Con(PA)⌝ → Prov⌜0=1⌝ licenses nothing",
        run: too_much,
    },
    Demo {
        name: "delegation",
        about: "agent 1 may activate agent 2 (two κ constants, action 7)",
        run: |c, o| delegation(2, c, o),
    },
    Demo {
        name: "delegation-chain",
        about: "agents 1 and 2 each activate their successor (three κ constants)",
        run: |c, o| delegation(3, c, o),
    },
    Demo {
        name: "separation",
        about: "□ᵏ⌜0=1⌝ is false from stage k on and not before",
        run: separation,
    },
    Demo {
        name: "unsound-base",
        about: "over PA + ¬Con(PA) the ledger flags the theorem □⌜0=1⌝",
        run: unsound_base,
    },
    Demo {
        name: "fragment-model",
        about: "κᵢ ↦ 10 − i satisfies the κ axioms of the ten-constant fragment",
        run: fragment_model,
    },
    Demo {
        name: "consistency",
        about: "□⌜¬ProofOf(ḡ, ⌜0=1⌝)⌝ for every g ≤ 200",
        run: consistency,
    },
];

fn internal(e: impl std::fmt::Display) -> Fatal {
    Fatal::Internal(e.to_string())
}

fn s(text: &str) -> Formula {
    parse_sentence(text).expect("demo sentences are well formed")
}

/// Round-trip `proof` through its printed form, re-check it, write it to the
/// output directory and emit its record.
fn report_proof(
    ctx: &Ctx,
    out: &mut Out,
    demo: &str,
    part: &str,
    theory: &TheoryConfig,
    proof: &ProofObject,
    mut extra: Value,
) -> Result<(), Fatal> {
    let text = print_proof(proof);
    let again = parse_proof(&text).map_err(internal)?;
    let report = check_proof(theory, &again, &ctx.store);
    let ok = report.accepted && again == *proof;
    let mut v = json!({
        "kind": "demo",
        "demo": demo,
        "part": part,
        "theory": &*theory.name,
        "conclusion": proof.conclusion().map(formula_to_string),
        "hypotheses": proof.hypotheses.iter().map(|h| json!({"name": h.name, "sentence": formula_to_string(&h.sentence)})).collect::<Vec<_>>(),
        "lines": proof.lines.len(),
        "accepted": report.accepted,
        "error": report.error.as_ref().map(|e| e.to_string()),
    });
    if let Some(dir) = ctx.out_dir {
        let path = dir.join(format!("{demo}-{part}.sexp"));
        fs::write(&path, text).map_err(internal)?;
        v["proof_file"] = path.display().to_string().into();
    }
    if let (Some(obj), Some(more)) = (v.as_object_mut(), extra.as_object_mut()) {
        obj.append(more);
    }
    out.emit(v, ok);
    Ok(())
}

fn fixed_point(ctx: &Ctx, out: &mut Out) -> Result<(), Fatal> {
    let theory = TheoryConfig::sbox_pa();
    let fp = diagonalize(&theory, &liar_schema()).map_err(internal)?;
    let extra = json!({"sentence": formula_to_string(&fp.sentence)});
    report_proof(ctx, out, "fixed-point", "forward", &theory, &fp.forward, extra.clone())?;
    report_proof(ctx, out, "fixed-point", "backward", &theory, &fp.backward, extra)
}

fn liar(ctx: &Ctx, out: &mut Out) -> Result<(), Fatal> {
    let theory = TheoryConfig::sbox_pa();
    let suite = liar_suite(&theory).map_err(internal)?;
    let forbidden = suite.forbidden();
    let mut hits = Vec::new();
    for (name, p) in suite.proofs() {
        report_proof(ctx, out, "liar-suite", name, &theory, p, json!({}))?;
        // every line of an unconditional proof is a theorem
        if !p.is_conditional() {
            for l in &p.lines {
                if forbidden.contains(&l.sentence) {
                    hits.push(json!({"part": name, "sentence": formula_to_string(&l.sentence)}));
                }
            }
        }
    }
    let ok = hits.is_empty();
    out.emit(
        json!({
            "kind": "forbidden-scan",
            "demo": "liar-suite",
            "forbidden": forbidden.iter().map(formula_to_string).collect::<Vec<_>>(),
            "hits": hits,
        }),
        ok,
    );
    Ok(())
}

fn hazards(ctx: &Ctx, out: &mut Out) -> Result<(), Fatal> {
    let theory = TheoryConfig::sbox_pa();
    let h = hazard_demos(&theory).map_err(internal)?;
    let extra = json!({"liar": formula_to_string(&h.liar)});
    report_proof(ctx, out, "hazards", "release", &theory, &h.release, extra.clone())?;
    report_proof(ctx, out, "hazards", "excluded-middle", &theory, &h.excluded_middle, extra)
}

fn trust(scenario: TrustScenario, ctx: &Ctx, out: &mut Out) -> Result<(), Fatal> {
    let theory = TheoryConfig::sbox_pa();
    let (a0, fixture) = match scenario {
        TrustScenario::Coherent => (s("(forall n (= n n))"), None),
        _ => {
            let p = trust_fixture();
            (p.conclusion().expect("nonempty").clone(), Some(p))
        }
    };
    if let Some(p) = fixture {
        ctx.store.register(&theory, p).map_err(internal)?;
    }
    let name = scenario.name();
    let outcome = match trust_demo(scenario, &theory, &a0, &ctx.store) {
        Ok(o) => o,
        Err(e @ AgencyError::MissingFixture(_)) => {
            out.emit(json!({"kind": "demo", "demo": name, "error": e.to_string()}), false);
            return Ok(());
        }
        Err(e) => return Err(internal(e)),
    };
    let extra = json!({
        "criterion": formula_to_string(&a0),
        "licensed": outcome.licensed,
        "conditional": outcome.is_conditional(),
        "steps": outcome.steps.iter().map(formula_to_string).collect::<Vec<_>>(),
    });
    report_proof(ctx, out, name, "proof", &theory, &outcome.proof, extra)?;
    if let Some(d) = &outcome.discharged {
        report_proof(ctx, out, name, "discharged", &theory, d, json!({}))?;
    }
    Ok(())
}

fn too_much(_: &Ctx, out: &mut Out) -> Result<(), Fatal> {
    let (policy, proved) = too_much_case();
    let actions = licensed_actions(&policy, &proved);
    out.emit(
        json!({
            "kind": "demo",
            "demo": "too-much",
            "criterion": formula_to_string(&policy.rules()[0].0),
            "proved": formula_to_string(&proved),
            "licensed": actions,
        }),
        actions.is_empty(),
    );
    Ok(())
}

fn delegation(j: u32, ctx: &Ctx, out: &mut Out) -> Result<(), Fatal> {
    let theory = TheoryConfig::sstar(j);
    let runs = if j == 2 {
        vec![delegation_derivation(&theory, 1, 7).map_err(internal)?]
    } else {
        delegation_chain(&theory, 7).map_err(internal)?
    };
    let demo = if j == 2 { "delegation" } else { "delegation-chain" };
    for r in &runs {
        let extra = json!({
            "agent": r.agent,
            "action": r.n0,
            "steps": r.steps.iter().map(formula_to_string).collect::<Vec<_>>(),
        });
        let part = format!("agent{}", r.agent);
        report_proof(ctx, out, demo, &part, &theory, &r.conditional, extra)?;
        report_proof(ctx, out, demo, &format!("{part}-discharged"), &theory, &r.discharged, json!({}))?;
    }
    Ok(())
}

fn separation(_: &Ctx, out: &mut Out) -> Result<(), Fatal> {
    let ledger = FalsityLedger::new(5, 64);
    let bot = Formula::bottom();
    for k in 1..=5 {
        let f = box_power(&bot, k);
        let at = falsity_member(&ledger, &f, k);
        let before = falsity_member(&ledger, &f, k - 1);
        out.emit(
            json!({
                "kind": "separation",
                "k": k,
                "sentence": formula_to_string(&f),
                "at_k": at.name(),
                "before_k": before.name(),
            }),
            at == Verdict::In && before == Verdict::Out,
        );
    }
    Ok(())
}

fn unsound_base(_: &Ctx, out: &mut Out) -> Result<(), Fatal> {
    let theory = TheoryConfig::sbox_pa_incon();
    let witness = unsound_base_witness();
    let accepted = check_proof(&theory, &witness, &ProofStore::new()).accepted;
    let ledger = FalsityLedger::new(5, 64);
    let report = audit_corpus(&ledger, &[trust_fixture(), witness.clone()], 1);
    let flagged: Vec<usize> = report.failures().map(|r| r.index).collect();
    out.emit(
        json!({
            "kind": "demo",
            "demo": "unsound-base",
            "theory": &*theory.name,
            "conclusion": witness.conclusion().map(formula_to_string),
            "hypotheses": witness.hypotheses.iter().map(|h| h.name.clone()).collect::<Vec<_>>(),
            "accepted": accepted,
            "stage": 1,
            "flagged": flagged,
        }),
        accepted && flagged == [1],
    );
    Ok(())
}

fn fragment_model(_: &Ctx, out: &mut Out) -> Result<(), Fatal> {
    let m = finite_fragment_model(10);
    for (ax, ok) in &m.checks {
        out.emit(json!({"kind": "kappa-axiom", "axiom": formula_to_string(ax), "holds": ok}), *ok);
    }
    let env: serde_json::Map<String, Value> = m
        .env
        .iter()
        .map(|(i, v)| (format!("kappa{i}"), v.to_string().into()))
        .collect();
    out.emit(json!({"kind": "demo", "demo": "fragment-model", "model": env}), m.validates());
    Ok(())
}

fn consistency(ctx: &Ctx, out: &mut Out) -> Result<(), Fatal> {
    let theory = TheoryConfig::sbox_pa();
    let mut accepted = 0u32;
    let mut rejected = Vec::new();
    for g in 0u32..=200 {
        let ok = assertible_consistency_instance(&theory, &BigUint::from(g), &ctx.store)
            .map(|p| check_proof(&theory, &p, &ctx.store).accepted)
            .unwrap_or(false);
        if ok {
            accepted += 1;
        } else {
            rejected.push(g);
        }
    }
    out.emit(
        json!({"kind": "demo", "demo": "consistency", "instances": 201, "accepted": accepted, "rejected": rejected}),
        rejected.is_empty(),
    );
    Ok(())
}
