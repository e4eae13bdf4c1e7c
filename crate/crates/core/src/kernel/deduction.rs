//! The deduction theorem as a proof transformation.
//!
//! Given a proof that uses the hypothesis `H`, produce a proof of `H → C`
//! with `H` removed from the hypotheses. Lines not depending on `H` are
//! copied; a dependent line `X` is replaced by a derivation of `H → X`.
//! For a modus ponens line under the prefix `p⃗` this goes through
//! `(∀p⃗)(H → ·)`, which is sound because `H` is a sentence.

use super::builder::{BuildError, ProofBuilder, Step};
use super::proof::{Justification, ProofObject};

/// Discharge the hypothesis named `name`.
pub fn discharge(proof: &ProofObject, name: &str) -> Result<ProofObject, BuildError> {
    let h = proof
        .hypothesis(name)
        .ok_or_else(|| BuildError::Other {
            rule: "discharge",
            message: format!("no hypothesis named `{name}`"),
        })?
        .clone();
    let mut b = ProofBuilder::new(&proof.theory);
    // out[i]: step proving line i, or H → line i when dep[i]
    let mut out: Vec<Step> = Vec::with_capacity(proof.lines.len());
    let mut dep: Vec<bool> = Vec::with_capacity(proof.lines.len());
    for l in &proof.lines {
        let (s, d) = match &l.justification {
            Justification::Hypothesis(n) if n == name => (b.imp_refl(&[], &h)?, true),
            Justification::Hypothesis(n) => {
                let f = proof
                    .hypothesis(n)
                    .cloned()
                    .ok_or_else(|| BuildError::Other {
                        rule: "discharge",
                        message: format!("undeclared hypothesis `{n}`"),
                    })?;
                (b.hyp(n, f)?, false)
            }
            Justification::Axiom(_) => (b.axiom(l.sentence.clone()), false),
            Justification::Computation => (b.computation(l.sentence.clone()), false),
            Justification::Mp { major, minor } => {
                let (major, minor) = (*major, *minor);
                if !dep[major] && !dep[minor] {
                    (b.mp(out[major], out[minor])?, false)
                } else {
                    let maj = &proof.lines[major].sentence;
                    let (p, _) = maj
                        .strip_foralls(maj.forall_depth())
                        .expect("depth is exact");
                    let lift = |b: &mut ProofBuilder, i: usize| -> Result<Step, BuildError> {
                        if dep[i] {
                            b.push(&p, out[i])
                        } else {
                            b.weaken(&p, out[i], &h)
                        }
                    };
                    let hab = lift(&mut b, major)?;
                    let ha = lift(&mut b, minor)?;
                    let hb = b.imp_mp(&p, hab, ha)?;
                    (b.pull(&p, hb)?, true)
                }
            }
        };
        out.push(s);
        dep.push(d);
    }
    let last = *out.last().ok_or(BuildError::Other {
        rule: "discharge",
        message: "empty proof".into(),
    })?;
    let goal = if *dep.last().expect("nonempty") {
        last
    } else {
        b.weaken(&[], last, &h)?
    };
    let mut result = b.finish(goal);
    result.hypotheses.retain(|x| x.name != name);
    Ok(result)
}

/// Discharge several hypotheses, last named first, giving
/// `H₁ → (H₂ → ... → C)` for `names = [H₁, H₂, ...]`.
pub fn discharge_all(proof: &ProofObject, names: &[&str]) -> Result<ProofObject, BuildError> {
    let mut p = proof.clone();
    for n in names.iter().rev() {
        p = discharge(&p, n)?;
    }
    Ok(p)
}
