use std::sync::Arc;

use thiserror::Error;

use crate::syntax::sexp::{read_all, Sexp};
use crate::syntax::{parse, quote, Formula, Relation, Term, Var};

pub const PA: &str = "pa";
pub const SBOX_PA: &str = "sbox-pa";
pub const SBOX_PA_INCON: &str = "sbox-pa-incon";
pub const SSTAR_PREFIX: &str = "sstar-j";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("theory config: {0}")]
pub struct ConfigError(pub String);

/// A named axiom base. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryConfig {
    pub name: Arc<str>,
    /// Excluded middle for □-free formulas.
    pub classical: bool,
    /// Admit □ and the box axioms (1)–(6).
    pub box_axioms: bool,
    /// Admit the jump axiom `(∀g)(Ax(g) → □(g))`.
    pub jump: bool,
    /// Number of κ constants admitted (κ₁..κ_n).
    pub kappas: u32,
    /// Admit the agent symbols `Act_Mi` and Γ.
    pub agents: bool,
    /// Non-logical axioms beyond PA, matched exactly.
    pub extra_axioms: Vec<Formula>,
}

impl TheoryConfig {
    /// Classical Peano arithmetic.
    pub fn pa() -> Self {
        TheoryConfig {
            name: Arc::from(PA),
            classical: true,
            box_axioms: false,
            jump: false,
            kappas: 0,
            agents: false,
            extra_axioms: vec![],
        }
    }

    /// S_□ over a classical base: PA axioms, excluded middle for □-free
    /// formulas, box axioms, capture and the jump axiom.
    pub fn sbox(name: &str, extra_axioms: Vec<Formula>) -> Self {
        TheoryConfig {
            name: Arc::from(name),
            classical: true,
            box_axioms: true,
            jump: true,
            kappas: 0,
            agents: false,
            extra_axioms,
        }
    }

    /// S_□(PA).
    pub fn sbox_pa() -> Self {
        Self::sbox(SBOX_PA, vec![])
    }

    /// S_□(PA + ¬Con(PA)), with ¬Con(PA) written as `Prov_PA(⌜0=1⌝)`.
    pub fn sbox_pa_incon() -> Self {
        Self::sbox(SBOX_PA_INCON, vec![not_con_pa()])
    }

    /// S*_□ with κ₁..κ_j and the axioms κᵢ = κᵢ₊₁ + 1.
    pub fn sstar(j: u32) -> Self {
        let extra = (1..j).map(kappa_axiom).collect();
        TheoryConfig {
            name: Arc::from(format!("{SSTAR_PREFIX}{j}").as_str()),
            kappas: j,
            agents: true,
            ..Self::sbox(SBOX_PA, extra)
        }
    }

    /// Look up a named preset.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            PA => Some(Self::pa()),
            SBOX_PA => Some(Self::sbox_pa()),
            SBOX_PA_INCON => Some(Self::sbox_pa_incon()),
            _ => {
                let j: u32 = name.strip_prefix(SSTAR_PREFIX)?.parse().ok()?;
                (j >= 1).then(|| Self::sstar(j))
            }
        }
    }

    pub fn preset_names() -> Vec<String> {
        vec![
            PA.into(),
            SBOX_PA.into(),
            SBOX_PA_INCON.into(),
            format!("{SSTAR_PREFIX}<n>"),
        ]
    }

    /// Parse a theory file:
    ///
    /// ```text
    /// (theory NAME
    ///   (base pa)          ; or sbox, the default
    ///   (kappas J)         ; κ₁..κ_J, their axioms, agents and Γ
    ///   (axiom SENTENCE)*)
    /// ```
    ///
    /// `NAME` must not shadow a preset.
    pub fn parse_config(src: &str) -> Result<Self, ConfigError> {
        let bad = |s: &Sexp, m: &str| {
            let p = s.pos();
            ConfigError(format!("{}:{}: {m}", p.line, p.col))
        };
        let forms = read_all(src).map_err(|e| ConfigError(e.to_string()))?;
        let [top] = forms.as_slice() else {
            return Err(ConfigError("expected exactly one (theory ...) form".into()));
        };
        let Some(("theory", [name, items @ ..])) = top.head() else {
            return Err(bad(top, "expected (theory NAME ...)"));
        };
        let name = name.atom().ok_or_else(|| bad(name, "expected a theory name"))?;
        if !crate::syntax::codec::valid_theory_name(name) {
            return Err(bad(top, "invalid theory name"));
        }
        if Self::preset(name).is_some() {
            return Err(bad(top, "theory name shadows a preset"));
        }
        let mut config = Self::sbox(name, vec![]);
        let mut extra = Vec::new();
        for item in items {
            match item.head() {
                Some(("base", [b])) => match b.atom() {
                    Some(PA) => {
                        config.box_axioms = false;
                        config.jump = false;
                    }
                    Some("sbox") => {}
                    _ => return Err(bad(b, "base is `pa` or `sbox`")),
                },
                Some(("kappas", [j])) => {
                    let j: u32 = j
                        .atom()
                        .and_then(|a| a.parse().ok())
                        .ok_or_else(|| bad(j, "expected a count"))?;
                    config.kappas = j;
                    config.agents = j > 0;
                    extra.extend((1..j).map(kappa_axiom));
                }
                Some(("axiom", [f])) => {
                    let f = parse::formula(f).map_err(|e| ConfigError(e.to_string()))?;
                    if !f.is_sentence() {
                        return Err(bad(item, "axioms must be sentences"));
                    }
                    extra.push(f);
                }
                _ => return Err(bad(item, "expected (base ..), (kappas ..) or (axiom ..)")),
            }
        }
        if config.kappas > 0 && !config.box_axioms {
            return Err(ConfigError("κ constants need the sbox base".into()));
        }
        for f in &extra {
            if !config.in_language(f) {
                return Err(ConfigError(format!(
                    "axiom {} is outside the language",
                    crate::syntax::formula_to_string(f)
                )));
            }
        }
        config.extra_axioms = extra;
        Ok(config)
    }

    /// This theory when `name` is its own, otherwise the preset of that name.
    pub fn resolve(&self, name: &str) -> Option<std::borrow::Cow<'_, TheoryConfig>> {
        if &*self.name == name {
            Some(std::borrow::Cow::Borrowed(self))
        } else {
            Self::preset(name).map(std::borrow::Cow::Owned)
        }
    }

    /// The jump axiom of this theory.
    pub fn jump_axiom(&self) -> Formula {
        jump_axiom(&self.name)
    }

    /// Is every symbol of `f` admitted by this theory?
    pub fn in_language(&self, f: &Formula) -> bool {
        if f.contains_box() && !self.box_axioms {
            return false;
        }
        if f.max_kappa() > self.kappas {
            return false;
        }
        if !self.agents {
            let mut rels = Vec::new();
            f.relations(&mut rels);
            if rels
                .iter()
                .any(|r| matches!(r, Relation::Act(_) | Relation::Gamma))
            {
                return false;
            }
        }
        true
    }
}

/// `(∀g)(Ax_T(g) → □(g))`.
pub fn jump_axiom(theory: &str) -> Formula {
    let g = Var::new("g");
    Formula::forall(
        g.clone(),
        Formula::imp(
            Formula::rel(Relation::ax(theory), vec![Term::Var(g.clone())]),
            Formula::Box(Term::Var(g)),
        ),
    )
}

/// `Prov_PA(⌜0=1⌝)`, the reading of ¬Con(PA) used by the inconsistent-base
/// preset.
pub fn not_con_pa() -> Formula {
    Formula::rel(Relation::prov(PA), vec![quote(&Formula::bottom())])
}

/// `Con(T)`, i.e. `¬Prov_T(⌜0=1⌝)`.
pub fn con(theory: &str) -> Formula {
    Formula::not(Formula::rel(
        Relation::prov(theory),
        vec![quote(&Formula::bottom())],
    ))
}

/// `κᵢ = κᵢ₊₁ + 1`.
pub fn kappa_axiom(i: u32) -> Formula {
    Formula::eq(
        Term::Kappa(i),
        Term::add(Term::Kappa(i + 1), Term::numeral(1u32)),
    )
}
