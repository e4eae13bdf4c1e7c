//! Registered proofs. `Prov_T(⌜A⌝)` is admitted as a computation axiom only
//! when this store holds a checked, unconditional proof of `A` in `T`.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use super::checker::{check_proof, CheckReport};
use super::proof::{parse_proof, print_proof, ProofObject};
use super::theory::TheoryConfig;
use crate::syntax::Formula;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("proof rejected: {0}")]
    Rejected(String),
    #[error("conditional proofs (with hypotheses) cannot be registered")]
    Conditional,
    #[error("proof is for theory `{proof}`, not `{theory}`")]
    TheoryMismatch { proof: String, theory: String },
    #[error("unknown theory `{0}` in stored proof")]
    UnknownTheory(String),
    #[error("stored proof {path}: {message}")]
    Corrupt { path: PathBuf, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

type Key = (Arc<str>, Formula);

/// Append-only map from (theory, sentence) to a checked proof. Optionally
/// mirrored to a directory of proof scripts.
#[derive(Default)]
pub struct ProofStore {
    proofs: RwLock<HashMap<Key, ProofObject>>,
    order: RwLock<Vec<Key>>,
    dir: Option<PathBuf>,
}

impl ProofStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Load every `*.sexp` proof script in `dir` (re-checking each, in file name
    /// order) and mirror later registrations there.
    pub fn open(dir: &Path) -> Result<Self, StoreError> {
        fs::create_dir_all(dir)?;
        let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "sexp"))
            .collect();
        paths.sort();
        let store = ProofStore {
            dir: None,
            ..Self::default()
        };
        for path in paths {
            let corrupt = |message: String| StoreError::Corrupt {
                path: path.clone(),
                message,
            };
            let src = fs::read_to_string(&path)?;
            let proof = parse_proof(&src).map_err(|e| corrupt(e.to_string()))?;
            let theory = TheoryConfig::preset(&proof.theory)
                .ok_or_else(|| StoreError::UnknownTheory(proof.theory.to_string()))?;
            store
                .register(&theory, proof)
                .map_err(|e| corrupt(e.to_string()))?;
        }
        Ok(ProofStore {
            dir: Some(dir.to_owned()),
            ..store
        })
    }

    /// Check `proof` against `theory` and, if accepted and unconditional,
    /// record it under its conclusion.
    pub fn register(
        &self,
        theory: &TheoryConfig,
        proof: ProofObject,
    ) -> Result<CheckReport, StoreError> {
        if proof.theory != theory.name {
            return Err(StoreError::TheoryMismatch {
                proof: proof.theory.to_string(),
                theory: theory.name.to_string(),
            });
        }
        if proof.is_conditional() {
            return Err(StoreError::Conditional);
        }
        let report = check_proof(theory, &proof, self);
        if !report.accepted {
            return Err(StoreError::Rejected(
                report
                    .error
                    .as_ref()
                    .map(|e| e.to_string())
                    .unwrap_or_default(),
            ));
        }
        let conclusion = proof
            .conclusion()
            .cloned()
            .expect("accepted proofs are nonempty");
        let key = (theory.name.clone(), conclusion);
        let mut proofs = self.proofs.write().expect("store lock poisoned");
        if proofs.contains_key(&key) {
            return Ok(report);
        }
        if let Some(dir) = &self.dir {
            let n = proofs.len();
            let path = dir.join(format!("{n:06}-{}.sexp", theory.name));
            fs::write(path, print_proof(&proof))?;
        }
        proofs.insert(key.clone(), proof);
        self.order.write().expect("store lock poisoned").push(key);
        Ok(report)
    }

    pub fn contains(&self, theory: &str, sentence: &Formula) -> bool {
        let key = (Arc::from(theory), sentence.clone());
        self.proofs
            .read()
            .expect("store lock poisoned")
            .contains_key(&key)
    }

    pub fn get(&self, theory: &str, sentence: &Formula) -> Option<ProofObject> {
        let key = (Arc::from(theory), sentence.clone());
        self.proofs
            .read()
            .expect("store lock poisoned")
            .get(&key)
            .cloned()
    }

    /// Registered (theory, sentence) pairs in registration order.
    pub fn entries(&self) -> Vec<(String, Formula)> {
        self.order
            .read()
            .expect("store lock poisoned")
            .iter()
            .map(|(t, f)| (t.to_string(), f.clone()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.proofs.read().expect("store lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
