//! `asrt`: check proofs, reflect them, audit them against the falsity
//! ledger, run the named demos, query licensing and use the codec.
//!
//! Every machine-readable record goes to stdout as one JSON object per
//! line; the human summary goes to stderr. Exit codes: 0 when no record
//! failed, 1 when some did, 2 for usage errors, 3 for internal errors.

mod demo;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use asrt_core::agency::{licenses, LicensingPolicy};
use asrt_core::kernel::{check_proof, parse_proof, print_proof, ProofObject, ProofStore, TheoryConfig};
use asrt_core::reflection::{reflect_iterated, reflect_theorem};
use asrt_core::semantics::{audit_corpus, falsity_member, FalsityLedger, DEFAULT_BOUND, DEFAULT_STAGES};
use asrt_core::syntax::{decode_formula, encode_formula, formula_to_string, parse_formula};
use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

/// Environment variable naming the session proof store directory.
pub const STORE_ENV: &str = "ASRT_PROOF_STORE";

#[derive(Parser)]
#[command(name = "asrt", version, about = "Proof kernel for arithmetic with an assertibility predicate")]
struct Cli {
    /// Omit the timestamp field so output is byte-stable across runs.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct TheoryArgs {
    /// Preset theory: pa, sbox-pa, sbox-pa-incon or sstar-jN. Defaults to
    /// the theory named in each proof.
    #[arg(long)]
    theory: Option<String>,
    /// Theory config file, used instead of a preset.
    #[arg(long, conflicts_with = "theory")]
    theory_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check proof scripts.
    Check {
        #[command(flatten)]
        theory: TheoryArgs,
        /// Register accepted unconditional proofs in the session store.
        #[arg(long)]
        register: bool,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Turn a proof of A into a proof of □⌜A⌝.
    Reflect {
        #[command(flatten)]
        theory: TheoryArgs,
        /// Reflect this many times.
        #[arg(long, default_value_t = 1)]
        iterate: usize,
        /// Write the reflected proof here instead of embedding it.
        #[arg(long)]
        out: Option<PathBuf>,
        file: PathBuf,
    },
    /// Evaluate sentences in the falsity ledger or audit a corpus.
    Falsity {
        #[arg(long, default_value_t = DEFAULT_STAGES)]
        stages: usize,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
        /// Directory of proof scripts to audit at the last stage.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[command(flatten)]
        theory: TheoryArgs,
        /// Sentences to evaluate at every stage.
        sentences: Vec<String>,
    },
    /// Run a named demo.
    Demo {
        /// One of the names printed by `demo --list`.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// Write demo proofs into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Which actions does a proved sentence license?
    License {
        #[arg(long)]
        policy: PathBuf,
        /// Proof script of the sentence.
        #[arg(long)]
        proved: PathBuf,
        #[command(flatten)]
        theory: TheoryArgs,
    },
    /// Encode a formula as its Gödel code or decode a code.
    Codec {
        #[command(subcommand)]
        op: CodecOp,
    },
}

#[derive(Subcommand)]
enum CodecOp {
    Encode { formula: String },
    Decode { code: String },
}

/// A failure that ends the command early.
#[derive(Debug)]
pub enum Fatal {
    Usage(String),
    Internal(String),
}

impl Fatal {
    fn internal(e: impl std::fmt::Display) -> Self {
        Fatal::Internal(e.to_string())
    }
}

/// The record stream of one command.
pub struct Out {
    timestamp: bool,
    pub records: usize,
    pub failures: usize,
}

impl Out {
    fn new(timestamp: bool) -> Self {
        Out {
            timestamp,
            records: 0,
            failures: 0,
        }
    }

    /// Print one record; `ok = false` counts it as a failure.
    pub fn emit(&mut self, mut v: Value, ok: bool) {
        v["ok"] = ok.into();
        if self.timestamp {
            let t = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            v["timestamp"] = t.into();
        }
        println!("{v}");
        self.records += 1;
        if !ok {
            self.failures += 1;
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out::new(!cli.no_timestamp);
    match run(cli.command, &mut out) {
        Ok(()) => {
            eprintln!("{} records, {} failed", out.records, out.failures);
            ExitCode::from(u8::from(out.failures > 0))
        }
        Err(Fatal::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fatal::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}

/// The session store: the directory in `ASRT_PROOF_STORE`, or an empty
/// in-memory store.
pub fn session_store() -> Result<Arc<ProofStore>, Fatal> {
    match std::env::var_os(STORE_ENV) {
        Some(dir) if !dir.is_empty() => ProofStore::open(Path::new(&dir))
            .map(Arc::new)
            .map_err(Fatal::internal),
        _ => Ok(Arc::new(ProofStore::new())),
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal::Internal(format!("{}: {e}", path.display())))
}

impl TheoryArgs {
    /// The theory fixed on the command line, if any.
    fn fixed(&self) -> Result<Option<TheoryConfig>, Fatal> {
        if let Some(name) = &self.theory {
            return TheoryConfig::preset(name).map(Some).ok_or_else(|| {
                Fatal::Usage(format!(
                    "unknown theory `{name}`; presets are {}",
                    TheoryConfig::preset_names().join(", ")
                ))
            });
        }
        if let Some(path) = &self.theory_file {
            return TheoryConfig::parse_config(&read(path)?)
                .map(Some)
                .map_err(|e| Fatal::Usage(format!("{}: {e}", path.display())));
        }
        Ok(None)
    }

    /// The theory to check `proof` against.
    fn for_proof(&self, proof: &ProofObject) -> Result<TheoryConfig, String> {
        match self.fixed() {
            Ok(Some(t)) => Ok(t),
            Ok(None) => TheoryConfig::preset(&proof.theory)
                .ok_or_else(|| format!("unknown theory `{}`", proof.theory)),
            Err(Fatal::Usage(m) | Fatal::Internal(m)) => Err(m),
        }
    }
}

fn run(command: Command, out: &mut Out) -> Result<(), Fatal> {
    match command {
        Command::Check {
            theory,
            register,
            files,
        } => check(&theory, register, &files, out),
        Command::Reflect {
            theory,
            iterate,
            out: dest,
            file,
        } => reflect(&theory, iterate, dest.as_deref(), &file, out),
        Command::Falsity {
            stages,
            bound,
            corpus,
            theory,
            sentences,
        } => falsity(stages, bound, corpus.as_deref(), &theory, &sentences, out),
        Command::Demo {
            name,
            list,
            out_dir,
        } => {
            if list {
                for d in demo::DEMOS {
                    out.emit(json!({"kind": "demo-name", "demo": d.name, "about": d.about}), true);
                }
                return Ok(());
            }
            let name = name.expect("required unless --list");
            let d = demo::DEMOS.iter().find(|d| d.name == name).ok_or_else(|| {
                let names: Vec<_> = demo::DEMOS.iter().map(|d| d.name).collect();
                Fatal::Usage(format!("unknown demo `{name}`; demos are {}", names.join(", ")))
            })?;
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).map_err(Fatal::internal)?;
            }
            (d.run)(&demo::Ctx {
                out_dir: out_dir.as_deref(),
                store: session_store()?,
            }, out)
        }
        Command::License {
            policy,
            proved,
            theory,
        } => license(&policy, &proved, &theory, out),
        Command::Codec { op } => codec(op, out),
    }
}

/// Parse a proof file, reporting a parse failure as a failed record.
fn load_proof(path: &Path, kind: &str, out: &mut Out) -> Result<Option<ProofObject>, Fatal> {
    match parse_proof(&read(path)?) {
        Ok(p) => Ok(Some(p)),
        Err(e) => {
            out.emit(
                json!({"kind": kind, "file": path.display().to_string(), "accepted": false, "error": e.to_string()}),
                false,
            );
            Ok(None)
        }
    }
}

fn check(args: &TheoryArgs, register: bool, files: &[PathBuf], out: &mut Out) -> Result<(), Fatal> {
    args.fixed()?;
    let store = session_store()?;
    for path in files {
        let Some(proof) = load_proof(path, "check", out)? else {
            continue;
        };
        let file = path.display().to_string();
        let theory = match args.for_proof(&proof) {
            Ok(t) => t,
            Err(m) => {
                out.emit(json!({"kind": "check", "file": file, "accepted": false, "error": m}), false);
                continue;
            }
        };
        let report = check_proof(&theory, &proof, &store);
        let mut v = serde_json::to_value(&report).map_err(Fatal::internal)?;
        v["kind"] = "check".into();
        v["file"] = file.into();
        v["lines"] = report.lines.len().into();
        v["error"] = report.error.as_ref().map(|e| e.to_string()).into();
        if register && report.accepted && !report.conditional {
            store.register(&theory, proof).map_err(Fatal::internal)?;
            v["registered"] = true.into();
        }
        out.emit(v, report.accepted);
    }
    Ok(())
}

fn reflect(
    args: &TheoryArgs,
    iterate: usize,
    dest: Option<&Path>,
    file: &Path,
    out: &mut Out,
) -> Result<(), Fatal> {
    args.fixed()?;
    let store = session_store()?;
    let Some(proof) = load_proof(file, "reflect", out)? else {
        return Ok(());
    };
    let source = file.display().to_string();
    let theory = match args.for_proof(&proof) {
        Ok(t) => t,
        Err(m) => {
            out.emit(json!({"kind": "reflect", "file": source, "error": m}), false);
            return Ok(());
        }
    };
    let (result, chains) = if iterate == 1 {
        match reflect_theorem(&theory, &proof, &store) {
            Ok(t) => (Ok(t.output), t.chains.len()),
            Err(e) => (Err(e), 0),
        }
    } else {
        (reflect_iterated(&theory, &proof, iterate, &store), 0)
    };
    let output = match result {
        Ok(p) => p,
        Err(e) => {
            out.emit(json!({"kind": "reflect", "file": source, "error": e.to_string()}), false);
            return Ok(());
        }
    };
    let report = check_proof(&theory, &output, &store);
    let mut v = json!({
        "kind": "reflect",
        "file": source,
        "theory": &*theory.name,
        "iterate": iterate,
        "source_conclusion": proof.conclusion().map(formula_to_string),
        "conclusion": output.conclusion().map(formula_to_string),
        "source_lines": proof.lines.len(),
        "lines": output.lines.len(),
        "mp_chains": chains,
        "accepted": report.accepted,
    });
    let text = print_proof(&output);
    match dest {
        Some(d) => {
            fs::write(d, text).map_err(Fatal::internal)?;
            v["proof_file"] = d.display().to_string().into();
        }
        None => v["proof"] = text.into(),
    }
    out.emit(v, report.accepted);
    Ok(())
}

fn falsity(
    stages: usize,
    bound: u64,
    corpus: Option<&Path>,
    args: &TheoryArgs,
    sentences: &[String],
    out: &mut Out,
) -> Result<(), Fatal> {
    args.fixed()?;
    if corpus.is_none() && sentences.is_empty() {
        return Err(Fatal::Usage("give sentences or --corpus DIR".into()));
    }
    let store = session_store()?;
    let ledger = FalsityLedger::with_store(stages, bound, store.clone());
    for text in sentences {
        let f = parse_formula(text).map_err(|e| Fatal::Usage(format!("`{text}`: {e}")))?;
        if !f.is_sentence() {
            return Err(Fatal::Usage(format!("`{text}` has free variables")));
        }
        let verdicts: Vec<&str> = (0..=stages).map(|i| falsity_member(&ledger, &f, i).name()).collect();
        out.emit(
            json!({
                "kind": "member",
                "sentence": formula_to_string(&f),
                "bound": bound,
                "verdicts": verdicts,
            }),
            true,
        );
    }
    let Some(dir) = corpus else {
        return Ok(());
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Fatal::Internal(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "sexp"))
        .collect();
    paths.sort();
    let mut accepted = Vec::new();
    let mut files = Vec::new();
    for path in &paths {
        let Some(proof) = load_proof(path, "audit", out)? else {
            continue;
        };
        let ok = args
            .for_proof(&proof)
            .map(|t| check_proof(&t, &proof, &store).accepted)
            .unwrap_or(false);
        if ok {
            accepted.push(proof);
            files.push(path.display().to_string());
        } else {
            out.emit(
                json!({"kind": "audit", "file": path.display().to_string(), "accepted": false}),
                false,
            );
        }
    }
    let report = audit_corpus(&ledger, &accepted, stages);
    for line in report.to_json_lines() {
        let mut v: Value = serde_json::from_str(&line).map_err(Fatal::internal)?;
        let ok = match v["kind"].as_str() {
            Some("audit") => {
                if let Some(i) = v["index"].as_u64() {
                    v["file"] = files[i as usize].clone().into();
                }
                v["verdict"] != "in"
            }
            _ => report.is_clean(),
        };
        out.emit(v, ok);
    }
    Ok(())
}

fn license(policy: &Path, proved: &Path, args: &TheoryArgs, out: &mut Out) -> Result<(), Fatal> {
    args.fixed()?;
    let policy = LicensingPolicy::parse(&read(policy)?)
        .map_err(|e| Fatal::Usage(format!("{}: {e}", policy.display())))?;
    let store = session_store()?;
    let Some(proof) = load_proof(proved, "license", out)? else {
        return Ok(());
    };
    let file = proved.display().to_string();
    let theory = match args.for_proof(&proof) {
        Ok(t) => t,
        Err(m) => {
            out.emit(json!({"kind": "license", "file": file, "error": m}), false);
            return Ok(());
        }
    };
    let conclusion = proof.conclusion().cloned();
    if let Err(e) = store.register(&theory, proof) {
        out.emit(json!({"kind": "license", "file": file, "error": e.to_string()}), false);
        return Ok(());
    }
    let conclusion = conclusion.expect("registered proofs are nonempty");
    match licenses(&policy, &theory.name, &conclusion, &store) {
        Ok(actions) => out.emit(
            json!({
                "kind": "license",
                "file": file,
                "proved": formula_to_string(&conclusion),
                "exact": policy.is_exact(),
                "actions": actions,
            }),
            true,
        ),
        Err(e) => out.emit(json!({"kind": "license", "file": file, "error": e.to_string()}), false),
    }
    Ok(())
}

fn codec(op: CodecOp, out: &mut Out) -> Result<(), Fatal> {
    match op {
        CodecOp::Encode { formula } => {
            let f = parse_formula(&formula).map_err(|e| Fatal::Usage(e.to_string()))?;
            out.emit(
                json!({
                    "kind": "codec",
                    "op": "encode",
                    "formula": formula_to_string(&f),
                    "code": encode_formula(&f).to_string(),
                }),
                true,
            );
        }
        CodecOp::Decode { code } => {
            let n = BigUint::from_str(code.trim())
                .map_err(|_| Fatal::Usage(format!("`{code}` is not a natural number")))?;
            match decode_formula(&n) {
                Some(f) => out.emit(
                    json!({"kind": "codec", "op": "decode", "code": code, "formula": formula_to_string(&f)}),
                    true,
                ),
                None => out.emit(
                    json!({"kind": "codec", "op": "decode", "code": code, "error": "not the code of a formula"}),
                    false,
                ),
            }
        }
    }
    Ok(())
}
