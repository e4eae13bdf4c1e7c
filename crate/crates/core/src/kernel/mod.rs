//! The proof kernel: theories, axiom recognition, computation axioms, the
//! checker, the proof store and derived-rule construction.

pub mod builder;
pub mod checker;
pub mod compute;
pub mod deduction;
pub mod proof;
pub mod quote;
pub mod schemes;
pub mod store;
pub mod theory;

pub use builder::{all, BuildError, ProofBuilder, Step};
pub use checker::{accepts, check_proof, CheckReport, LineReport, RejectKind, Rejection};
pub use compute::{admit_computation, is_proof_of, Computation};
pub use deduction::{discharge, discharge_all};
pub use proof::{
    decode_proof, encode_proof, parse_proof, print_proof, Hypothesis, Justification, Line,
    ProofObject, ScriptError,
};
pub use quote::{quote_view, QuoteView};
pub use schemes::{is_axiom, is_main_axiom, AxiomMatch, Scheme};
pub use store::{ProofStore, StoreError};
pub use theory::TheoryConfig;
