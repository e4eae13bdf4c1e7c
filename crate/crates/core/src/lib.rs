//! A proof kernel for Peano arithmetic extended with a self-applicative
//! assertibility predicate □.
//!
//! * [`syntax`]: terms, formulas, the Gödel codec and s-expression syntax.
//! * [`kernel`]: theories, axiom recognition and the proof checker.
//! * [`reflection`]: proofs of `A` into proofs of `□⌜A⌝`.
//! * [`semantics`]: the bounded falsity ledger and corpus audits.
//! * [`diagonal`]: fixed points and the liar derivations.
//! * [`corpus`]: the regression corpus of accepted theorems.
//! * [`agency`]: licensing, trust scenarios and delegation between agents.

pub mod agency;
pub mod corpus;
pub mod diagonal;
pub mod kernel;
pub mod reflection;
pub mod semantics;
pub mod syntax;
