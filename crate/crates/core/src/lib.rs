//! Proof-term kernel for the intuitionistic logic of constant domains.
//!
//! The logic is intuitionistic first-order natural deduction plus a constant
//! `D` inhabiting every instance of `∀α(A ∨ B) → (∀α A) ∨ B` (α not free in
//! `B`). The kernel type-checks proof terms, normalizes them, translates them
//! into intuitionistic logic with a falsity constant, and extracts witnesses
//! and disjuncts from closed normal proofs.

// Typing errors carry the expected and actual formulas by value.
#![allow(clippy::result_large_err)]

pub mod batch;
pub mod cli;
pub mod extract;
pub mod generate;
pub mod reduce;
pub mod selftest;
pub mod signature;
pub mod surface;
pub mod syntax;
pub mod translate;
pub mod typing;

pub use signature::Signature;
pub use syntax::{alpha_equal, alpha_equal_proofs, fo_free_vars, fo_subst, Context, Formula, Path, Proof, Side, Term};
pub use typing::{check, check_cd_instance, infer, Checker, ErrorKind, Mode, TypingError};
