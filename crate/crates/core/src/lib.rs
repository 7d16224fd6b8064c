//! Synthesis and verification toolkit for the unitary permutation problem.
//!
//! Given oracles `U_1, …, U_n` and a permutation `σ`, the task is to apply
//! `U_σ(n) ∘ … ∘ U_σ(1)`. This crate covers both circuit models:
//!
//! - [`superseq`]: complete sequences (words containing every permutation of
//!   `[n]` as a subsequence), their certification, constructions and an exact
//!   branch-and-bound search for shortest ones.
//! - [`oracle`]: exact word codes, the phase-oracle distinguishing family and
//!   small dense unitary algebra.
//! - [`standard`]: routed circuits driven by a complete sequence, the `n²`
//!   baseline circuit, symbolic/phase/numeric simulation and call-word audits.
//! - [`switchnet`]: triangular and Beneš switch networks, routing, propagation
//!   and the ordering-counting bounds.
//!
//! Heavy sweeps (all `n!` permutations, all `2^k` control programs) run on
//! rayon when the `parallel` feature is enabled and fall back to plain
//! iterators otherwise; see [`exec::Execution`].

pub mod dot;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod perm;
pub mod standard;
pub mod superseq;
pub mod switchnet;

pub use error::{Error, Result};
pub use exec::Execution;
pub use perm::Permutation;
