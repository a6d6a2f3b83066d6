//! difforms: exact invariant theory for algebras of differential forms over
//! small prime fields.
//!
//! The crate computes, entirely in exact arithmetic over F_3, the structure
//! of the algebra of differential invariants of SL_2(F_3) acting by
//! conjugation on the trace-zero 2x2 matrices: fixed spaces as nullspaces,
//! Molien series through Brauer lifts, homogeneous systems of parameters,
//! free-module certificates, the covariant transfer into the exterior
//! summands, the product relations, and a minimal generating set
//! of the invariant algebra.
//!
//! Start with the runnable examples (`cargo run --example minimal_generators`
//! and friends); the `difforms` binary drives the same pipeline end to end
//! and emits a machine-readable certification report.

pub mod cli;
pub mod field;
pub mod fixtures;
pub mod forms;
pub mod group;
pub mod invariant;
pub mod linalg;
pub mod report;
pub mod series;
pub mod structure;

pub use field::{FieldError, Fp};
pub use forms::{Bidegree, Element, Monomial};
