//! Workbench for finite (ordered) monoids and regular languages.
//!
//! The crate computes syntactic ordered monoids of regular languages, checks
//! omega-term pseudoidentities and inequalities over them, decides membership
//! in a family of pseudovarieties built around the Burnside identity
//! `x^n = 1`, searches word-level insertion proofs for `1 <= x^n`, and
//! enumerates finite monoids from presentations with zero.

pub mod bits;
pub mod burnside;
pub mod corpus;
pub mod lang;
pub mod monoid;
pub mod presentations;
pub mod provability;
pub mod pseudovar;
pub mod terms;
pub mod words;
