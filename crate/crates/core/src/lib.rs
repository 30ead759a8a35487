//! Computational toolkit for seminormal quasi-crystals and the monoids they
//! generate.
//!
//! The library is organized around a small tower of structures:
//!
//! - [`rootsys`]: root-system data (simple roots, coroot pairings,
//!   reflections) for Cartan types A and C, plus a table-driven generic
//!   variant. All arithmetic is exact integer arithmetic.
//! - [`crystal`]: the seminormal quasi-crystal abstraction — a finite carrier
//!   with a weight map, partial raising/lowering operators `e_i`/`f_i`, and
//!   statistics `ε_i`/`φ_i` valued in `Z ∪ {+∞}` — together with the standard
//!   crystals of types A and C, a JSON loader, an exhaustive axiom validator,
//!   and isomorphism checking.
//! - [`products`]: the binary tensor product `⊗` and quasi-tensor product
//!   `⊗̇` of two quasi-crystals of the same type, materialized as explicit
//!   tables.
//! - [`words`]: the free `⊗`- and `⊗̇`-quasi-crystal monoids over a base
//!   quasi-crystal. Word-level structure is evaluated lazily through the
//!   signature rule, never by materializing product carriers.
//! - [`graphs`]: connected components of the word-crystal graph, rooted
//!   component isomorphism, and DOT/JSON export.
//! - [`congruence`]: the plactic (`≈`) and hypoplactic (`∼̈`) congruences,
//!   bounded class enumeration, and the quotient-inclusion sweep.
//! - [`transform`]: derivation of quasi-tensor structure from tensor
//!   structure on the free word monoid, and the matching graph rewrite
//!   (edge removal / loop addition).
//! - [`cache`]: persistent component and decided-pair caches used by the
//!   command-line front end.

pub mod cache;
pub mod congruence;
pub mod crystal;
pub mod error;
mod exact;
pub mod extint;
pub mod graphs;
pub mod products;
pub mod rootsys;
pub mod transform;
pub mod words;

pub use crate::crystal::{EltId, QuasiCrystal, ValidationReport};
pub use crate::error::{Error, Result};
pub use crate::extint::ExtInt;
pub use crate::products::ProductMode;
pub use crate::rootsys::{RootSystem, Weight};
pub use crate::words::Word;
