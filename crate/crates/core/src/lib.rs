//! Finite, desk-scale model theory of categories.
//!
//! The crate is organised bottom-up:
//!
//! - [`logic`]: multi-sorted first-order syntax, a parser/printer, a
//!   free-logic evaluator and a deterministic sentence enumerator.
//! - [`structures`]: finite structures, homomorphism search, isomorphism,
//!   Ehrenfeucht–Fraïssé games, term algebras, pullback structures and model
//!   enumeration.
//! - [`fincat`]: finite categories as validated `L_cat` structures, functors,
//!   (co)limits by exhaustive search, skeletons, equivalence and generators.
//! - [`modcat`]: finite truncations of model categories together with the
//!   explicit coequalizer, unary coproduct and Θ-family constructions.
//! - [`ultra`]: filters on finite index sets, reduced products, Łoś checks and
//!   the embedding of an ultrapower of a model category.
//! - [`homotopic`]: iso-graphs, quasi-composition and the equality-free
//!   homotopic logic.
//! - [`abcheck`]: group arrows and the `AB` axioms.

#![allow(clippy::needless_range_loop)]

pub mod abcheck;
pub mod config;
pub mod error;
pub mod fincat;
pub mod fixtures;
pub mod homotopic;
pub mod label;
pub mod logic;
pub mod modcat;
pub mod report;
pub mod structures;
pub mod ultra;

pub use error::{Error, Result};
