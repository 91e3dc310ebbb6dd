//! Finite multi-sorted structures and the searches over them.

mod ef;
mod hom;
mod iso;
mod pullback;
mod structure;
mod termalg;
mod theory;

pub use ef::{ef_equivalent, ef_equivalent_with};
pub use hom::{all_maps, count_homomorphisms, enumerate_homomorphisms, is_homomorphism, is_strong, Homomorphism};
pub(crate) use hom::{search, SearchMode};
pub use iso::{are_isomorphic, canonical_form, relabel};
pub use pullback::pullback_structure;
pub(crate) use structure::{tuples, unflatten};
pub use structure::{validate_structure, FinStructure, FuncTable, RawFunction, RawStructure, RelTable};
pub use termalg::{eval_term_at, term_algebra, TERM_VARIABLE};
pub use theory::{enumerate_models, enumerate_models_with, RawTheory, Theory};
