//! Group arrows and the `AB` axioms on finite categories, with the
//! extraction of actual groups through a generator.

mod arrows;
mod check;
mod concrete;
mod extract;

pub use arrows::{
    find_null_object, find_product, group_arrows, group_arrows_with, is_product, zero_map, Associativity,
    GroupArrowCheck, GroupArrowContext, ProductCone,
};
pub use check::{check_ab, AbReport, AxiomVerdict, ObjectVerdict};
pub use concrete::{addition_table, concrete_group_arrows};
pub use extract::{extract_groups, Extraction};
