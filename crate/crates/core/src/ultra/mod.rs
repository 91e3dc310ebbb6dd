//! Filters on finite index sets, reduced products, Łoś checks and the
//! ultrapower of a model category.

mod embedding;
mod filter;
mod product;

pub use embedding::{ultrapower_category, ultrapower_embedding, UltrapowerEmbedding};
pub use filter::{enumerate_filters, enumerate_ultrafilters, enumerate_ultrafilters_with, FilterOnX, RawFilter};
pub use product::{
    diagonal_embedding, los_verify, los_verify_product, principal_collapse, reduced_product, ultraproduct_hom,
    ReducedProduct, ABSENT,
};
