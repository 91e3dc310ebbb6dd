//! Finite truncations of model categories and the explicit colimit
//! constructions inside them.

mod build;
mod colimits;
mod theta;

pub use build::{build_model_category, build_model_category_with, structure_category, ModelCategory};
pub use colimits::{
    check_coequalizer_property, check_coproduct_property, coequalizer, coproduct_unary, equalizer_structure,
    product_structure,
};
pub use theta::{theta_family, theta_family_with};
