//! Finite categories, functors, diagrams and searches over them.

mod category;
mod functor;
mod generators;
mod limits;
mod skeleton;

pub use category::{category_from_structure, validate_category, FinCategory, Morphism, RawCategory, RawMorphism};
pub use functor::{enumerate_functors, find_isomorphism, Diagram, Functor, RawDiagram, RawFunctor};
pub use generators::{
    find_generator_families, find_generators, hom_functor, is_generating_family, is_generator, is_locally_unique,
    separates, GeneratorFamily,
};
pub use limits::{
    all_limits, cones_at, discrete_shape, empty_diagram, is_limit_cone, limit_of, pair_diagram, parallel_diagram,
    parallel_shape, Cone,
};
pub use skeleton::{are_equivalent, is_natural_iso, is_skeletal, skeleton, skeleton_data, Equivalence, Skeleton};
