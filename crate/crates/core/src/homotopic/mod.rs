//! The equality-free logic of categories with a chosen iso-graph.
//!
//! A category `C` with iso-graph `i` becomes a one-sorted structure on its
//! morphisms with the ternary predicate `QC`. Equivalent categories satisfy
//! the same sentences built from `QC` alone, while sentences with equality
//! can tell a category from its skeleton:
//!
//! ```
//! use catmod::fincat::skeleton;
//! use catmod::fixtures::codiscrete_category;
//! use catmod::homotopic::agreement_test;
//! use catmod::logic::{eval_sentence, parse_formula, Signature};
//!
//! let c = codiscrete_category(2);
//! let (sk, _) = skeleton(&c);
//!
//! // "isomorphic objects are equal"
//! let phi = parse_formula(
//!     "forall X:o. forall Y:o. (exists f:m. exists g:m. dom(f) = X & rng(f) = Y \
//!      & g o f = Id(X) & f o g = Id(Y)) -> X = Y",
//!     &Signature::l_cat(),
//! )
//! .unwrap();
//! assert!(!eval_sentence(&c.to_structure(), &phi).unwrap());
//! assert!(eval_sentence(&sk.to_structure(), &phi).unwrap());
//!
//! let report = agreement_test(&c, &sk, 2, 7, 1_000_000, 0).unwrap();
//! assert!(report.exhaustive && report.agree());
//! ```

mod agreement;
mod isograph;
mod qc;
mod qlim;
mod translate;

pub use agreement::{agreement_test, agreement_test_with, AgreementReport, Certificate};
pub use isograph::{
    build_isograph, count_isographs, enumerate_isographs, extend_to_isograph, extends_to_isograph, IsoGraph,
    RawIsoGraph,
};
pub use qc::{eval_homotopic, expand_iso, i_morphism, l_homo_iso, HomotopicModel, ISO};
pub use qlim::qlim_holds;
pub use translate::translate_lcat;
