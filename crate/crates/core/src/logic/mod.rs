//! Multi-sorted first-order syntax and its finite semantics.

mod agreement;
mod enumerate;
mod eval;
mod parser;
mod signature;
mod syntax;

pub use agreement::{bounded_agreement, Agreement};
pub use enumerate::{enumerate_sentences, enumerate_sentences_with, SentenceSpace};
pub use eval::{eval_formula, eval_sentence, Env, Evaluator};
pub(crate) use eval::{Compiled, Interp, Val};
pub use parser::{parse_formula, parse_formula_in, parse_homotopic, parse_term_in};
pub(crate) use signature::graph_name;
pub use signature::{FunctionSymbol, Signature, SortId, COMP, DOM, ID, QC, RNG};
pub use syntax::{Formula, Term};
