use thiserror::Error;

use crate::report::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {position}: expected {}, found {found}", expected.join(" | "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("sort error: {0}")]
    Sort(String),
    #[error("equality is not allowed in homotopic formulas: {0}")]
    EqualityForbidden(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("term algebra exceeds {cap} elements")]
    TermAlgebraInfinite { cap: usize },
    #[error("map is not a homomorphism of the function/constant reducts: {0}")]
    NotAReductHom(String),
    #[error("invalid structure:\n{0}")]
    InvalidStructure(Report),
    #[error("category axioms violated:\n{0}")]
    AxiomViolation(Report),
    #[error("homomorphisms are not parallel: {0}")]
    NotParallel(String),
    #[error("signature must have no constants and only unary functions: {0}")]
    SignatureNotUnary(String),
    #[error("improper filter: {0}")]
    ImproperFilter(String),
    #[error("category has no null object")]
    NoNullObject,
    #[error("no product cone: {0}")]
    NoProductCone(String),
    #[error("missing triple product: {0}")]
    MissingTripleProduct(String),
    #[error("axiom {axiom} fails: {detail}")]
    AxiomFailure { axiom: String, detail: String },
    #[error("not a finite abelian group: {0}")]
    NotAGroup(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
