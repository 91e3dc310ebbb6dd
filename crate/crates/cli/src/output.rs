use std::io::Write;
use std::process::ExitCode;

use catmod::Error;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A finished report: the JSON body, a one-paragraph human summary and
/// whether the verdict is positive.
pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub positive: bool,
}

impl Outcome {
    pub fn new(report: impl Serialize, summary: impl Into<String>, positive: bool) -> Result<Outcome, Failure> {
        Ok(Outcome {
            report: serde_json::to_value(report).map_err(Error::from)?,
            summary: summary.into(),
            positive,
        })
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

pub fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

/// Library errors that answer the question asked with "no" rather than
/// reject the input.
fn verdict_kind(e: &Error) -> Option<&'static str> {
    Some(match e {
        Error::AxiomFailure { .. } => "AxiomFailure",
        Error::NoNullObject => "NoNullObject",
        Error::NoProductCone(_) => "NoProductCone",
        Error::MissingTripleProduct(_) => "MissingTripleProduct",
        Error::NotAGroup(_) => "NotAGroup",
        Error::NotAReductHom(_) => "NotAReductHom",
        Error::NotParallel(_) => "NotParallel",
        Error::TermAlgebraInfinite { .. } => "TermAlgebraInfinite",
        Error::SignatureNotUnary(_) => "SignatureNotUnary",
        _ => return None,
    })
}

fn emit(report: &Value, summary: &str, format: Format) {
    let mut out = std::io::stdout().lock();
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(report).expect("JSON values serialize");
            let _ = writeln!(out, "{text}");
            eprintln!("{summary}");
        }
        Format::Text => {
            let _ = writeln!(out, "{summary}");
        }
    }
}

/// Prints the result and maps it to the exit code: 0 positive, 1 negative,
/// 2 usage or input error.
pub fn finish(result: Result<Outcome, Failure>, format: Format) -> ExitCode {
    match result {
        Ok(o) => {
            emit(&o.report, &o.summary, format);
            ExitCode::from(if o.positive { 0 } else { 1 })
        }
        Err(Failure::Lib(e)) => match verdict_kind(&e) {
            Some(kind) => {
                let message = e.to_string();
                emit(&json!({"error": {"kind": kind, "message": message}}), &message, format);
                ExitCode::from(1)
            }
            None => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
