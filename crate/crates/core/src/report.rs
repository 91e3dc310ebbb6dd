//! Report-style results: a list of violations, empty iff the input is valid.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Axiom number for category validation; `None` for format problems.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub axiom: Option<u8>,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, message: impl Into<String>) {
        self.violations.push(Violation {
            axiom: None,
            message: message.into(),
            witnesses: Vec::new(),
        });
    }

    pub fn push_axiom(&mut self, axiom: u8, message: impl Into<String>, witnesses: Vec<String>) {
        self.violations.push(Violation {
            axiom: Some(axiom),
            message: message.into(),
            witnesses,
        });
    }

    /// Axiom numbers cited by the report, sorted and deduplicated.
    pub fn axioms(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.violations.iter().filter_map(|v| v.axiom).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            match v.axiom {
                Some(n) => write!(f, "  [axiom {n}] {}", v.message)?,
                None => write!(f, "  {}", v.message)?,
            }
            if !v.witnesses.is_empty() {
                write!(f, " ({})", v.witnesses.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
