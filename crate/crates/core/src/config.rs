//! Desk-scale guardrails shared by the exhaustive searches.

use serde::{Deserialize, Serialize};

/// Caps on the combinatorial searches. Every field has a default so a config
/// file may override any subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Largest carrier (per sort) considered by model enumeration.
    pub max_model_size: usize,
    /// Largest number of rounds accepted by the Ehrenfeucht–Fraïssé solver.
    pub max_ef_rounds: usize,
    /// Element cap for the term-algebra fixpoint.
    pub term_algebra_cap: usize,
    /// Quantifier-depth bound for sentence enumeration.
    pub max_sentence_depth: usize,
    /// Node-count bound for sentence enumeration.
    pub max_sentence_size: usize,
    /// Largest index set for filters and ultrafilters.
    pub max_index_set: usize,
    /// Largest morphism set accepted by `extends_to_isograph`.
    pub max_isograph_seed: usize,
    /// Shape bounds for `qlim_holds`.
    pub max_qlim_objects: usize,
    pub max_qlim_morphisms: usize,
    /// Largest number of iso-graphs enumerated for independence checks.
    pub max_isographs: usize,
    /// Largest category (in morphisms) accepted by the exhaustive homotopic
    /// searches.
    pub max_morphisms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_model_size: 6,
            max_ef_rounds: 5,
            term_algebra_cap: 10_000,
            max_sentence_depth: 4,
            max_sentence_size: 12,
            max_index_set: 6,
            max_isograph_seed: 8,
            max_qlim_objects: 3,
            max_qlim_morphisms: 6,
            max_isographs: 100,
            max_morphisms: 40,
        }
    }
}

/// Top-level configuration file contents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub caps: Caps,
    pub seed: u64,
}

impl Config {
    pub fn from_json(text: &str) -> crate::Result<Config> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_keeps_defaults() {
        let cfg = Config::from_json(r#"{"caps":{"max_model_size":4},"seed":7}"#).unwrap();
        assert_eq!(cfg.caps.max_model_size, 4);
        assert_eq!(cfg.caps.term_algebra_cap, 10_000);
        assert_eq!(cfg.seed, 7);
    }
}
