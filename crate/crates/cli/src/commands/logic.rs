use std::collections::BTreeMap;
use std::path::PathBuf;

use catmod::label::Label;
use catmod::logic::{enumerate_sentences_with, eval_formula, parse_formula_in, Env, Formula};
use catmod::structures::FinStructure;
use clap::Subcommand;
use serde_json::json;

use crate::input::{binding, signature, structure, Context};
use crate::output::{usage, Failure, Outcome};

#[derive(Subcommand)]
pub enum Cmd {
    /// Parse a formula and print it back with its measures.
    Parse {
        formula: String,
        /// Signature: lcat, lhomo, lhomo-iso, group, set or a JSON file.
        #[arg(long, default_value = "lcat")]
        sig: String,
        /// Free variables as NAME=SORT.
        #[arg(long = "free", value_parser = binding)]
        free: Vec<(String, String)>,
    },
    /// Evaluate a formula in a structure; exits 1 when it is false.
    Eval {
        structure: PathBuf,
        formula: String,
        /// Free variable assignment as NAME=LABEL or NAME:SORT=LABEL.
        #[arg(long = "bind", value_parser = binding)]
        bind: Vec<(String, String)>,
    },
    /// List the sentences within a depth and size bound, or a seeded sample.
    Sentences {
        #[arg(long, default_value = "lcat")]
        sig: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Equality-free sentences only.
        #[arg(long)]
        homotopic: bool,
        /// Draw this many sentences uniformly instead of listing.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Longest listing printed.
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
}

/// Splits `NAME:SORT=LABEL` bindings into declared sorts and an assignment.
fn assignment(m: &FinStructure, bind: &[(String, String)]) -> Result<(BTreeMap<String, String>, Env), Failure> {
    let mut free = BTreeMap::new();
    let mut env = Env::new();
    for (key, label) in bind {
        let (var, sort) = match key.split_once(':') {
            Some((v, s)) => (v.to_string(), s.to_string()),
            None if m.sig.sorts.len() == 1 => (key.clone(), m.sig.sorts[0].clone()),
            None => return Err(usage(format!("give the sort of `{key}` as {key}:SORT"))),
        };
        let s = m
            .sig
            .sort_id(&sort)
            .ok_or_else(|| usage(format!("unknown sort `{sort}`")))?;
        let e = m
            .element(s, &Label(label.clone()))
            .ok_or_else(|| usage(format!("`{label}` is not an element of sort `{sort}`")))?;
        free.insert(var.clone(), sort);
        env.insert(var, e);
    }
    Ok((free, env))
}

fn describe(phi: &Formula) -> serde_json::Value {
    json!({
        "formula": phi.to_string(),
        "depth": phi.depth(),
        "size": phi.size(),
        "sentence": phi.is_sentence(),
        "equality_free": phi.is_equality_free(),
        "free_vars": phi.free_vars(),
    })
}

pub fn run(cmd: Cmd, ctx: &Context) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Parse { formula, sig, free } => {
            let sig = signature(&sig)?;
            let free: BTreeMap<String, String> = free.into_iter().collect();
            let phi = parse_formula_in(&formula, &sig, &free)?;
            let summary = format!("parsed `{phi}` (depth {}, size {})", phi.depth(), phi.size());
            Outcome::new(describe(&phi), summary, true)
        }
        Cmd::Eval {
            structure: path,
            formula,
            bind,
        } => {
            let m = structure(&path)?;
            let (free, env) = assignment(&m, &bind)?;
            let phi = parse_formula_in(&formula, &m.sig, &free)?;
            let value = eval_formula(&m, &phi, &env)?;
            let summary = format!("`{phi}` is {value}");
            Outcome::new(json!({"formula": phi.to_string(), "value": value}), summary, value)
        }
        Cmd::Sentences {
            sig,
            depth,
            size,
            homotopic,
            sample,
            seed,
            limit,
        } => {
            let sig = signature(&sig)?;
            let space = enumerate_sentences_with(&sig, depth, size, homotopic, ctx.caps())?;
            let total = space.len();
            let (sentences, seed) = match sample {
                Some(k) => {
                    let seed = ctx.seed(seed);
                    (space.sample_seeded(k, seed), Some(seed))
                }
                None => (space.iter().take(limit).collect::<Vec<_>>(), None),
            };
            let listed: Vec<String> = sentences.iter().map(ToString::to_string).collect();
            let summary = format!(
                "{total} sentences of depth <= {depth} and size <= {size}; {} printed",
                listed.len()
            );
            let mut report = json!({
                "depth": depth,
                "size": size,
                "homotopic": homotopic,
                "count": total.to_string(),
                "sentences": listed,
            });
            if let Some(seed) = seed {
                report["seed"] = json!(seed);
            }
            Outcome::new(report, summary, true)
        }
    }
}
