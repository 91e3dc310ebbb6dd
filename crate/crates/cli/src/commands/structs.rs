use std::collections::BTreeMap;
use std::path::PathBuf;

use catmod::structures::{
    are_isomorphic, count_homomorphisms, ef_equivalent_with, enumerate_homomorphisms, enumerate_models_with,
    pullback_structure, term_algebra, validate_structure, RawStructure,
};
use clap::Subcommand;
use serde_json::json;

use crate::input::{homomorphism, read_json, signature, structure, theory, Context};
use crate::output::{Failure, Outcome};

#[derive(Subcommand)]
pub enum Cmd {
    /// Check a structure file; exits 1 when it violates a closure condition.
    Validate { structure: PathBuf },
    /// Homomorphisms between two structures.
    Homs {
        source: PathBuf,
        target: PathBuf,
        /// Strong homomorphisms only.
        #[arg(long)]
        strong: bool,
        /// Print only the number.
        #[arg(long)]
        count: bool,
    },
    /// Decide isomorphism; exits 1 when the structures differ.
    Iso { a: PathBuf, b: PathBuf },
    /// Decide k-round Ehrenfeucht–Fraïssé equivalence; exits 1 when Spoiler wins.
    Ef {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 2)]
        rounds: usize,
    },
    /// Models of a theory up to isomorphism.
    Models {
        /// Theory: abelian-groups, unary-predicate, exactly:<n> or a JSON file.
        #[arg(long)]
        theory: String,
        #[arg(long = "max-size")]
        max_size: usize,
    },
    /// The term algebra in one variable.
    Termalg {
        #[arg(long)]
        sig: String,
        /// Element cap; defaults to the configured one.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Pull the relations of a structure back along a map.
    Pullback {
        /// Map `domain → over` as {sort: {label: label}}, inline or a file.
        #[arg(long)]
        hom: String,
        /// Structure whose relations are pulled back.
        #[arg(long)]
        over: PathBuf,
        /// Relation-free structure the map starts from.
        #[arg(long)]
        domain: PathBuf,
    },
}

pub fn run(cmd: Cmd, ctx: &Context) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Validate { structure } => {
            let raw: RawStructure = read_json(&structure)?;
            let report = validate_structure(&raw);
            let summary = if report.is_valid() {
                "valid structure".to_string()
            } else {
                format!("{} violation(s):\n{report}", report.len())
            };
            let ok = report.is_valid();
            Outcome::new(report, summary.trim_end(), ok)
        }
        Cmd::Homs {
            source,
            target,
            strong,
            count,
        } => {
            let (a, b) = (structure(&source)?, structure(&target)?);
            if count {
                let n = count_homomorphisms(&a, &b, strong)?;
                return Outcome::new(json!({"count": n}), format!("{n} homomorphisms"), true);
            }
            let homs = enumerate_homomorphisms(&a, &b, strong)?;
            let maps: Vec<_> = homs.iter().map(|h| h.to_json(&a, &b)).collect();
            let summary = format!("{} homomorphisms", maps.len());
            Outcome::new(json!({"count": maps.len(), "homomorphisms": maps}), summary, true)
        }
        Cmd::Iso { a, b } => {
            let (a, b) = (structure(&a)?, structure(&b)?);
            let iso = are_isomorphic(&a, &b)?;
            let ok = iso.is_some();
            let report = json!({"isomorphic": ok, "map": iso.map(|h| h.to_json(&a, &b))});
            Outcome::new(report, format!("isomorphic: {}", super::verdict(ok)), ok)
        }
        Cmd::Ef { a, b, rounds } => {
            let (a, b) = (structure(&a)?, structure(&b)?);
            let ok = ef_equivalent_with(&a, &b, rounds, ctx.caps())?;
            let summary = format!("Duplicator wins {rounds} rounds: {}", super::verdict(ok));
            Outcome::new(json!({"rounds": rounds, "equivalent": ok}), summary, ok)
        }
        Cmd::Models { theory: spec, max_size } => {
            let t = theory(&spec)?;
            let models = enumerate_models_with(&t, max_size, ctx.caps())?;
            let summary = format!("{} models of size <= {max_size}", models.len());
            Outcome::new(json!({"count": models.len(), "models": models}), summary, true)
        }
        Cmd::Termalg { sig, cap } => {
            let sig = signature(&sig)?;
            let (t, terms) = term_algebra(&sig, cap.unwrap_or(ctx.caps().term_algebra_cap))?;
            let by_sort: BTreeMap<&str, Vec<String>> = sig
                .sorts
                .iter()
                .zip(&terms)
                .map(|(s, ts)| (s.as_str(), ts.iter().map(ToString::to_string).collect()))
                .collect();
            let summary = format!("term algebra with {} elements", t.total_size());
            Outcome::new(json!({"terms": by_sort, "structure": t}), summary, true)
        }
        Cmd::Pullback { hom, over, domain } => {
            let (m, n) = (structure(&over)?, structure(&domain)?);
            let f = homomorphism(&hom, &n, &m)?;
            let p = pullback_structure(&f, &m, &n)?;
            Outcome::new(json!({"structure": p}), "pullback structure", true)
        }
    }
}
