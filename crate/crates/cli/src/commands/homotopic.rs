use std::collections::BTreeMap;
use std::path::PathBuf;

use catmod::fincat::{limit_of, FinCategory};
use catmod::homotopic::{
    agreement_test, build_isograph, count_isographs, eval_homotopic, extend_to_isograph, l_homo_iso, qlim_holds,
    translate_lcat, HomotopicModel, IsoGraph, RawIsoGraph,
};
use catmod::logic::{parse_formula, parse_formula_in, Signature};
use clap::Subcommand;
use serde_json::json;

use crate::input::{binding, category, morphism, read_json, Context, DiagramArgs};
use crate::output::{Failure, Outcome};

#[derive(Subcommand)]
pub enum Cmd {
    /// Evaluate an equality-free formula over QC (and Iso); exits 1 when false.
    Eval {
        category: String,
        formula: String,
        /// Iso-graph file `{"arrows": [[source, target, morphism], ...]}`.
        #[arg(long)]
        isograph: Option<PathBuf>,
        /// Free variables as NAME=MORPHISM.
        #[arg(long = "bind", value_parser = binding)]
        bind: Vec<(String, String)>,
    },
    /// Decide the quasi-limit formula for a diagram; exits 1 when it fails.
    Qlim {
        category: String,
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        isograph: Option<PathBuf>,
    },
    /// Compare two categories on homotopic sentences; exits 1 on a
    /// disagreement.
    Agree {
        c: String,
        d: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 7)]
        size: usize,
        /// Largest space covered exhaustively; larger spaces are sampled
        /// with this many draws.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Translate an L_cat formula into the homotopic language.
    Translate { formula: String },
    /// The default iso-graph, or the extension of a set of isomorphisms;
    /// exits 1 when the extension does not exist.
    Isograph {
        category: String,
        /// Morphisms the iso-graph must contain.
        #[arg(long = "extend", num_args = 1..)]
        extend: Vec<String>,
    },
}

fn isograph(c: &FinCategory, file: Option<&PathBuf>) -> Result<IsoGraph, Failure> {
    match file {
        Some(path) => {
            let raw: RawIsoGraph = read_json(path)?;
            Ok(IsoGraph::from_raw(c, &raw)?)
        }
        None => Ok(build_isograph(c)),
    }
}

pub fn run(cmd: Cmd, ctx: &Context) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Eval {
            category: spec,
            formula,
            isograph: file,
            bind,
        } => {
            let c = category(&spec)?;
            let i = isograph(&c, file.as_ref())?;
            let sig = l_homo_iso();
            let free: BTreeMap<String, String> = bind.iter().map(|(v, _)| (v.clone(), "m".to_string())).collect();
            let phi = parse_formula_in(&formula, &sig, &free)?;
            let pairs: Vec<(&str, &str)> = bind.iter().map(|(v, m)| (v.as_str(), m.as_str())).collect();
            let env = HomotopicModel::new(&i).env(&pairs)?;
            let value = eval_homotopic(&i, &phi, &env)?;
            Outcome::new(
                json!({"formula": phi.to_string(), "value": value}),
                format!("`{phi}` is {value}"),
                value,
            )
        }
        Cmd::Qlim {
            category: spec,
            diagram,
            isograph: file,
        } => {
            let c = category(&spec)?;
            let i = isograph(&c, file.as_ref())?;
            let d = diagram.resolve(&c)?;
            let holds = qlim_holds(&i, &d, ctx.caps())?;
            let limit = limit_of(&c, &d, false).is_some();
            let summary = format!(
                "qlim: {}; limit exists: {}",
                super::verdict(holds),
                super::verdict(limit)
            );
            Outcome::new(json!({"qlim": holds, "limit_exists": limit}), summary, holds)
        }
        Cmd::Agree {
            c,
            d,
            depth,
            size,
            budget,
            seed,
        } => {
            let (c, d) = (category(&c)?, category(&d)?);
            let report = agreement_test(&c, &d, depth, size, budget, ctx.seed(seed))?;
            let ok = report.agree();
            let mode = if report.exhaustive {
                format!("all {} sentences", report.space)
            } else {
                format!("{} of {} sentences sampled", report.sampled, report.space)
            };
            let summary = format!("{mode}; {} disagreements", report.certificates.len());
            Outcome::new(report, summary, ok)
        }
        Cmd::Translate { formula } => {
            let phi = parse_formula(&formula, &Signature::l_cat())?;
            let out = translate_lcat(&phi)?;
            Outcome::new(
                json!({"input": phi.to_string(), "output": out.to_string()}),
                out.to_string(),
                true,
            )
        }
        Cmd::Isograph { category: spec, extend } => {
            let c = category(&spec)?;
            let count = count_isographs(&c).to_string();
            if extend.is_empty() {
                let i = build_isograph(&c);
                let summary = format!("{} non-identity arrows; {count} iso-graphs in total", i.arrows().len());
                return Outcome::new(json!({"count": count, "isograph": i.to_raw()}), summary, true);
            }
            let seeds = extend.iter().map(|f| morphism(&c, f)).collect::<Result<Vec<_>, _>>()?;
            let found = extend_to_isograph(&c, &seeds, ctx.caps())?;
            let ok = found.is_some();
            let summary = format!("extends to an iso-graph: {}", super::verdict(ok));
            Outcome::new(
                json!({"count": count, "extends": ok, "isograph": found.map(|i| i.to_raw())}),
                summary,
                ok,
            )
        }
    }
}
