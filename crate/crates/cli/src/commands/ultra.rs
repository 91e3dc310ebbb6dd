use std::path::PathBuf;

use catmod::logic::{enumerate_sentences_with, parse_formula, Formula};
use catmod::structures::{FinStructure, Homomorphism};
use catmod::ultra::{
    diagonal_embedding, enumerate_filters, enumerate_ultrafilters_with, los_verify_product, principal_collapse,
    reduced_product, ultrapower_embedding, ReducedProduct, ABSENT,
};
use clap::Subcommand;
use serde_json::{json, Value};

use crate::bundle;
use crate::input::{structures, Context, FilterArgs};
use crate::output::{usage, Failure, Outcome};

#[derive(Subcommand)]
pub enum Cmd {
    /// Filters (or only ultrafilters) on {0, .., n-1}.
    Filters {
        n: usize,
        #[arg(long)]
        ultra: bool,
    },
    /// Reduced product of structures, one per index.
    Rprod {
        #[arg(required = true)]
        structures: Vec<PathBuf>,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Compare ultraproduct truth with almost-everywhere truth; exits 1 on
    /// a mismatch.
    Los {
        #[arg(required = true)]
        structures: Vec<PathBuf>,
        #[command(flatten)]
        filter: FilterArgs,
        /// Sentence to check; repeatable. Without it every sentence within
        /// the depth and size bounds is checked.
        #[arg(long = "sentence")]
        sentences: Vec<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 5)]
        size: usize,
    },
    /// Diagonal embedding of a structure into its ultrapower.
    Diag {
        structure: PathBuf,
        /// Size of the index set.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Embedding of the ultrapower of a bundle's category into structures;
    /// exits 1 unless it is injective on objects and faithful.
    Embed {
        bundle: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        filter: FilterArgs,
    },
}

/// Each element's representative family, by factor labels.
fn families(ms: &[FinStructure], rp: &ReducedProduct) -> Value {
    let sig = &rp.structure.sig;
    let per_sort: serde_json::Map<String, Value> = sig
        .sorts
        .iter()
        .enumerate()
        .map(|(s, sort)| {
            let fams: Vec<Value> = rp.families[s]
                .iter()
                .map(|fam| {
                    fam.iter()
                        .enumerate()
                        .map(|(x, &e)| {
                            if e == ABSENT {
                                Value::Null
                            } else {
                                json!(ms[x].names[s][e])
                            }
                        })
                        .collect()
                })
                .collect();
            (sort.clone(), Value::Array(fams))
        })
        .collect();
    Value::Object(per_sort)
}

pub fn run(cmd: Cmd, ctx: &Context) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Filters { n, ultra } => {
            let fs = if ultra {
                enumerate_ultrafilters_with(n, ctx.caps())?
            } else {
                enumerate_filters(n, ctx.caps())?
            };
            let raw: Vec<_> = fs.iter().map(|f| f.to_raw()).collect();
            let kind = if ultra { "ultrafilters" } else { "filters" };
            Outcome::new(
                json!({"count": raw.len(), "filters": raw}),
                format!("{} {kind}", raw.len()),
                true,
            )
        }
        Cmd::Rprod {
            structures: paths,
            filter,
        } => {
            let ms = structures(&paths)?;
            let f = filter.resolve(ms.len())?;
            let rp = reduced_product(&ms, &f)?;
            let summary = format!("reduced product with {} elements", rp.structure.total_size());
            let report = json!({"structure": rp.structure, "families": families(&ms, &rp)});
            Outcome::new(report, summary, true)
        }
        Cmd::Los {
            structures: paths,
            filter,
            sentences,
            depth,
            size,
        } => {
            let ms = structures(&paths)?;
            let u = filter.resolve(ms.len())?;
            if !u.ultra {
                return Err(usage("an ultrafilter is required"));
            }
            let sig = &ms[0].sig;
            let list: Vec<Formula> = if sentences.is_empty() {
                enumerate_sentences_with(sig, depth, size, false, ctx.caps())?
                    .iter()
                    .collect()
            } else {
                sentences
                    .iter()
                    .map(|s| parse_formula(s, sig))
                    .collect::<Result<_, _>>()?
            };
            let product = reduced_product(&ms, &u)?.structure;
            let mut violations = Vec::new();
            for phi in &list {
                violations.extend(los_verify_product(&ms, &u, &product, phi)?.violations);
            }
            let ok = violations.is_empty();
            let summary = format!("{} sentences checked, {} mismatches", list.len(), violations.len());
            Outcome::new(json!({"checked": list.len(), "violations": violations}), summary, ok)
        }
        Cmd::Diag { structure, n, filter } => {
            let m = crate::input::structure(&structure)?;
            let u = filter.resolve(n)?;
            let (rp, d) = diagonal_embedding(&m, &u)?;
            let mut report = json!({
                "ultrapower": rp.structure,
                "embedding": d.to_json(&m, &rp.structure),
            });
            if u.principal_point().is_some() {
                let back = principal_collapse(&rp, &u)?;
                report["collapse_inverts"] = json!(d.then(&back) == Homomorphism::identity(&m));
            }
            let summary = format!("ultrapower with {} elements", rp.structure.total_size());
            Outcome::new(report, summary, true)
        }
        Cmd::Embed { bundle: dir, n, filter } => {
            let mc = bundle::load(&dir)?;
            let u = filter.resolve(n)?;
            let e = ultrapower_embedding(&mc, &u)?;
            let injective = e.functor.is_injective_on_objects();
            let faithful = e.functor.is_faithful();
            let ok = injective && faithful;
            let summary = format!(
                "ultrapower with {} objects and {} morphisms; injective on objects: {}; faithful: {}",
                e.ultrapower.num_objects(),
                e.ultrapower.num_morphisms(),
                super::verdict(injective),
                super::verdict(faithful)
            );
            let report = json!({
                "objects": e.ultrapower.num_objects(),
                "morphisms": e.ultrapower.num_morphisms(),
                "injective_on_objects": injective,
                "faithful": faithful,
                "images": e.images,
                "underlying": e.underlying,
            });
            Outcome::new(report, summary, ok)
        }
    }
}
