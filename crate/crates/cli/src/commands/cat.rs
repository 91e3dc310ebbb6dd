use std::collections::BTreeMap;

use catmod::fincat::{
    are_equivalent, find_generator_families, find_generators, is_skeletal, limit_of, skeleton_data, validate_category,
};
use clap::Subcommand;
use serde_json::json;

use super::{cone_json, morphism_names};
use crate::input::{category, object, raw_category, Context, DiagramArgs};
use crate::output::{Failure, Outcome};

#[derive(Subcommand)]
pub enum Cmd {
    /// Check the category axioms; exits 1 on a violation.
    Validate {
        /// Category file, bundle directory or fixture:<name>.
        category: String,
    },
    /// Search a limit of a diagram; exits 1 when there is none.
    Limit {
        category: String,
        #[command(flatten)]
        diagram: DiagramArgs,
    },
    /// Search a colimit of a diagram; exits 1 when there is none.
    Colimit {
        category: String,
        #[command(flatten)]
        diagram: DiagramArgs,
    },
    /// A skeleton with the functor onto it.
    Skeleton { category: String },
    /// Decide equivalence; exits 1 when the categories are not equivalent.
    Equiv { c: String, d: String },
    /// Single generators and minimal generating families.
    Generators { category: String },
    /// Sizes of the hom-sets.
    Homcount {
        category: String,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
    },
}

fn limit(spec: &str, diagram: &DiagramArgs, colimit: bool) -> Result<Outcome, Failure> {
    let c = category(spec)?;
    let d = diagram.resolve(&c)?;
    let what = if colimit { "colimit" } else { "limit" };
    match limit_of(&c, &d, colimit) {
        Some(cone) => {
            let summary = format!("{what} at {}", c.objects[cone.apex]);
            Outcome::new(json!({"exists": true, "cone": cone_json(&c, &cone)}), summary, true)
        }
        None => Outcome::new(json!({"exists": false}), format!("no {what}"), false),
    }
}

pub fn run(cmd: Cmd, _ctx: &Context) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Validate { category } => {
            let raw = raw_category(&category)?;
            let report = validate_category(&raw);
            let ok = report.is_valid();
            let summary = if ok {
                format!(
                    "valid category: {} objects, {} morphisms",
                    raw.objects.len(),
                    raw.morphisms.len()
                )
            } else {
                format!("axioms violated {:?}:\n{report}", report.axioms())
            };
            Outcome::new(report, summary.trim_end(), ok)
        }
        Cmd::Limit { category, diagram } => limit(&category, &diagram, false),
        Cmd::Colimit { category, diagram } => limit(&category, &diagram, true),
        Cmd::Skeleton { category: spec } => {
            let c = category(&spec)?;
            let sk = skeleton_data(&c);
            let representative: BTreeMap<&str, &str> = (0..c.num_objects())
                .map(|a| (c.objects[a].as_str(), c.objects[sk.representative[a]].as_str()))
                .collect();
            let summary = format!(
                "skeleton with {} of {} objects and {} of {} morphisms",
                sk.category.num_objects(),
                c.num_objects(),
                sk.category.num_morphisms(),
                c.num_morphisms()
            );
            let report = json!({
                "skeletal": is_skeletal(&c),
                "skeleton": sk.category.to_raw(),
                "representative": representative,
                "functor": sk.functor.to_raw(),
            });
            Outcome::new(report, summary, true)
        }
        Cmd::Equiv { c, d } => {
            let (c, d) = (category(&c)?, category(&d)?);
            let eq = are_equivalent(&c, &d);
            let ok = eq.is_some();
            let report = match eq {
                Some(e) => json!({
                    "equivalent": true,
                    "forward": e.forward.to_raw(),
                    "backward": e.backward.to_raw(),
                    "unit": morphism_names(&c, &e.unit),
                    "counit": morphism_names(&d, &e.counit),
                }),
                None => json!({"equivalent": false}),
            };
            Outcome::new(report, format!("equivalent: {}", super::verdict(ok)), ok)
        }
        Cmd::Generators { category: spec } => {
            let c = category(&spec)?;
            let gens: Vec<&str> = find_generators(&c).into_iter().map(|g| c.objects[g].as_str()).collect();
            let families: Vec<_> = find_generator_families(&c)
                .into_iter()
                .map(|f| {
                    let members: Vec<&str> = f.members.iter().map(|&g| c.objects[g].as_str()).collect();
                    json!({"members": members, "locally_unique": f.locally_unique})
                })
                .collect();
            let summary = format!(
                "{} generators, {} minimal generating families",
                gens.len(),
                families.len()
            );
            Outcome::new(json!({"generators": gens, "families": families}), summary, true)
        }
        Cmd::Homcount {
            category: spec,
            from,
            to,
        } => {
            let c = category(&spec)?;
            if let (Some(a), Some(b)) = (from, to) {
                let n = c.hom_count(object(&c, &a)?, object(&c, &b)?);
                return Outcome::new(
                    json!({"from": a, "to": b, "count": n}),
                    format!("|Hom({a}, {b})| = {n}"),
                    true,
                );
            }
            let mut counts: BTreeMap<&str, BTreeMap<&str, usize>> = BTreeMap::new();
            for a in 0..c.num_objects() {
                for b in 0..c.num_objects() {
                    counts
                        .entry(c.objects[a].as_str())
                        .or_default()
                        .insert(c.objects[b].as_str(), c.hom_count(a, b));
                }
            }
            let total = c.num_morphisms();
            Outcome::new(
                json!({"counts": counts, "total": total}),
                format!("{total} morphisms"),
                true,
            )
        }
    }
}
