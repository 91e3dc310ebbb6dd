use std::collections::BTreeMap;
use std::path::PathBuf;

use catmod::abcheck::{
    check_ab, concrete_group_arrows, extract_groups, find_product, group_arrows_with, Associativity,
};
use catmod::Error;
use clap::Subcommand;
use serde_json::json;

use super::morphism_names;
use crate::input::{category, object, structure, Context};
use crate::output::{usage, Failure, Outcome};

#[derive(Subcommand)]
pub enum Cmd {
    /// Check the AB axioms per object; exits 1 when any fails.
    Check { category: String },
    /// The abelian groups Hom(I, G) induced by a generator I.
    Extract {
        category: String,
        #[arg(long)]
        generator: String,
    },
    /// Group arrows on an object of a category, or the additive monoid laws
    /// of a concrete group; exits 1 when there is none.
    Arrows {
        /// Category with --object.
        category: Option<String>,
        #[arg(long, requires = "category")]
        object: Option<String>,
        /// Require the triple products instead of checking associativity
        /// on generalized elements.
        #[arg(long)]
        strict: bool,
        /// Abelian group structure file instead of a category.
        #[arg(long, conflicts_with_all = ["category", "object"])]
        group: Option<PathBuf>,
    },
}

pub fn run(cmd: Cmd, _ctx: &Context) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Check { category: spec } => {
            let c = category(&spec)?;
            let r = check_ab(&c);
            let failed: Vec<&str> = r.ab1.iter().filter(|v| !v.passed).map(|v| v.object.as_str()).collect();
            let summary = format!(
                "Prod {}, Null {}, Gen {}, Ab1 {} (failing on {:?}), Ab2 {}",
                super::verdict(r.prod.passed),
                super::verdict(r.null.passed),
                super::verdict(r.gen.passed),
                super::verdict(r.ab1_passed()),
                failed,
                super::verdict(r.ab2.passed)
            );
            let ok = r.passed;
            Outcome::new(r, summary, ok)
        }
        Cmd::Extract {
            category: spec,
            generator,
        } => {
            let c = category(&spec)?;
            let i = object(&c, &generator)?;
            let ex = extract_groups(&c, i)?;
            let groups: BTreeMap<&str, _> = c.objects.iter().map(String::as_str).zip(&ex.groups).collect();
            let morphisms: BTreeMap<&str, _> = (0..c.num_morphisms())
                .map(|f| {
                    let (a, b) = (&ex.groups[c.dom(f)], &ex.groups[c.cod(f)]);
                    (c.morphisms[f].name.as_str(), ex.morphisms[f].to_json(a, b))
                })
                .collect();
            let sizes: Vec<String> = c
                .objects
                .iter()
                .zip(&ex.groups)
                .map(|(o, g)| format!("|{o}| = {}", g.size(0)))
                .collect();
            Outcome::new(
                json!({"generator": generator, "groups": groups, "morphisms": morphisms}),
                sizes.join(", "),
                true,
            )
        }
        Cmd::Arrows {
            category: spec,
            object: g,
            strict,
            group,
        } => {
            if let Some(path) = group {
                let g = structure(&path)?;
                let ops = concrete_group_arrows(&g)?;
                let summary = format!("{} additive monoid laws", ops.len());
                let ok = !ops.is_empty();
                return Outcome::new(json!({"count": ops.len(), "tables": ops}), summary, ok);
            }
            let (Some(spec), Some(g)) = (spec, g) else {
                return Err(usage("give a category with --object, or --group"));
            };
            let c = category(&spec)?;
            let g = object(&c, &g)?;
            let cone = find_product(&c, g, g)
                .ok_or_else(|| Error::NoProductCone(format!("{0} × {0} does not exist", c.objects[g])))?;
            let (arrows, mode) = group_arrows_with(&c, g, &cone, strict)?;
            let mode = match mode {
                Associativity::TripleProducts { .. } => "triple products",
                Associativity::GeneralizedElements => "generalized elements",
            };
            let names = morphism_names(&c, &arrows);
            let summary = format!(
                "{} group arrows on {} (associativity via {mode})",
                names.len(),
                c.objects[g]
            );
            let ok = !names.is_empty();
            let report = json!({
                "object": c.objects[g],
                "product": {
                    "apex": c.objects[cone.apex],
                    "p1": c.morphisms[cone.p1].name,
                    "p2": c.morphisms[cone.p2].name,
                },
                "associativity": mode,
                "group_arrows": names,
            });
            Outcome::new(report, summary, ok)
        }
    }
}
