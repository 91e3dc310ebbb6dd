use std::path::PathBuf;

use catmod::modcat::{
    build_model_category_with, check_coequalizer_property, check_coproduct_property, coequalizer, coproduct_unary,
    theta_family_with,
};
use catmod::structures::{are_isomorphic, is_strong, FinStructure};
use clap::Subcommand;
use serde_json::json;

use crate::bundle;
use crate::input::{morphism, signature, structures, theory, Context};
use crate::output::{usage, Failure, Outcome};

#[derive(Subcommand)]
pub enum Cmd {
    /// Build a model category bundle directory.
    Build {
        /// Theory: abelian-groups, unary-predicate, exactly:<n> or a JSON file.
        #[arg(long)]
        theory: String,
        #[arg(long = "max-size")]
        max_size: usize,
        /// Strong homomorphisms only.
        #[arg(long)]
        strong: bool,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Coequalizer of two parallel morphisms of a bundle, checked against
    /// every model of the bundle; exits 1 when the check fails.
    Coeq { bundle: PathBuf, f: String, g: String },
    /// Coproduct of structures over a constant-free unary signature,
    /// checked against the summands and the coproduct itself.
    Coprod {
        #[arg(required = true)]
        structures: Vec<PathBuf>,
        /// Additional targets for the universal property.
        #[arg(long = "target")]
        targets: Vec<PathBuf>,
    },
    /// The Θ-family of a signature.
    Theta {
        #[arg(long)]
        sig: String,
    },
}

fn isomorphic_object(models: &[FinStructure], names: &[String], m: &FinStructure) -> Result<Option<String>, Failure> {
    for (name, model) in names.iter().zip(models) {
        if are_isomorphic(model, m)?.is_some() {
            return Ok(Some(name.clone()));
        }
    }
    Ok(None)
}

pub fn run(cmd: Cmd, ctx: &Context) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Build {
            theory: spec,
            max_size,
            strong,
            out,
        } => {
            let t = theory(&spec)?;
            let mc = build_model_category_with(&t, max_size, strong, ctx.caps())?;
            let meta = bundle::write(&out, &mc, ctx.caps())?;
            let c = &mc.category;
            let summary = format!(
                "{} objects, {} morphisms written to {}",
                c.num_objects(),
                c.num_morphisms(),
                out.display()
            );
            let report = json!({
                "out": out.display().to_string(),
                "objects": c.num_objects(),
                "morphisms": c.num_morphisms(),
                "theory_hash": meta.theory_hash,
            });
            Outcome::new(report, summary, true)
        }
        Cmd::Coeq { bundle: dir, f, g } => {
            let mc = bundle::load(&dir)?;
            let c = &mc.category;
            let (f, g) = (morphism(c, &f)?, morphism(c, &g)?);
            if c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g) {
                return Err(usage("the two morphisms are not parallel"));
            }
            let (a, b) = (mc.model(c.dom(f)), mc.model(c.cod(f)));
            let (q, p) = coequalizer(a, b, mc.hom(f), mc.hom(g))?;
            let universal = check_coequalizer_property(b, mc.hom(f), mc.hom(g), &q, &p, &mc.models)?;
            let strong = is_strong(b, &q, &p);
            let object = isomorphic_object(&mc.models, &c.objects, &q)?;
            let summary = format!(
                "quotient of size {}; universal property against the bundle: {}; projection strong: {}",
                q.total_size(),
                super::verdict(universal),
                super::verdict(strong)
            );
            let report = json!({
                "quotient": q,
                "projection": p.to_json(b, &q),
                "universal": universal,
                "strong": strong,
                "object": object,
            });
            Outcome::new(report, summary, universal)
        }
        Cmd::Coprod {
            structures: paths,
            targets,
        } => {
            let ms = structures(&paths)?;
            let sig = ms[0].sig.clone();
            let (u, injections) = coproduct_unary(&sig, &ms)?;
            let mut against = ms.clone();
            against.push(u.clone());
            against.extend(structures(&targets)?);
            let universal = check_coproduct_property(&ms, &u, &injections, &against)?;
            let inj: Vec<_> = injections.iter().zip(&ms).map(|(i, m)| i.to_json(m, &u)).collect();
            let summary = format!(
                "coproduct of size {}; universal property: {}",
                u.total_size(),
                super::verdict(universal)
            );
            Outcome::new(
                json!({"coproduct": u, "injections": inj, "universal": universal}),
                summary,
                universal,
            )
        }
        Cmd::Theta { sig } => {
            let sig = signature(&sig)?;
            let family = theta_family_with(&sig, ctx.caps())?;
            let summary = format!("{} members", family.len());
            Outcome::new(json!({"count": family.len(), "members": family}), summary, true)
        }
    }
}
