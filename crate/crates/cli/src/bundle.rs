//! The on-disk model category bundle: `category.json`, `models/M*.json`
//! and `meta.json`.

use std::fs;
use std::path::Path;

use catmod::config::Caps;
use catmod::fincat::FinCategory;
use catmod::modcat::{structure_category, ModelCategory};
use catmod::structures::{RawTheory, Theory};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::input::{read_json, structure, write_json};
use crate::output::{usage, Failure};

pub const CATEGORY_FILE: &str = "category.json";
pub const META_FILE: &str = "meta.json";
pub const MODELS_DIR: &str = "models";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Meta {
    pub theory: RawTheory,
    /// SHA-256 of the compact JSON of `theory`.
    pub theory_hash: String,
    pub max_size: usize,
    pub strong: bool,
    pub caps: Caps,
    /// Model files relative to the bundle, by object index.
    pub models: Vec<String>,
}

pub fn theory_hash(raw: &RawTheory) -> String {
    let bytes = serde_json::to_vec(raw).expect("theories serialize");
    hex::encode(Sha256::digest(&bytes))
}

fn io(path: &Path, e: std::io::Error) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

pub fn write(dir: &Path, mc: &ModelCategory, caps: &Caps) -> Result<Meta, Failure> {
    let models_dir = dir.join(MODELS_DIR);
    fs::create_dir_all(&models_dir).map_err(|e| io(&models_dir, e))?;
    write_json(&dir.join(CATEGORY_FILE), &mc.category.to_raw())?;
    let mut files = Vec::with_capacity(mc.models.len());
    for (o, m) in mc.models.iter().enumerate() {
        let file = format!("{MODELS_DIR}/{}.json", mc.category.objects[o]);
        write_json(&dir.join(&file), m)?;
        files.push(file);
    }
    let theory = mc.theory.to_raw();
    let meta = Meta {
        theory_hash: theory_hash(&theory),
        theory,
        max_size: mc.max_size,
        strong: mc.strong,
        caps: caps.clone(),
        models: files,
    };
    write_json(&dir.join(META_FILE), &meta)?;
    Ok(meta)
}

/// Reads a bundle and rebuilds the homomorphisms behind its morphisms,
/// checking the result against `category.json` and the theory hash.
pub fn load(dir: &Path) -> Result<ModelCategory, Failure> {
    let meta: Meta = read_json(&dir.join(META_FILE))?;
    if theory_hash(&meta.theory) != meta.theory_hash {
        return Err(usage(format!("{}: theory hash mismatch", dir.display())));
    }
    let theory = Theory::from_raw(&meta.theory)?;
    let category = FinCategory::from_raw(&read_json(&dir.join(CATEGORY_FILE))?)?;
    let models = meta
        .models
        .iter()
        .map(|f| structure(&dir.join(f)))
        .collect::<Result<Vec<_>, _>>()?;
    if models.len() != category.num_objects() {
        return Err(usage(format!(
            "{}: model count does not match the category",
            dir.display()
        )));
    }
    let (rebuilt, homs) = structure_category(&category.objects, &models, meta.strong)?;
    if rebuilt != category {
        return Err(usage(format!(
            "{}: category.json does not match the homomorphisms between the models",
            dir.display()
        )));
    }
    Ok(ModelCategory::from_parts(
        theory,
        meta.max_size,
        meta.strong,
        category,
        models,
        homs,
    )?)
}
