pub mod ab;
pub mod cat;
pub mod homotopic;
pub mod logic;
pub mod modcat;
pub mod structs;
pub mod ultra;

use catmod::fincat::{Cone, FinCategory};
use serde_json::{json, Value};

pub fn morphism_names(c: &FinCategory, fs: &[usize]) -> Vec<String> {
    fs.iter().map(|&f| c.morphisms[f].name.clone()).collect()
}

pub fn cone_json(c: &FinCategory, cone: &Cone) -> Value {
    json!({"apex": c.objects[cone.apex], "legs": morphism_names(c, &cone.legs)})
}

pub fn verdict(positive: bool) -> &'static str {
    if positive {
        "yes"
    } else {
        "no"
    }
}
