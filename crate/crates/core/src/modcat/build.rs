use crate::config::Caps;
use crate::fincat::FinCategory;
use crate::structures::{enumerate_homomorphisms, enumerate_models_with, FinStructure, Homomorphism, Theory};
use crate::Result;

/// A finite truncation of `Mod(T)`: the models of size at most `max_size`
/// (one per isomorphism class) with all homomorphisms between them.
#[derive(Clone, Debug)]
pub struct ModelCategory {
    pub theory: Theory,
    pub max_size: usize,
    pub strong: bool,
    pub category: FinCategory,
    /// The model behind each object, by object index.
    pub models: Vec<FinStructure>,
    /// The homomorphism behind each morphism, by morphism index.
    pub homs: Vec<Homomorphism>,
}

impl ModelCategory {
    pub fn model(&self, object: usize) -> &FinStructure {
        &self.models[object]
    }

    pub fn hom(&self, morphism: usize) -> &Homomorphism {
        &self.homs[morphism]
    }

    /// The morphism index of a homomorphism between two objects.
    pub fn morphism_of(&self, dom: usize, cod: usize, h: &Homomorphism) -> Option<usize> {
        self.category
            .hom(dom, cod)
            .iter()
            .copied()
            .find(|&f| self.homs[f] == *h)
    }

    /// Reassembles a bundle from its parts, checking that each morphism is a
    /// homomorphism of the right kind.
    pub fn from_parts(
        theory: Theory,
        max_size: usize,
        strong: bool,
        category: FinCategory,
        models: Vec<FinStructure>,
        homs: Vec<Homomorphism>,
    ) -> Result<Self> {
        if models.len() != category.num_objects() || homs.len() != category.num_morphisms() {
            return Err(crate::Error::InvalidInput(
                "bundle sizes do not match its category".into(),
            ));
        }
        for (f, h) in homs.iter().enumerate() {
            let (a, b) = (&models[category.dom(f)], &models[category.cod(f)]);
            let ok = if strong {
                crate::structures::is_strong(a, b, h)
            } else {
                crate::structures::is_homomorphism(a, b, h)
            };
            if !ok {
                return Err(crate::Error::InvalidInput(format!(
                    "morphism `{}` is not a homomorphism",
                    category.morphisms[f].name
                )));
            }
        }
        Ok(ModelCategory {
            theory,
            max_size,
            strong,
            category,
            models,
            homs,
        })
    }
}

pub fn build_model_category(t: &Theory, max_size: usize, strong: bool) -> Result<ModelCategory> {
    build_model_category_with(t, max_size, strong, &Caps::default())
}

/// Objects are named `M0, M1, ...` in enumeration order; identities are
/// `1_Mi` and the other morphisms `Mi_Mj_k`.
pub fn build_model_category_with(t: &Theory, max_size: usize, strong: bool, caps: &Caps) -> Result<ModelCategory> {
    let models = enumerate_models_with(t, max_size, caps)?;
    let names: Vec<String> = (0..models.len()).map(|i| format!("M{i}")).collect();
    let (category, homs) = structure_category(&names, &models, strong)?;
    Ok(ModelCategory {
        theory: t.clone(),
        max_size,
        strong,
        category,
        models,
        homs,
    })
}

/// The category of the given structures and all (strong) homomorphisms
/// between them. Identities are named `1_A` and the other morphisms
/// `A_B_k`; the homomorphism behind each morphism is returned alongside.
pub fn structure_category(
    names: &[String],
    structures: &[FinStructure],
    strong: bool,
) -> Result<(FinCategory, Vec<Homomorphism>)> {
    let mut ms = Vec::new();
    for (a, ma) in structures.iter().enumerate() {
        for (b, mb) in structures.iter().enumerate() {
            let mut k = 0;
            for h in enumerate_homomorphisms(ma, mb, strong)? {
                let name = if a == b && h == Homomorphism::identity(ma) {
                    format!("1_{}", names[a])
                } else {
                    k += 1;
                    format!("{}_{}_{k}", names[a], names[b])
                };
                ms.push((name, a, b, h));
            }
        }
    }
    let homs = ms.iter().map(|m| m.3.clone()).collect();
    let category = FinCategory::concrete(names.to_vec(), ms, |g, f| f.then(g))?;
    Ok((category, homs))
}
