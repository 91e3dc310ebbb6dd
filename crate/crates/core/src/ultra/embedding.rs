use super::filter::FilterOnX;
use super::product::{reduced_product, ultraproduct_hom, ReducedProduct};
use crate::fincat::{category_from_structure, FinCategory, Functor};
use crate::label::Label;
use crate::logic::Signature;
use crate::modcat::{structure_category, ModelCategory};
use crate::structures::{FinStructure, Homomorphism};
use crate::{Error, Result};

/// Largest number of morphism families in an ultrapower of a category.
const MAX_POWER_MORPHISMS: usize = 20_000;

/// The reduced power of a category, computed on its `L_cat` encoding.
/// Object and morphism indices of the result are element indices of the
/// returned product.
pub fn ultrapower_category(c: &FinCategory, u: &FilterOnX) -> Result<(FinCategory, ReducedProduct)> {
    let k = u.kernel().count_ones();
    let families = (c.num_morphisms() as f64).powi(k as i32);
    if families > MAX_POWER_MORPHISMS as f64 {
        return Err(Error::BoundsExceeded(format!(
            "{families} morphism families (at most {MAX_POWER_MORPHISMS})"
        )));
    }
    let s = c.to_structure();
    let rp = reduced_product(&vec![s; u.size()], u)?;
    let uc = category_from_structure(&rp.structure)?;
    Ok((uc, rp))
}

/// The embedding `i` of the ultrapower of a model category into the
/// category of structures, with the data needed to check it.
#[derive(Clone, Debug)]
pub struct UltrapowerEmbedding {
    pub ultrapower: FinCategory,
    pub power: ReducedProduct,
    /// `i(M)` for each object of the ultrapower.
    pub images: Vec<FinStructure>,
    /// The image structures with all homomorphisms between them.
    pub target: FinCategory,
    pub target_homs: Vec<Homomorphism>,
    pub functor: Functor,
    /// `|M|`, the ultraproduct of the underlying sets, per object.
    pub underlying: Vec<Vec<Label>>,
    /// `|f|` on those sets, per morphism.
    pub underlying_maps: Vec<Vec<usize>>,
}

fn underlying_set(m: &FinStructure) -> FinStructure {
    let mut s = FinStructure::blank(&Signature::new(&["s"]), &[m.size(0)]);
    s.names[0] = m.names[0].clone();
    s
}

fn prefixed(m: &mut FinStructure, prefix: &str) {
    for names in &mut m.names {
        for l in names.iter_mut() {
            *l = Label(format!("{prefix}:{l}"));
        }
    }
}

/// Builds `i`: an object given by a family `x ↦ M_x` goes to the
/// ultraproduct of the `M_x`, carried by the ultraproduct of the sets
/// `D(M_x)` (which stands in for `Hom(I, M)`, `I` the diagonal image of the
/// term algebra), and a morphism given by `x ↦ f_x` goes to the induced map.
pub fn ultrapower_embedding(bundle: &ModelCategory, u: &FilterOnX) -> Result<UltrapowerEmbedding> {
    if !u.ultra {
        return Err(Error::ImproperFilter("an ultrafilter is required".into()));
    }
    let (uc, power) = ultrapower_category(&bundle.category, u)?;
    let object_family = |o: usize| &power.families[0][o];
    let morphism_family = |f: usize| &power.families[1][f];

    let mut products = Vec::with_capacity(uc.num_objects());
    let mut sets = Vec::with_capacity(uc.num_objects());
    let mut images = Vec::with_capacity(uc.num_objects());
    let mut underlying = Vec::with_capacity(uc.num_objects());
    for o in 0..uc.num_objects() {
        let models: Vec<FinStructure> = object_family(o).iter().map(|&m| bundle.models[m].clone()).collect();
        let rp = reduced_product(&models, u)?;
        let bare: Vec<FinStructure> = models.iter().map(underlying_set).collect();
        let srp = reduced_product(&bare, u)?;
        let mut image = rp.structure.clone();
        prefixed(&mut image, &uc.objects[o]);
        let mut set = srp.structure.clone();
        prefixed(&mut set, &uc.objects[o]);
        underlying.push(set.names[0].clone());
        images.push(image);
        products.push(rp);
        sets.push(srp);
    }

    let underlying_maps = (0..uc.num_morphisms())
        .map(|f| {
            let hs: Vec<Homomorphism> = morphism_family(f)
                .iter()
                .map(|&m| Homomorphism {
                    maps: vec![bundle.homs[m].maps[0].clone()],
                })
                .collect();
            ultraproduct_hom(&sets[uc.dom(f)], &sets[uc.cod(f)], &hs).maps[0].clone()
        })
        .collect();

    let (target, target_homs) = structure_category(&uc.objects, &images, bundle.strong)?;
    let morphisms = (0..uc.num_morphisms())
        .map(|f| {
            let hs: Vec<Homomorphism> = morphism_family(f).iter().map(|&m| bundle.homs[m].clone()).collect();
            let h = ultraproduct_hom(&products[uc.dom(f)], &products[uc.cod(f)], &hs);
            target
                .hom(uc.dom(f), uc.cod(f))
                .iter()
                .copied()
                .find(|&g| target_homs[g] == h)
                .ok_or_else(|| Error::InvalidInput("induced map is not a homomorphism".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let functor = Functor::new(uc.clone(), target.clone(), (0..uc.num_objects()).collect(), morphisms)?;
    Ok(UltrapowerEmbedding {
        ultrapower: uc,
        power,
        images,
        target,
        target_homs,
        functor,
        underlying,
        underlying_maps,
    })
}
