use super::arrows::{find_null_object, zero_map};
use super::check::unique_group_arrow;
use crate::fincat::{is_generator, is_limit_cone, pair_diagram, Cone, FinCategory};
use crate::label::Label;
use crate::logic::{eval_sentence, Signature};
use crate::structures::{is_homomorphism, FinStructure, Homomorphism, Theory};
use crate::{Error, Result};

/// The groups `|G| = Hom(I, G)` and the homomorphisms `f ∘ −` between them.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub generator: usize,
    /// One group per object; elements are named after the morphisms `I → G`.
    pub groups: Vec<FinStructure>,
    /// One homomorphism `|dom f| → |cod f|` per morphism `f`.
    pub morphisms: Vec<Homomorphism>,
}

fn failure(axiom: &str, detail: impl Into<String>) -> Error {
    Error::AxiomFailure {
        axiom: axiom.into(),
        detail: detail.into(),
    }
}

/// Turns each object into the abelian group `Hom(I, G)` with
/// `α + β = μ_G ∘ (α, β)`.
///
/// When `G × G` is missing but `G` is itself a product `H1 × H2` of objects
/// carrying a group arrow, the sum is taken componentwise through that
/// product.
pub fn extract_groups(c: &FinCategory, generator: usize) -> Result<Extraction> {
    let i = generator;
    if !is_generator(c, i) {
        return Err(failure("Gen", format!("{} is not a generator", c.objects[i])));
    }
    let null = find_null_object(c).ok_or_else(|| failure("Null", "no null object"))?;
    let n = c.num_objects();
    let elems: Vec<&[usize]> = (0..n).map(|g| c.hom(i, g)).collect();
    let index = |g: usize, f: usize| elems[g].iter().position(|&x| x == f).expect("element of Hom(I, G)");

    // sums[g][a][b] as indices into elems[g]
    let mut sums: Vec<Option<Vec<Vec<usize>>>> = vec![None; n];
    for g in 0..n {
        if let Some((cone, mu)) = unique_group_arrow(c, g) {
            let table = elems[g]
                .iter()
                .map(|&a| {
                    elems[g]
                        .iter()
                        .map(|&b| index(g, c.compose(mu, cone.pairing(c, a, b).expect("product pairing"))))
                        .collect()
                })
                .collect();
            sums[g] = Some(table);
        }
    }
    for g in 0..n {
        if sums[g].is_some() {
            continue;
        }
        let table = componentwise_sum(c, g, &elems, &sums).ok_or_else(|| {
            failure(
                "Ab1",
                format!(
                    "{} has no unique group arrow and is no product of such objects",
                    c.objects[g]
                ),
            )
        })?;
        sums[g] = Some(table);
    }

    let theory = Theory::abelian_groups();
    let mut groups = Vec::with_capacity(n);
    for g in 0..n {
        let table = sums[g].as_ref().unwrap();
        let size = elems[g].len();
        let mut m = FinStructure::blank(&Signature::group(), &[size]);
        m.names[0] = elems[g]
            .iter()
            .map(|&f| Label::from(c.morphisms[f].name.as_str()))
            .collect();
        let zero = index(g, zero_map(c, null, i, g));
        m.consts.insert("0".into(), zero);
        for a in 0..size {
            for b in 0..size {
                m.funcs.get_mut("+").unwrap().set(&[a, b], Some(table[a][b]));
            }
            let neg = (0..size)
                .find(|&b| table[a][b] == zero)
                .ok_or_else(|| failure("Ab1", format!("an element of |{}| has no inverse", c.objects[g])))?;
            m.funcs.get_mut("-").unwrap().set(&[a], Some(neg));
        }
        for axiom in &theory.sentences {
            if !eval_sentence(&m, axiom)? {
                return Err(failure("Ab1", format!("|{}| fails `{axiom}`", c.objects[g])));
            }
        }
        groups.push(m);
    }

    let mut morphisms = Vec::with_capacity(c.num_morphisms());
    for f in 0..c.num_morphisms() {
        let (g, h) = (c.dom(f), c.cod(f));
        let map = elems[g].iter().map(|&a| index(h, c.compose(f, a))).collect();
        let hom = Homomorphism { maps: vec![map] };
        if !is_homomorphism(&groups[g], &groups[h], &hom) {
            return Err(failure(
                "Ab2",
                format!("{} does not induce a homomorphism", c.morphisms[f].name),
            ));
        }
        morphisms.push(hom);
    }
    for f in 0..c.num_morphisms() {
        for f2 in 0..f {
            let parallel = c.dom(f) == c.dom(f2) && c.cod(f) == c.cod(f2);
            if parallel && morphisms[f] == morphisms[f2] {
                return Err(failure("Gen", "the extraction is not faithful"));
            }
        }
    }
    Ok(Extraction {
        generator,
        groups,
        morphisms,
    })
}

fn componentwise_sum(
    c: &FinCategory,
    g: usize,
    elems: &[&[usize]],
    sums: &[Option<Vec<Vec<usize>>>],
) -> Option<Vec<Vec<usize>>> {
    let n = c.num_objects();
    for h1 in (0..n).filter(|&h| sums[h].is_some()) {
        for h2 in (0..n).filter(|&h| sums[h].is_some()) {
            for &p1 in c.hom(g, h1) {
                for &p2 in c.hom(g, h2) {
                    let cone = Cone {
                        apex: g,
                        legs: vec![p1, p2],
                    };
                    if !is_limit_cone(&pair_diagram(c, h1, h2), &cone) {
                        continue;
                    }
                    let pos = |h: usize, f: usize| elems[h].iter().position(|&x| x == f).unwrap();
                    let add = |h: usize, a: usize, b: usize| elems[h][sums[h].as_ref().unwrap()[pos(h, a)][pos(h, b)]];
                    let table = elems[g]
                        .iter()
                        .map(|&a| {
                            elems[g]
                                .iter()
                                .map(|&b| {
                                    let x = add(h1, c.compose(p1, a), c.compose(p1, b));
                                    let y = add(h2, c.compose(p2, a), c.compose(p2, b));
                                    let s = elems[g]
                                        .iter()
                                        .position(|&u| c.compose(p1, u) == x && c.compose(p2, u) == y)
                                        .expect("product pairing");
                                    s
                                })
                                .collect()
                        })
                        .collect();
                    return Some(table);
                }
            }
        }
    }
    None
}
