use super::category::FinCategory;
use super::functor::{find_isomorphism, Functor};

/// A skeleton of a category together with the data used to build it.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub category: FinCategory,
    /// `G: C → skeleton`, identity on representatives.
    pub functor: Functor,
    /// Representative (index in `C`) of each object's iso class.
    pub representative: Vec<usize>,
    /// Chosen isomorphism `σ_A: rep(A) → A` in `C` for each object.
    pub sigma: Vec<usize>,
    /// Inclusion of the skeleton into `C`.
    pub inclusion: Functor,
}

/// Iso classes with the least object name as representative, and the
/// least iso by name from representative to each member.
fn iso_classes(c: &FinCategory) -> (Vec<usize>, Vec<usize>) {
    let n = c.num_objects();
    let mut rep = vec![usize::MAX; n];
    for a in 0..n {
        if rep[a] != usize::MAX {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&b| c.isomorphic(a, b)).collect();
        let r = *class.iter().min_by(|&&x, &&y| c.objects[x].cmp(&c.objects[y])).unwrap();
        for b in class {
            rep[b] = r;
        }
    }
    let sigma = (0..n)
        .map(|a| {
            if rep[a] == a {
                c.id(a)
            } else {
                c.isos(rep[a], a)
                    .into_iter()
                    .min_by(|&x, &y| c.morphisms[x].name.cmp(&c.morphisms[y].name))
                    .unwrap()
            }
        })
        .collect();
    (rep, sigma)
}

pub fn skeleton_data(c: &FinCategory) -> Skeleton {
    let (rep, sigma) = iso_classes(c);
    let reps: Vec<usize> = (0..c.num_objects()).filter(|&a| rep[a] == a).collect();
    let (sk, kept) = c.full_subcategory(&reps);
    let obj_pos = |a: usize| reps.iter().position(|&r| r == a).unwrap();
    let mor_pos = |f: usize| kept.iter().position(|&k| k == f).unwrap();
    let objects: Vec<usize> = (0..c.num_objects()).map(|a| obj_pos(rep[a])).collect();
    let morphisms: Vec<usize> = (0..c.num_morphisms())
        .map(|f| {
            let (a, b) = (c.dom(f), c.cod(f));
            let sb_inv = c.inverse(sigma[b]).unwrap();
            mor_pos(c.compose(sb_inv, c.compose(f, sigma[a])))
        })
        .collect();
    let functor = Functor {
        source: c.clone(),
        target: sk.clone(),
        objects,
        morphisms,
    };
    let inclusion = Functor {
        source: sk.clone(),
        target: c.clone(),
        objects: reps.clone(),
        morphisms: kept.clone(),
    };
    Skeleton {
        category: sk,
        functor,
        representative: rep,
        sigma,
        inclusion,
    }
}

/// The skeleton of `c` and the functor onto it.
pub fn skeleton(c: &FinCategory) -> (FinCategory, Functor) {
    let s = skeleton_data(c);
    (s.category, s.functor)
}

pub fn is_skeletal(c: &FinCategory) -> bool {
    (0..c.num_objects()).all(|a| (0..c.num_objects()).all(|b| a == b || !c.isomorphic(a, b)))
}

/// An equivalence `F: C ⇄ D: H` with natural isomorphisms
/// `unit_A: A → H F A` and `counit_B: F H B → B`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub forward: Functor,
    pub backward: Functor,
    pub unit: Vec<usize>,
    pub counit: Vec<usize>,
}

/// Decides equivalence by comparing skeletons up to isomorphism.
pub fn are_equivalent(c: &FinCategory, d: &FinCategory) -> Option<Equivalence> {
    let sc = skeleton_data(c);
    let sd = skeleton_data(d);
    if sc.category.num_objects() != sd.category.num_objects()
        || sc.category.num_morphisms() != sd.category.num_morphisms()
    {
        return None;
    }
    let k = find_isomorphism(&sc.category, &sd.category)?;
    let k_inv = Functor {
        source: sd.category.clone(),
        target: sc.category.clone(),
        objects: invert(&k.objects),
        morphisms: invert(&k.morphisms),
    };
    let forward = sc.functor.then(&k).then(&sd.inclusion);
    let backward = sd.functor.then(&k_inv).then(&sc.inclusion);
    let unit = (0..c.num_objects()).map(|a| c.inverse(sc.sigma[a]).unwrap()).collect();
    let counit = sd.sigma.clone();
    Some(Equivalence {
        forward,
        backward,
        unit,
        counit,
    })
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut out = vec![0; map.len()];
    for (i, &j) in map.iter().enumerate() {
        out[j] = i;
    }
    out
}

/// Checks that `eta_A: F A → G A` is natural and componentwise invertible.
pub fn is_natural_iso(f: &Functor, g: &Functor, eta: &[usize]) -> bool {
    let (c, d) = (&f.source, &f.target);
    (0..c.num_objects()).all(|a| {
        let e = eta[a];
        d.dom(e) == f.obj(a) && d.cod(e) == g.obj(a) && d.is_iso(e)
    }) && (0..c.num_morphisms()).all(|u| {
        let (a, b) = (c.dom(u), c.cod(u));
        d.comp(eta[b], f.mor(u)) == d.comp(g.mor(u), eta[a])
    })
}
