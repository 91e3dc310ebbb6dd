use super::category::FinCategory;
use super::functor::{Diagram, Functor};

/// A cone (or cocone) over a diagram: an apex and one leg per shape object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub apex: usize,
    pub legs: Vec<usize>,
}

/// All cones with apex `x` over `d`, in lexicographic order of legs.
pub fn cones_at(d: &Diagram, x: usize) -> Vec<Cone> {
    let j = &d.functor;
    let c = d.target();
    let shape = &d.shape;
    let n = shape.num_objects();
    let mut out = Vec::new();
    let mut legs = Vec::with_capacity(n);
    // Shape morphisms checked once both endpoints have legs.
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..shape.num_morphisms() {
        let k = shape.dom(u).max(shape.cod(u));
        checks[k].push(u);
    }
    fn go(
        d: &Diagram,
        c: &FinCategory,
        j: &Functor,
        x: usize,
        checks: &[Vec<usize>],
        legs: &mut Vec<usize>,
        out: &mut Vec<Cone>,
    ) {
        let i = legs.len();
        if i == d.shape.num_objects() {
            out.push(Cone {
                apex: x,
                legs: legs.clone(),
            });
            return;
        }
        for &l in c.hom(x, j.obj(i)) {
            legs.push(l);
            let ok = checks[i].iter().all(|&u| {
                let (a, b) = (d.shape.dom(u), d.shape.cod(u));
                c.comp(j.mor(u), legs[a]) == Some(legs[b])
            });
            if ok {
                go(d, c, j, x, checks, legs, out);
            }
            legs.pop();
        }
    }
    go(d, c, j, x, &checks, &mut legs, &mut out);
    out
}

/// Whether `cone` is universal: every cone factors through it uniquely.
pub fn is_limit_cone(d: &Diagram, cone: &Cone) -> bool {
    let c = d.target();
    (0..c.num_objects()).all(|x| {
        let targets = cones_at(d, x);
        let hom = c.hom(x, cone.apex);
        if hom.len() != targets.len() {
            return false;
        }
        let mut images: Vec<Vec<usize>> = hom
            .iter()
            .map(|&u| cone.legs.iter().map(|&l| c.compose(l, u)).collect())
            .collect();
        images.sort_unstable();
        images.dedup();
        images.len() == hom.len()
    })
}

/// The first limit cone over `d` (objects in order, legs lexicographic),
/// or the first colimit cocone when `colimit` is set.
pub fn limit_of(c: &FinCategory, d: &Diagram, colimit: bool) -> Option<Cone> {
    debug_assert!(d.target() == c);
    if colimit {
        return limit_of(&c.opposite(), &d.opposite(), false);
    }
    // Hom(x, L) must biject with cones at x; cone counts at every x are
    // shared across candidates.
    let counts: Vec<usize> = (0..c.num_objects()).map(|x| cones_at(d, x).len()).collect();
    for l in 0..c.num_objects() {
        if (0..c.num_objects()).any(|x| c.hom(x, l).len() != counts[x]) {
            continue;
        }
        for cone in cones_at(d, l) {
            if is_limit_cone(d, &cone) {
                return Some(cone);
            }
        }
    }
    None
}

/// Every limit cone over `d`.
pub fn all_limits(d: &Diagram, colimit: bool) -> Vec<Cone> {
    let d = if colimit { d.opposite() } else { d.clone() };
    let c = d.target();
    (0..c.num_objects())
        .flat_map(|l| cones_at(&d, l))
        .filter(|cone| is_limit_cone(&d, cone))
        .collect()
}

/// Discrete shape with `n` objects.
pub fn discrete_shape(n: usize) -> FinCategory {
    let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let ms = (0..n)
        .map(|i| super::Morphism {
            name: format!("1_{i}"),
            dom: i,
            cod: i,
        })
        .collect();
    FinCategory::from_parts(objects, ms, (0..n).collect(), |g, f| (g == f).then_some(g))
}

/// Two objects with two parallel arrows `u, v: 0 → 1`.
pub fn parallel_shape() -> FinCategory {
    use super::Morphism;
    let m = |name: &str, dom, cod| Morphism {
        name: name.into(),
        dom,
        cod,
    };
    let ms = vec![m("1_0", 0, 0), m("1_1", 1, 1), m("u", 0, 1), m("v", 0, 1)];
    FinCategory::from_parts(vec!["0".into(), "1".into()], ms, vec![0, 1], |g, f| match (g, f) {
        (0, 0) => Some(0),
        (1, 1) => Some(1),
        (1, x) => Some(x),
        (x, 0) => Some(x),
        _ => None,
    })
}

/// Binary product diagram on objects `a`, `b`.
pub fn pair_diagram(c: &FinCategory, a: usize, b: usize) -> Diagram {
    let shape = discrete_shape(2);
    Diagram::new(Functor {
        source: shape,
        target: c.clone(),
        objects: vec![a, b],
        morphisms: vec![c.id(a), c.id(b)],
    })
}

/// Equalizer diagram on parallel morphisms `f, g`.
pub fn parallel_diagram(c: &FinCategory, f: usize, g: usize) -> Diagram {
    Diagram::new(Functor {
        source: parallel_shape(),
        target: c.clone(),
        objects: vec![c.dom(f), c.cod(f)],
        morphisms: vec![c.id(c.dom(f)), c.id(c.cod(f)), f, g],
    })
}

/// The empty diagram; its limit is a terminal object.
pub fn empty_diagram(c: &FinCategory) -> Diagram {
    Diagram::new(Functor {
        source: discrete_shape(0),
        target: c.clone(),
        objects: vec![],
        morphisms: vec![],
    })
}
