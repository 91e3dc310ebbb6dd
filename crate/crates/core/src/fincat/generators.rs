use super::category::FinCategory;

/// Distinct parallel pairs `f ≠ g: A → B`.
fn parallel_pairs(c: &FinCategory) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..c.num_objects() {
        for b in 0..c.num_objects() {
            let hom = c.hom(a, b);
            for (i, &f) in hom.iter().enumerate() {
                for &g in &hom[i + 1..] {
                    out.push((f, g));
                }
            }
        }
    }
    out
}

/// Whether some `a: I → dom f` has `f ∘ a ≠ g ∘ a`.
pub fn separates(c: &FinCategory, i: usize, f: usize, g: usize) -> bool {
    c.hom(i, c.dom(f)).iter().any(|&a| c.comp(f, a) != c.comp(g, a))
}

pub fn is_generator(c: &FinCategory, i: usize) -> bool {
    parallel_pairs(c).into_iter().all(|(f, g)| separates(c, i, f, g))
}

/// Objects `I` with `Hom(I, -)` faithful.
pub fn find_generators(c: &FinCategory) -> Vec<usize> {
    let pairs = parallel_pairs(c);
    (0..c.num_objects())
        .filter(|&i| pairs.iter().all(|&(f, g)| separates(c, i, f, g)))
        .collect()
}

/// A family of objects jointly separating all parallel pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFamily {
    pub members: Vec<usize>,
    /// Every object receives arrows from exactly one member.
    pub locally_unique: bool,
}

pub fn is_generating_family(c: &FinCategory, members: &[usize]) -> bool {
    parallel_pairs(c)
        .into_iter()
        .all(|(f, g)| members.iter().any(|&i| separates(c, i, f, g)))
}

pub fn is_locally_unique(c: &FinCategory, members: &[usize]) -> bool {
    (0..c.num_objects()).all(|a| members.iter().filter(|&&i| !c.hom(i, a).is_empty()).count() == 1)
}

/// Inclusion-minimal nonempty generating families, by size then
/// lexicographically. Objects beyond the first 16 are not considered.
pub fn find_generator_families(c: &FinCategory) -> Vec<GeneratorFamily> {
    let n = c.num_objects().min(16);
    let pairs = parallel_pairs(c);
    // For each object the set of pairs it separates, as a bitset.
    let sep: Vec<Vec<bool>> = (0..n)
        .map(|i| pairs.iter().map(|&(f, g)| separates(c, i, f, g)).collect())
        .collect();
    let mut minimal: Vec<u32> = Vec::new();
    let mut masks: Vec<u32> = (1u32..(1 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
    for m in masks {
        if minimal.iter().any(|&s| s & !m == 0) {
            continue;
        }
        let covers = (0..pairs.len()).all(|p| (0..n).any(|i| m & (1 << i) != 0 && sep[i][p]));
        if covers {
            minimal.push(m);
        }
    }
    minimal
        .into_iter()
        .map(|m| {
            let members: Vec<usize> = (0..n).filter(|&i| m & (1 << i) != 0).collect();
            GeneratorFamily {
                locally_unique: is_locally_unique(c, &members),
                members,
            }
        })
        .collect()
}

/// `Hom(I, -)` as data: for each object the hom-set from `i`, and for each
/// morphism the post-composition map between those hom-sets (by position).
pub fn hom_functor(c: &FinCategory, i: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let sets: Vec<Vec<usize>> = (0..c.num_objects()).map(|a| c.hom(i, a).to_vec()).collect();
    let maps = (0..c.num_morphisms())
        .map(|f| {
            let (a, b) = (c.dom(f), c.cod(f));
            sets[a]
                .iter()
                .map(|&x| sets[b].iter().position(|&y| y == c.compose(f, x)).unwrap())
                .collect()
        })
        .collect();
    (sets, maps)
}
