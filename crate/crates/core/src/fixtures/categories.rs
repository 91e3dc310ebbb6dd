use crate::fincat::{FinCategory, Morphism};
use crate::structures::FinStructure;

use super::structures::{abelian_group, cyclic_group};

/// A preorder on `names`; the morphism `a_b` exists iff `leq(a, b)`.
pub fn preorder(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> FinCategory {
    let n = names.len();
    let mut ms = Vec::new();
    let mut index = vec![None; n * n];
    for a in 0..n {
        for b in 0..n {
            if a == b || leq(a, b) {
                index[a * n + b] = Some(ms.len());
                let name = if a == b {
                    format!("1_{}", names[a])
                } else {
                    format!("{}_{}", names[a], names[b])
                };
                ms.push(Morphism { name, dom: a, cod: b });
            }
        }
    }
    let ids = (0..n).map(|a| index[a * n + a].unwrap()).collect();
    let ms2 = ms.clone();
    FinCategory::from_parts(names.iter().map(|s| s.to_string()).collect(), ms, ids, |g, f| {
        index[ms2[f].dom * n + ms2[g].cod]
    })
}

/// One object whose morphisms are the elements of a monoid with the
/// given multiplication table (`table[g][f]` is `g ∘ f`).
pub fn monoid(names: &[&str], unit: usize, table: &[Vec<usize>]) -> FinCategory {
    let ms = names
        .iter()
        .map(|n| Morphism {
            name: n.to_string(),
            dom: 0,
            cod: 0,
        })
        .collect();
    FinCategory::from_parts(vec!["*".into()], ms, vec![unit], |g, f| Some(table[g][f]))
}

/// A group (given as a `(+, -, 0)`-structure) as a one-object category.
pub fn group_category(g: &FinStructure) -> FinCategory {
    let n = g.size(0);
    let names: Vec<String> = g.names[0].iter().map(|l| format!("g{l}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| g.apply("+", &[a, b]).unwrap()).collect())
        .collect();
    monoid(&refs, g.constant("0"), &table)
}

/// The symmetric group on three letters as a one-object category.
pub fn s3_category() -> FinCategory {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let pos = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|g| perms.iter().map(|f| pos([g[f[0]], g[f[1]], g[f[2]]])).collect())
        .collect();
    monoid(&["e", "s12", "s01", "c1", "c2", "s02"], 0, &table)
}

/// Finite sets as objects with the chosen functions as morphisms. Objects
/// are given by name and carrier size; `keep` filters the functions.
pub fn set_category(objects: &[(&str, usize)], keep: impl Fn(&[usize]) -> bool) -> FinCategory {
    let mut ms: Vec<(String, usize, usize, Vec<usize>)> = Vec::new();
    for (a, &(an, asz)) in objects.iter().enumerate() {
        for (b, &(bn, bsz)) in objects.iter().enumerate() {
            let mut k = 0;
            for_each_function(asz, bsz, |map| {
                let identity = a == b && map.iter().enumerate().all(|(i, &x)| i == x);
                if identity || keep(map) {
                    let name = if identity {
                        format!("1_{an}")
                    } else {
                        k += 1;
                        format!("{an}{bn}{k}")
                    };
                    ms.push((name, a, b, map.to_vec()));
                }
            });
        }
    }
    let names = objects.iter().map(|(n, _)| n.to_string()).collect();
    FinCategory::concrete(names, ms, |g, f| f.iter().map(|&x| g[x]).collect()).expect("closed under composition")
}

fn for_each_function(n: usize, m: usize, mut visit: impl FnMut(&[usize])) {
    if m == 0 && n > 0 {
        return;
    }
    let mut map = vec![0; n];
    loop {
        visit(&map);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
        }
    }
}

/// Skeletal category of finite sets `{0..k}` for the given sizes.
pub fn finite_sets(sizes: &[usize]) -> FinCategory {
    let names: Vec<String> = sizes.iter().map(|k| format!("S{k}")).collect();
    let objs: Vec<(&str, usize)> = names.iter().map(String::as_str).zip(sizes.iter().copied()).collect();
    set_category(&objs, |_| true)
}

/// Structures and all homomorphisms (or strong homomorphisms) between them.
pub fn structure_category(objects: &[(String, FinStructure)], strong: bool) -> FinCategory {
    let names: Vec<String> = objects.iter().map(|(n, _)| n.clone()).collect();
    let structures: Vec<FinStructure> = objects.iter().map(|(_, m)| m.clone()).collect();
    crate::modcat::structure_category(&names, &structures, strong)
        .expect("closed under composition")
        .0
}

/// Skeletal category of abelian groups with the given invariant-factor lists.
pub fn abelian_category(groups: &[&[usize]]) -> FinCategory {
    let objs: Vec<(String, FinStructure)> = groups
        .iter()
        .map(|fs| {
            let name = if fs.is_empty() {
                "0".to_string()
            } else {
                fs.iter().map(|k| format!("Z{k}")).collect::<Vec<_>>().join("x")
            };
            (name, abelian_group(fs))
        })
        .collect();
    structure_category(&objs, false)
}

pub fn terminal_category() -> FinCategory {
    preorder(&["*"], |_, _| false)
}

pub fn discrete_category(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    preorder(&refs, |_, _| false)
}

/// Every pair of objects uniquely isomorphic.
pub fn codiscrete_category(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    preorder(&refs, |_, _| true)
}

/// Two objects and a single non-identity arrow between them.
pub fn arrow_category() -> FinCategory {
    preorder(&["a", "b"], |a, b| a <= b)
}

pub fn chain_category(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    preorder(&refs, |a, b| a <= b)
}

/// Subsets of a two-element set under inclusion; has all meets and joins.
pub fn boolean_lattice() -> FinCategory {
    preorder(&["bot", "l", "r", "top"], |a, b| a & b == a)
}

/// `l ≤ top ≥ r` without a bottom: the pair `(l, r)` has no meet.
pub fn vee_poset() -> FinCategory {
    preorder(&["l", "r", "top"], |a, b| b == 2 || a == b)
}

/// `l ← s → r`.
pub fn span_category() -> FinCategory {
    preorder(&["s", "l", "r"], |a, b| a == 0 || a == b)
}

/// Two parallel arrows `u, v: a → b`.
pub fn parallel_category() -> FinCategory {
    crate::fincat::parallel_shape()
}

/// Idempotent monoid `{1, e}` with `e ∘ e = e`.
pub fn idempotent_monoid() -> FinCategory {
    monoid(&["1", "e"], 0, &[vec![0, 1], vec![1, 1]])
}

/// A named corpus of small categories, each with at most 40 morphisms.
pub fn category_corpus() -> Vec<(String, FinCategory)> {
    let mut out: Vec<(String, FinCategory)> = vec![
        ("terminal".into(), terminal_category()),
        ("discrete2".into(), discrete_category(2)),
        ("discrete3".into(), discrete_category(3)),
        ("arrow".into(), arrow_category()),
        ("iso_pair".into(), codiscrete_category(2)),
        ("codiscrete3".into(), codiscrete_category(3)),
        ("chain3".into(), chain_category(3)),
        ("boolean_lattice".into(), boolean_lattice()),
        ("vee".into(), vee_poset()),
        ("span".into(), span_category()),
        ("parallel".into(), parallel_category()),
        ("idempotent".into(), idempotent_monoid()),
        ("Z2".into(), group_category(&cyclic_group(2))),
        ("Z3".into(), group_category(&cyclic_group(3))),
        ("Z4".into(), group_category(&cyclic_group(4))),
        ("Z2xZ2".into(), group_category(&abelian_group(&[2, 2]))),
        ("S3".into(), s3_category()),
        ("maps2".into(), finite_sets(&[2])),
        ("sets012".into(), finite_sets(&[0, 1, 2])),
        ("sets12".into(), finite_sets(&[1, 2])),
        ("labeled_pairs".into(), set_category(&[("A", 2), ("B", 2)], |_| true)),
        (
            "z2_groupoid".into(),
            set_category(&[("A", 2), ("B", 2)], |m| m[0] != m[1]),
        ),
        (
            "arrow_with_copy".into(),
            preorder(&["a", "b", "b2"], |a, b| a == b || a == 0 || (a > 0 && b > 0)),
        ),
        ("ab_0_z2_v4".into(), abelian_category(&[&[], &[2], &[2, 2]])),
        ("ab_0_z2_z3".into(), abelian_category(&[&[], &[2], &[3]])),
        ("ab_z2_z4".into(), abelian_category(&[&[2], &[4]])),
        (
            "ab_z2_copy".into(),
            structure_category(
                &[
                    ("Z2".into(), cyclic_group(2)),
                    ("Z2b".into(), cyclic_group(2)),
                    ("0".into(), cyclic_group(1)),
                ],
                false,
            ),
        ),
    ];
    out.push(("arrow_op".into(), arrow_category().opposite()));
    out.push(("span_op".into(), span_category().opposite()));
    out
}
