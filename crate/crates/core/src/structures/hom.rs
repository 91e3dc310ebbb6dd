//! Homomorphism search by backtracking with constraint checks scheduled at
//! the last variable they mention.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::structure::{tuples, unflatten, FinStructure};
use crate::Result;

/// A sort-indexed map between carriers; `maps[s][e]` is the image of element
/// `e` of sort `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Homomorphism {
    pub maps: Vec<Vec<usize>>,
}

impl Homomorphism {
    pub fn identity(m: &FinStructure) -> Self {
        Homomorphism {
            maps: m.sizes().into_iter().map(|n| (0..n).collect()).collect(),
        }
    }

    pub fn apply(&self, sort: usize, e: usize) -> usize {
        self.maps[sort][e]
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
                .collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| {
            let mut seen = std::collections::HashSet::new();
            m.iter().all(|x| seen.insert(*x))
        })
    }

    pub fn is_surjective_onto(&self, target: &FinStructure) -> bool {
        self.maps.iter().enumerate().all(|(s, m)| {
            let mut hit = vec![false; target.size(s)];
            m.iter().for_each(|&x| hit[x] = true);
            hit.into_iter().all(|b| b)
        })
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Homomorphism {
        Homomorphism {
            maps: self
                .maps
                .iter()
                .map(|m| {
                    let mut inv = vec![0; m.len()];
                    for (x, &y) in m.iter().enumerate() {
                        inv[y] = x;
                    }
                    inv
                })
                .collect(),
        }
    }

    /// Labels of the map as `{sort: {source label: target label}}`.
    pub fn to_json(&self, a: &FinStructure, b: &FinStructure) -> serde_json::Value {
        let mut out = serde_json::Map::new();
        for (s, m) in self.maps.iter().enumerate() {
            let mut inner = serde_json::Map::new();
            for (x, &y) in m.iter().enumerate() {
                inner.insert(a.names[s][x].0.clone(), serde_json::to_value(&b.names[s][y]).unwrap());
            }
            out.insert(a.sig.sorts[s].clone(), serde_json::Value::Object(inner));
        }
        serde_json::Value::Object(out)
    }
}

/// Checks preservation of constants, defined function values and relations.
pub fn is_homomorphism(a: &FinStructure, b: &FinStructure, h: &Homomorphism) -> bool {
    check(a, b, h, false, false)
}

/// A homomorphism that also reflects every relation.
pub fn is_strong(a: &FinStructure, b: &FinStructure, h: &Homomorphism) -> bool {
    check(a, b, h, true, false)
}

fn check(a: &FinStructure, b: &FinStructure, h: &Homomorphism, strong: bool, reflect_defined: bool) -> bool {
    let sig = &a.sig;
    if h.maps.len() != sig.sorts.len() {
        return false;
    }
    for (s, m) in h.maps.iter().enumerate() {
        if m.len() != a.size(s) || m.iter().any(|&y| y >= b.size(s)) {
            return false;
        }
    }
    for (c, &e) in &a.consts {
        let s = sig.constant_sort(c).unwrap();
        if h.maps[s][e] != b.consts[c] {
            return false;
        }
    }
    for (f, t) in &a.funcs {
        let (args, res) = sig.function_profile(f).unwrap();
        let tb = &b.funcs[f];
        for tuple in tuples(&t.dims) {
            let image: Vec<usize> = args.iter().zip(&tuple).map(|(&s, &e)| h.maps[s][e]).collect();
            match t.get(&tuple) {
                Some(v) => {
                    if tb.get(&image) != Some(h.maps[res][v]) {
                        return false;
                    }
                }
                None => {
                    if reflect_defined && tb.get(&image).is_some() {
                        return false;
                    }
                }
            }
        }
    }
    for (r, t) in &a.rels {
        let args = sig.relation_profile(r).unwrap();
        let tb = &b.rels[r];
        for tuple in tuples(&t.dims) {
            let image: Vec<usize> = args.iter().zip(&tuple).map(|(&s, &e)| h.maps[s][e]).collect();
            let (x, y) = (t.get(&tuple), tb.get(&image));
            if (x && !y) || (strong && !x && y) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct SearchMode {
    pub strong: bool,
    pub injective: bool,
    /// Undefined applications must stay undefined (needed for isomorphisms
    /// between partial structures).
    pub reflect_defined: bool,
}

#[derive(Clone, Debug)]
enum Constraint {
    Const {
        pos: usize,
        target: usize,
    },
    Func {
        f: usize,
        flat: usize,
        value: Option<usize>,
    },
    Rel {
        r: usize,
        flat: usize,
        holds: bool,
    },
}

/// Enumerates maps satisfying `mode` in lexicographic order of the flattened
/// map (sort-major), calling `visit` on each.
pub(crate) fn search<F>(a: &FinStructure, b: &FinStructure, mode: SearchMode, mut visit: F)
where
    F: FnMut(&Homomorphism) -> ControlFlow<()>,
{
    let sig = &a.sig;
    let sizes_a = a.sizes();
    let sizes_b = b.sizes();
    let mut offset = vec![0usize; sizes_a.len() + 1];
    for s in 0..sizes_a.len() {
        offset[s + 1] = offset[s] + sizes_a[s];
    }
    let n = offset[sizes_a.len()];
    let sort_of: Vec<usize> = (0..sizes_a.len())
        .flat_map(|s| std::iter::repeat_n(s, sizes_a[s]))
        .collect();
    if mode.injective && (0..sizes_a.len()).any(|s| sizes_a[s] > sizes_b[s]) {
        return;
    }
    if (0..sizes_a.len()).any(|s| sizes_a[s] > 0 && sizes_b[s] == 0) {
        return;
    }

    let func_names: Vec<&String> = sig.functions.keys().collect();
    let rel_names: Vec<&String> = sig.relations.keys().collect();
    let func_profiles: Vec<(Vec<usize>, usize)> = func_names.iter().map(|f| sig.function_profile(f).unwrap()).collect();
    let rel_profiles: Vec<Vec<usize>> = rel_names.iter().map(|r| sig.relation_profile(r).unwrap()).collect();

    // Constraints bucketed by the largest variable position they involve.
    let mut buckets: Vec<Vec<Constraint>> = vec![Vec::new(); n.max(1)];
    let mut always_fail = false;
    for (c, &e) in &a.consts {
        let s = sig.constant_sort(c).unwrap();
        buckets[offset[s] + e].push(Constraint::Const {
            pos: offset[s] + e,
            target: b.consts[c],
        });
    }
    let mut tuple = [0usize; 16];
    for (fi, f) in func_names.iter().enumerate() {
        let t = &a.funcs[*f];
        let (args, res) = &func_profiles[fi];
        for flat in 0..t.values.len() {
            let value = t.values[flat];
            if value.is_none() && !mode.reflect_defined {
                continue;
            }
            unflatten(&t.dims, flat, &mut tuple[..args.len()]);
            let mut last = args.iter().zip(&tuple).map(|(&s, &e)| offset[s] + e).max();
            if let Some(v) = value {
                last = last.max(Some(offset[*res] + v));
            }
            match last {
                Some(p) => buckets[p].push(Constraint::Func { f: fi, flat, value }),
                None => {
                    // A nullary symbol: decide now.
                    let tb = &b.funcs[*f];
                    let ok = match value {
                        Some(_) => unreachable!("nullary value is a position"),
                        None => tb.values[0].is_none(),
                    };
                    always_fail |= !ok;
                }
            }
        }
    }
    for (ri, r) in rel_names.iter().enumerate() {
        let t = &a.rels[*r];
        let args = &rel_profiles[ri];
        for flat in 0..t.bits.len() {
            let holds = t.bits[flat];
            if !holds && !mode.strong {
                continue;
            }
            unflatten(&t.dims, flat, &mut tuple[..args.len()]);
            match args.iter().zip(&tuple).map(|(&s, &e)| offset[s] + e).max() {
                Some(p) => buckets[p].push(Constraint::Rel { r: ri, flat, holds }),
                None => always_fail |= b.rels[*r].bits[0] != holds,
            }
        }
    }
    if always_fail {
        return;
    }

    let mut assign = vec![0usize; n];
    let mut used: Vec<Vec<bool>> = sizes_b.iter().map(|&m| vec![false; m]).collect();
    let image_of = |assign: &[usize], s: usize, e: usize| assign[offset[s] + e];

    let satisfied = |assign: &[usize], c: &Constraint| -> bool {
        let mut args_buf = [0usize; 16];
        let mut img = [0usize; 16];
        match c {
            Constraint::Const { pos, target } => assign[*pos] == *target,
            Constraint::Func { f, flat, value } => {
                let t = &a.funcs[func_names[*f]];
                let (args, res) = &func_profiles[*f];
                unflatten(&t.dims, *flat, &mut args_buf[..args.len()]);
                for (k, &s) in args.iter().enumerate() {
                    img[k] = image_of(assign, s, args_buf[k]);
                }
                let got = b.funcs[func_names[*f]].get(&img[..args.len()]);
                match value {
                    Some(v) => got == Some(image_of(assign, *res, *v)),
                    None => got.is_none(),
                }
            }
            Constraint::Rel { r, flat, holds } => {
                let t = &a.rels[rel_names[*r]];
                let args = &rel_profiles[*r];
                unflatten(&t.dims, *flat, &mut args_buf[..args.len()]);
                for (k, &s) in args.iter().enumerate() {
                    img[k] = image_of(assign, s, args_buf[k]);
                }
                let got = b.rels[rel_names[*r]].get(&img[..args.len()]);
                if *holds {
                    got
                } else {
                    !got
                }
            }
        }
    };

    if n == 0 {
        let _ = visit(&Homomorphism {
            maps: vec![Vec::new(); sizes_a.len()],
        });
        return;
    }

    // Iterative backtracking; `next[p]` is the next candidate for position p.
    let mut p = 0usize;
    let mut next = vec![0usize; n];
    loop {
        let s = sort_of[p];
        let mut placed = false;
        while next[p] < sizes_b[s] {
            let y = next[p];
            next[p] += 1;
            if mode.injective && used[s][y] {
                continue;
            }
            assign[p] = y;
            if buckets[p].iter().all(|c| satisfied(&assign, c)) {
                placed = true;
                break;
            }
        }
        if placed {
            if mode.injective {
                used[s][assign[p]] = true;
            }
            if p + 1 == n {
                let maps = (0..sizes_a.len())
                    .map(|s| assign[offset[s]..offset[s + 1]].to_vec())
                    .collect();
                if visit(&Homomorphism { maps }).is_break() {
                    return;
                }
                if mode.injective {
                    used[s][assign[p]] = false;
                }
                continue;
            }
            p += 1;
            next[p] = 0;
        } else {
            if p == 0 {
                return;
            }
            p -= 1;
            if mode.injective {
                used[sort_of[p]][assign[p]] = false;
            }
        }
    }
}

/// All homomorphisms `a → b` (strong ones if `strong`), in lexicographic
/// order of their sort-major element maps.
pub fn enumerate_homomorphisms(a: &FinStructure, b: &FinStructure, strong: bool) -> Result<Vec<Homomorphism>> {
    a.check_same_signature(b)?;
    let mut out = Vec::new();
    search(
        a,
        b,
        SearchMode {
            strong,
            ..SearchMode::default()
        },
        |h| {
            out.push(h.clone());
            ControlFlow::Continue(())
        },
    );
    Ok(out)
}

/// Number of homomorphisms without materializing them.
pub fn count_homomorphisms(a: &FinStructure, b: &FinStructure, strong: bool) -> Result<usize> {
    a.check_same_signature(b)?;
    let mut n = 0;
    search(
        a,
        b,
        SearchMode {
            strong,
            ..SearchMode::default()
        },
        |_| {
            n += 1;
            ControlFlow::Continue(())
        },
    );
    Ok(n)
}

/// Every sort-indexed map `a → b` in the same order as the search, for use as
/// a brute-force oracle on small inputs.
pub fn all_maps(a: &FinStructure, b: &FinStructure) -> Vec<Homomorphism> {
    let sizes_a = a.sizes();
    let dims: Vec<usize> = sizes_a
        .iter()
        .enumerate()
        .flat_map(|(s, &n)| std::iter::repeat_n(b.size(s), n))
        .collect();
    tuples(&dims)
        .map(|flat| {
            let mut maps = Vec::new();
            let mut i = 0;
            for &n in &sizes_a {
                maps.push(flat[i..i + n].to_vec());
                i += n;
            }
            Homomorphism { maps }
        })
        .collect()
}
