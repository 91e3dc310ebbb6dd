use std::ops::ControlFlow;

use super::hom::{search, Homomorphism, SearchMode};
use super::structure::{tuples, FinStructure};
use crate::Result;

/// A bijective strong homomorphism `a → b` that also reflects definedness,
/// so its inverse is a homomorphism too.
pub fn are_isomorphic(a: &FinStructure, b: &FinStructure) -> Result<Option<Homomorphism>> {
    a.check_same_signature(b)?;
    if a.sizes() != b.sizes() {
        return Ok(None);
    }
    let mut found = None;
    let mode = SearchMode {
        strong: true,
        injective: true,
        reflect_defined: true,
    };
    search(a, b, mode, |h| {
        found = Some(h.clone());
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Byte-level encoding of `m` relabelled by `perm` (`perm[s][old] = new`).
fn encode(m: &FinStructure, perm: &[Vec<usize>], inv: &[Vec<usize>]) -> Vec<u32> {
    let sig = &m.sig;
    let mut out = Vec::new();
    for (c, &e) in &m.consts {
        let s = sig.constant_sort(c).unwrap();
        out.push(perm[s][e] as u32);
    }
    let mut old = [0usize; 16];
    for (f, t) in &m.funcs {
        let (args, res) = sig.function_profile(f).unwrap();
        for new_tuple in tuples(&t.dims) {
            for (k, &s) in args.iter().enumerate() {
                old[k] = inv[s][new_tuple[k]];
            }
            out.push(match t.get(&old[..args.len()]) {
                Some(v) => perm[res][v] as u32 + 1,
                None => 0,
            });
        }
    }
    for (r, t) in &m.rels {
        let args = sig.relation_profile(r).unwrap();
        for new_tuple in tuples(&t.dims) {
            for (k, &s) in args.iter().enumerate() {
                old[k] = inv[s][new_tuple[k]];
            }
            out.push(u32::from(t.get(&old[..args.len()])));
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The least encoding over all relabellings of the carriers, together with
/// the relabelled structure (labels `0..n`).
pub fn canonical_form(m: &FinStructure) -> (Vec<u32>, FinStructure) {
    let sizes = m.sizes();
    let mut perm: Vec<Vec<usize>> = sizes.iter().map(|&n| (0..n).collect()).collect();
    let mut best: Option<(Vec<u32>, Vec<Vec<usize>>)> = None;
    loop {
        let inv: Vec<Vec<usize>> = perm
            .iter()
            .map(|p| {
                let mut q = vec![0; p.len()];
                for (x, &y) in p.iter().enumerate() {
                    q[y] = x;
                }
                q
            })
            .collect();
        let code = encode(m, &perm, &inv);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, perm.clone()));
        }
        // Odometer over the per-sort permutations.
        let mut s = 0;
        loop {
            if s == perm.len() {
                let (code, perm) = best.unwrap();
                return (code, relabel(m, &perm));
            }
            if next_permutation(&mut perm[s]) {
                break;
            }
            perm[s].sort_unstable();
            s += 1;
        }
    }
}

/// The structure obtained by moving element `e` of sort `s` to `perm[s][e]`.
pub fn relabel(m: &FinStructure, perm: &[Vec<usize>]) -> FinStructure {
    let sig = &m.sig;
    let mut out = FinStructure::blank(sig, &m.sizes());
    for (c, &e) in &m.consts {
        let s = sig.constant_sort(c).unwrap();
        out.consts.insert(c.clone(), perm[s][e]);
    }
    for (f, t) in &m.funcs {
        let (args, res) = sig.function_profile(f).unwrap();
        let target = out.funcs.get_mut(f).unwrap();
        for tuple in tuples(&t.dims) {
            let new: Vec<usize> = args.iter().zip(&tuple).map(|(&s, &e)| perm[s][e]).collect();
            target.set(&new, t.get(&tuple).map(|v| perm[res][v]));
        }
    }
    for (r, t) in &m.rels {
        let args = sig.relation_profile(r).unwrap();
        let target = out.rels.get_mut(r).unwrap();
        for tuple in tuples(&t.dims) {
            let new: Vec<usize> = args.iter().zip(&tuple).map(|(&s, &e)| perm[s][e]).collect();
            target.set(&new, t.get(&tuple));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_exhaustive() {
        let mut p = vec![0, 1, 2, 3];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 24);
    }
}
