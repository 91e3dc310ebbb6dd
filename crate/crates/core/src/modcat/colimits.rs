use std::collections::{HashMap, HashSet};

use crate::label::Label;
use crate::logic::Signature;
use crate::structures::{enumerate_homomorphisms, is_homomorphism, tuples, FinStructure, Homomorphism};
use crate::{Error, Result};

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union(parent: &mut [usize], x: usize, y: usize) -> bool {
    let (rx, ry) = (find(parent, x), find(parent, y));
    if rx == ry {
        return false;
    }
    // Keep the smaller element as root so classes are named by their least member.
    let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
    parent[hi] = lo;
    true
}

/// The coequalizer of `f, f2: a ⇉ b`: the quotient of `b` by the least
/// congruence identifying `f(x)` with `f2(x)`, with relations pushed
/// forward. Returns the quotient and the projection.
pub fn coequalizer(
    a: &FinStructure,
    b: &FinStructure,
    f: &Homomorphism,
    f2: &Homomorphism,
) -> Result<(FinStructure, Homomorphism)> {
    if a.sig != b.sig || !is_homomorphism(a, b, f) || !is_homomorphism(a, b, f2) {
        return Err(Error::NotParallel(
            "both maps must be homomorphisms between the same two structures".into(),
        ));
    }
    let sig = &b.sig;
    let nsorts = sig.sorts.len();
    let mut parent: Vec<Vec<usize>> = (0..nsorts).map(|s| (0..b.size(s)).collect()).collect();
    for s in 0..nsorts {
        for x in 0..a.size(s) {
            union(&mut parent[s], f.maps[s][x], f2.maps[s][x]);
        }
    }
    // Close under every function symbol until stable.
    loop {
        let mut changed = false;
        for (name, table) in &b.funcs {
            let (args, res) = sig.function_profile(name).unwrap();
            let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
            for t in tuples(&table.dims) {
                let Some(v) = table.get(&t) else { continue };
                let key: Vec<usize> = args.iter().zip(&t).map(|(&s, &e)| find(&mut parent[s], e)).collect();
                match seen.get(&key) {
                    Some(&w) => changed |= union(&mut parent[res], w, v),
                    None => {
                        seen.insert(key, v);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut maps = Vec::with_capacity(nsorts);
    let mut sizes = Vec::with_capacity(nsorts);
    let mut names = Vec::with_capacity(nsorts);
    for s in 0..nsorts {
        let mut class_of = vec![usize::MAX; b.size(s)];
        let mut labels = Vec::new();
        for x in 0..b.size(s) {
            let r = find(&mut parent[s], x);
            if r == x {
                class_of[x] = labels.len();
                labels.push(Label(format!("[{}]", b.label(s, x))));
            }
        }
        let map: Vec<usize> = (0..b.size(s)).map(|x| class_of[find(&mut parent[s], x)]).collect();
        sizes.push(labels.len());
        names.push(labels);
        maps.push(map);
    }
    let p = Homomorphism { maps };
    let mut c = FinStructure::blank(sig, &sizes);
    c.names = names;
    for (k, &e) in &b.consts {
        let s = sig.constant_sort(k).unwrap();
        c.consts.insert(k.clone(), p.maps[s][e]);
    }
    for (name, table) in &b.funcs {
        let (args, res) = sig.function_profile(name).unwrap();
        let target = c.funcs.get_mut(name).unwrap();
        for t in tuples(&table.dims) {
            if let Some(v) = table.get(&t) {
                let image: Vec<usize> = args.iter().zip(&t).map(|(&s, &e)| p.maps[s][e]).collect();
                target.set(&image, Some(p.maps[res][v]));
            }
        }
    }
    for (name, table) in &b.rels {
        let args = sig.relation_profile(name).unwrap();
        let target = c.rels.get_mut(name).unwrap();
        for t in tuples(&table.dims) {
            if table.get(&t) {
                let image: Vec<usize> = args.iter().zip(&t).map(|(&s, &e)| p.maps[s][e]).collect();
                target.set(&image, true);
            }
        }
    }
    Ok((c, p))
}

/// Brute-force universal property of a coequalizer against the given
/// targets: every `q: b → m` with `q∘f = q∘f2` factors as `u∘p` for exactly
/// one `u`.
pub fn check_coequalizer_property(
    b: &FinStructure,
    f: &Homomorphism,
    f2: &Homomorphism,
    c: &FinStructure,
    p: &Homomorphism,
    targets: &[FinStructure],
) -> Result<bool> {
    if f.then(p) != f2.then(p) {
        return Ok(false);
    }
    for m in targets {
        let from_c = enumerate_homomorphisms(c, m, false)?;
        for q in enumerate_homomorphisms(b, m, false)? {
            if f.then(&q) != f2.then(&q) {
                continue;
            }
            if from_c.iter().filter(|u| p.then(u) == q).count() != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Disjoint union of structures over a signature without constants whose
/// function symbols are all unary. Element `e` of summand `i` is labelled
/// `i:label`.
pub fn coproduct_unary(sig: &Signature, ms: &[FinStructure]) -> Result<(FinStructure, Vec<Homomorphism>)> {
    if !sig.constants.is_empty() {
        return Err(Error::SignatureNotUnary("constant symbols are not allowed".into()));
    }
    for f in sig.functions.keys() {
        if sig.function_profile(f).unwrap().0.len() != 1 {
            return Err(Error::SignatureNotUnary(format!("`{f}` is not unary")));
        }
    }
    if ms.iter().any(|m| m.sig != *sig) {
        return Err(Error::SignatureMismatch("summands must share the signature".into()));
    }
    let nsorts = sig.sorts.len();
    // offsets[i][s]: start of summand i in sort s.
    let mut offsets = vec![vec![0; nsorts]; ms.len() + 1];
    for (i, m) in ms.iter().enumerate() {
        for s in 0..nsorts {
            offsets[i + 1][s] = offsets[i][s] + m.size(s);
        }
    }
    let sizes = offsets[ms.len()].clone();
    let mut u = FinStructure::blank(sig, &sizes);
    for s in 0..nsorts {
        u.names[s] = ms
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.names[s].iter().map(move |l| Label(format!("{i}:{l}"))))
            .collect();
    }
    let mut injections = Vec::with_capacity(ms.len());
    for (i, m) in ms.iter().enumerate() {
        let off = &offsets[i];
        for (name, table) in &m.funcs {
            let (args, res) = sig.function_profile(name).unwrap();
            for x in 0..m.size(args[0]) {
                let v = table.get(&[x]).map(|y| y + off[res]);
                u.funcs.get_mut(name).unwrap().set(&[x + off[args[0]]], v);
            }
        }
        for (name, table) in &m.rels {
            let args = sig.relation_profile(name).unwrap();
            for t in tuples(&table.dims) {
                if table.get(&t) {
                    let shifted: Vec<usize> = args.iter().zip(&t).map(|(&s, &e)| e + off[s]).collect();
                    u.rels.get_mut(name).unwrap().set(&shifted, true);
                }
            }
        }
        injections.push(Homomorphism {
            maps: (0..nsorts)
                .map(|s| (0..m.size(s)).map(|e| e + off[s]).collect())
                .collect(),
        });
    }
    Ok((u, injections))
}

/// Brute-force universal property of a coproduct against the given
/// targets: restriction along the injections is a bijection from
/// `Hom(u, t)` onto the product of the `Hom(m_i, t)`.
pub fn check_coproduct_property(
    ms: &[FinStructure],
    u: &FinStructure,
    injections: &[Homomorphism],
    targets: &[FinStructure],
) -> Result<bool> {
    for t in targets {
        let mut expected = 1usize;
        for m in ms {
            expected *= enumerate_homomorphisms(m, t, false)?.len();
        }
        let homs = enumerate_homomorphisms(u, t, false)?;
        let restrictions: HashSet<Vec<Homomorphism>> = homs
            .iter()
            .map(|v| injections.iter().map(|i| i.then(v)).collect())
            .collect();
        if homs.len() != expected || restrictions.len() != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Direct product with componentwise operations; element indices are mixed
/// radix with the first factor most significant and labels join the
/// components with `.`. Returns the projections.
pub fn product_structure(sig: &Signature, ms: &[FinStructure]) -> (FinStructure, Vec<Homomorphism>) {
    let nsorts = sig.sorts.len();
    let dims: Vec<Vec<usize>> = (0..nsorts).map(|s| ms.iter().map(|m| m.size(s)).collect()).collect();
    let sizes: Vec<usize> = dims.iter().map(|d| d.iter().product()).collect();
    let encode = |s: usize, comps: &[usize]| comps.iter().zip(&dims[s]).fold(0, |acc, (c, d)| acc * d + c);
    let mut p = FinStructure::blank(sig, &sizes);
    for s in 0..nsorts {
        p.names[s] = tuples(&dims[s])
            .map(|t| {
                let parts: Vec<String> = t.iter().zip(ms).map(|(&e, m)| m.label(s, e).0.clone()).collect();
                Label(parts.join("."))
            })
            .collect();
    }
    for k in sig.constants.keys() {
        let s = sig.constant_sort(k).unwrap();
        let comps: Vec<usize> = ms.iter().map(|m| m.constant(k)).collect();
        p.consts.insert(k.clone(), encode(s, &comps));
    }
    for name in sig.functions.keys() {
        let (args, res) = sig.function_profile(name).unwrap();
        let arg_dims: Vec<usize> = args.iter().map(|&s| sizes[s]).collect();
        for t in tuples(&arg_dims) {
            let decoded: Vec<Vec<usize>> = args.iter().zip(&t).map(|(&s, &e)| decode(&dims[s], e)).collect();
            let value: Option<Vec<usize>> = ms
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let a: Vec<usize> = decoded.iter().map(|d| d[i]).collect();
                    m.apply(name, &a)
                })
                .collect();
            let v = value.map(|v| encode(res, &v));
            p.funcs.get_mut(name).unwrap().set(&t, v);
        }
    }
    for name in sig.relations.keys() {
        let args = sig.relation_profile(name).unwrap();
        let arg_dims: Vec<usize> = args.iter().map(|&s| sizes[s]).collect();
        for t in tuples(&arg_dims) {
            let decoded: Vec<Vec<usize>> = args.iter().zip(&t).map(|(&s, &e)| decode(&dims[s], e)).collect();
            let holds = ms.iter().enumerate().all(|(i, m)| {
                let a: Vec<usize> = decoded.iter().map(|d| d[i]).collect();
                m.holds(name, &a)
            });
            p.rels.get_mut(name).unwrap().set(&t, holds);
        }
    }
    let projections = (0..ms.len())
        .map(|i| Homomorphism {
            maps: (0..nsorts)
                .map(|s| (0..sizes[s]).map(|e| decode(&dims[s], e)[i]).collect())
                .collect(),
        })
        .collect();
    (p, projections)
}

fn decode(dims: &[usize], mut e: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = e % dims[k];
        e /= dims[k];
    }
    out
}

/// The substructure of `a` on which `f` and `g` agree, with its inclusion.
pub fn equalizer_structure(
    a: &FinStructure,
    b: &FinStructure,
    f: &Homomorphism,
    g: &Homomorphism,
) -> Result<(FinStructure, Homomorphism)> {
    if a.sig != b.sig || !is_homomorphism(a, b, f) || !is_homomorphism(a, b, g) {
        return Err(Error::NotParallel(
            "both maps must be homomorphisms between the same two structures".into(),
        ));
    }
    let sig = &a.sig;
    let nsorts = sig.sorts.len();
    let keep: Vec<Vec<usize>> = (0..nsorts)
        .map(|s| (0..a.size(s)).filter(|&x| f.maps[s][x] == g.maps[s][x]).collect())
        .collect();
    let pos = |s: usize, x: usize| keep[s].iter().position(|&y| y == x);
    let sizes: Vec<usize> = keep.iter().map(Vec::len).collect();
    let mut e = FinStructure::blank(sig, &sizes);
    for s in 0..nsorts {
        e.names[s] = keep[s].iter().map(|&x| a.label(s, x).clone()).collect();
    }
    for (k, &x) in &a.consts {
        let s = sig.constant_sort(k).unwrap();
        e.consts.insert(k.clone(), pos(s, x).expect("constants are equalized"));
    }
    for name in sig.functions.keys() {
        let (args, res) = sig.function_profile(name).unwrap();
        let dims: Vec<usize> = args.iter().map(|&s| sizes[s]).collect();
        for t in tuples(&dims) {
            let orig: Vec<usize> = args.iter().zip(&t).map(|(&s, &i)| keep[s][i]).collect();
            let v = a
                .apply(name, &orig)
                .map(|y| pos(res, y).expect("closed under operations"));
            e.funcs.get_mut(name).unwrap().set(&t, v);
        }
    }
    for name in sig.relations.keys() {
        let args = sig.relation_profile(name).unwrap();
        let dims: Vec<usize> = args.iter().map(|&s| sizes[s]).collect();
        for t in tuples(&dims) {
            let orig: Vec<usize> = args.iter().zip(&t).map(|(&s, &i)| keep[s][i]).collect();
            e.rels.get_mut(name).unwrap().set(&t, a.holds(name, &orig));
        }
    }
    Ok((e, Homomorphism { maps: keep }))
}
