use crate::logic::Signature;
use crate::structures::FinStructure;

/// `Z/n` as a `(+, -, 0)`-structure.
pub fn cyclic_group(n: usize) -> FinStructure {
    assert!(n > 0);
    let mut m = FinStructure::blank(&Signature::group(), &[n]);
    m.consts.insert("0".into(), 0);
    for a in 0..n {
        m.funcs.get_mut("-").unwrap().set(&[a], Some((n - a) % n));
        for b in 0..n {
            m.funcs.get_mut("+").unwrap().set(&[a, b], Some((a + b) % n));
        }
    }
    m
}

/// Direct product of two groups; element `(x, y)` has index `x * |b| + y`
/// and label `x.y`.
pub fn group_product(a: &FinStructure, b: &FinStructure) -> FinStructure {
    let (na, nb) = (a.size(0), b.size(0));
    let mut m = FinStructure::blank(&Signature::group(), &[na * nb]);
    m.names[0] = (0..na * nb)
        .map(|i| format!("{}.{}", a.names[0][i / nb], b.names[0][i % nb]).into())
        .collect();
    let pair = |x: usize, y: usize| x * nb + y;
    m.consts.insert("0".into(), pair(a.constant("0"), b.constant("0")));
    for i in 0..na * nb {
        let (x, y) = (i / nb, i % nb);
        let neg = pair(a.apply("-", &[x]).unwrap(), b.apply("-", &[y]).unwrap());
        m.funcs.get_mut("-").unwrap().set(&[i], Some(neg));
        for j in 0..na * nb {
            let (u, v) = (j / nb, j % nb);
            let sum = pair(a.apply("+", &[x, u]).unwrap(), b.apply("+", &[y, v]).unwrap());
            m.funcs.get_mut("+").unwrap().set(&[i, j], Some(sum));
        }
    }
    m
}

/// `Z/n1 × Z/n2 × ...`; the empty list gives the trivial group.
pub fn abelian_group(orders: &[usize]) -> FinStructure {
    orders
        .iter()
        .map(|&n| cyclic_group(n))
        .reduce(|a, b| group_product(&a, &b))
        .unwrap_or_else(|| cyclic_group(1))
}

/// Every abelian group of order at most `max_order`, one per isomorphism
/// class, given by its invariant factors.
pub fn abelian_groups_up_to(max_order: usize) -> Vec<(String, FinStructure)> {
    let mut out = vec![("0".to_string(), cyclic_group(1))];
    for n in 2..=max_order {
        for factors in invariant_factors(n) {
            let name = factors.iter().map(|k| format!("Z{k}")).collect::<Vec<_>>().join("x");
            out.push((name, abelian_group(&factors)));
        }
    }
    out
}

/// Lists of invariant factors `d1 | d2 | ...` with product `n`.
fn invariant_factors(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, prev: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=n {
            let rest = n / d;
            if n.is_multiple_of(d) && d.is_multiple_of(prev) && (rest == 1 || rest.is_multiple_of(d)) {
                acc.push(d);
                go(rest, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// A bare set of `n` elements over the one-sorted empty signature.
pub fn bare_set(n: usize) -> FinStructure {
    FinStructure::blank(&Signature::new(&["s"]), &[n])
}

/// `n` elements with the unary predicate `P` holding on `members`.
pub fn unary_predicate(n: usize, members: &[usize]) -> FinStructure {
    let sig = Signature::new(&["s"]).with_relation("P", &["s"]);
    let mut m = FinStructure::blank(&sig, &[n]);
    for &e in members {
        m.rels.get_mut("P").unwrap().set(&[e], true);
    }
    m
}

/// `n` elements with a unary function `f` given by `map`.
pub fn unary_algebra(map: &[usize]) -> FinStructure {
    let sig = Signature::new(&["s"]).with_function("f", &["s"], "s", false);
    let mut m = FinStructure::blank(&sig, &[map.len()]);
    for (x, &y) in map.iter().enumerate() {
        m.funcs.get_mut("f").unwrap().set(&[x], Some(y));
    }
    m
}

/// A directed graph on `n` vertices with edge relation `E`.
pub fn digraph(n: usize, edges: &[(usize, usize)]) -> FinStructure {
    let sig = Signature::new(&["v"]).with_relation("E", &["v", "v"]);
    let mut m = FinStructure::blank(&sig, &[n]);
    for &(x, y) in edges {
        m.rels.get_mut("E").unwrap().set(&[x, y], true);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_group_counts_by_order() {
        let counts: Vec<usize> = (1..=16)
            .map(|n| abelian_groups_up_to(n).len() - abelian_groups_up_to(n - 1).len())
            .skip(1)
            .collect();
        // Orders 2..=16.
        assert_eq!(counts, vec![1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
    }
}
