use crate::logic::{eval_sentence, Signature};
use crate::structures::{enumerate_homomorphisms, FinStructure, Theory};
use crate::{Error, Result};

const MAX_ORDER: usize = 32;

/// Every additive operation `μ(a, b) = φ(a) + ψ(b)` on `G` (with `φ`, `ψ`
/// endomorphisms) that is a commutative monoid law with neutral element 0.
/// Tables are indexed `μ[a][b]`.
///
/// Since `μ(a, 0) = φ(a)` and `μ(0, b) = ψ(b)`, the unit law constrains the
/// two factors separately and is applied to each before forming pairs.
pub fn concrete_group_arrows(g: &FinStructure) -> Result<Vec<Vec<Vec<usize>>>> {
    if g.sig != Signature::group() {
        return Err(Error::NotAGroup("expected the signature (+, -, 0)".into()));
    }
    for axiom in &Theory::abelian_groups().sentences {
        if !eval_sentence(g, axiom)? {
            return Err(Error::NotAGroup(format!("fails `{axiom}`")));
        }
    }
    let n = g.size(0);
    if n > MAX_ORDER {
        return Err(Error::BoundsExceeded(format!("order {n} exceeds {MAX_ORDER}")));
    }
    let zero = g.constant("0");
    let add = |a: usize, b: usize| g.apply("+", &[a, b]).unwrap();
    let ends = enumerate_homomorphisms(g, g, false)?;
    let phis: Vec<&[usize]> = ends
        .iter()
        .map(|h| h.maps[0].as_slice())
        .filter(|phi| (0..n).all(|a| add(phi[a], zero) == a))
        .collect();
    let psis: Vec<&[usize]> = ends
        .iter()
        .map(|h| h.maps[0].as_slice())
        .filter(|psi| (0..n).all(|b| add(zero, psi[b]) == b))
        .collect();
    let mut out = Vec::new();
    for phi in &phis {
        for psi in &psis {
            let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| add(phi[a], psi[b])).collect()).collect();
            let commutative = (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
            let unital = (0..n).all(|a| table[a][zero] == a && table[zero][a] == a);
            if commutative && unital {
                out.push(table);
            }
        }
    }
    Ok(out)
}

/// The addition table of `G`.
pub fn addition_table(g: &FinStructure) -> Vec<Vec<usize>> {
    let n = g.size(0);
    (0..n)
        .map(|a| (0..n).map(|b| g.apply("+", &[a, b]).unwrap()).collect())
        .collect()
}
