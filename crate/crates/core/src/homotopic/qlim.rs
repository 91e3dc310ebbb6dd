use super::isograph::IsoGraph;
use crate::config::Caps;
use crate::fincat::{skeleton_data, Diagram};
use crate::{Error, Result};

/// Quasi-cones over `d`, grouped by the iso class of their apex.
///
/// A quasi-cone with apex class `K` picks for each shape object `A` a
/// morphism `ψ_A` whose domain lies in `K` and whose codomain is isomorphic
/// to `J(A)`, with `QC(ψ_A, J(s), ψ_B)` for every shape morphism `s: A → B`.
/// Only the class of the apex matters, so `qcone(x, −)` is computed once per
/// class of `dom x`.
struct QuasiCones {
    class: Vec<usize>,
    classes: Vec<usize>,
    cones: Vec<Vec<Vec<usize>>>,
}

impl QuasiCones {
    fn new(i: &IsoGraph, d: &Diagram) -> QuasiCones {
        let c = &i.host;
        let j = &d.functor;
        let shape = &j.source;
        let class = skeleton_data(c).representative;
        let mut classes: Vec<usize> = class.clone();
        classes.sort_unstable();
        classes.dedup();
        let cones = classes
            .iter()
            .map(|&k| {
                let candidates: Vec<Vec<usize>> = (0..shape.num_objects())
                    .map(|a| {
                        (0..c.num_morphisms())
                            .filter(|&p| class[c.dom(p)] == k && class[c.cod(p)] == class[j.obj(a)])
                            .collect()
                    })
                    .collect();
                let mut out = Vec::new();
                let mut legs = Vec::with_capacity(candidates.len());
                extend(i, d, &candidates, &mut legs, &mut out);
                out
            })
            .collect();
        QuasiCones { class, classes, cones }
    }
}

fn extend(i: &IsoGraph, d: &Diagram, candidates: &[Vec<usize>], legs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let k = legs.len();
    if k == candidates.len() {
        out.push(legs.clone());
        return;
    }
    let shape = &d.functor.source;
    for &p in &candidates[k] {
        legs.push(p);
        // check every shape morphism whose ends are both assigned
        let ok = (0..shape.num_morphisms()).all(|s| {
            let (a, b) = (shape.dom(s), shape.cod(s));
            a > k || b > k || i.qc(legs[a], d.functor.mor(s), legs[b])
        });
        if ok {
            extend(i, d, candidates, legs, out);
        }
        legs.pop();
    }
}

/// Evaluates `(∃x) qlim_J(x)` directly: some quasi-cone `λ` such that every
/// quasi-cone `ψ` admits a quasi-morphism `u` into the apex of `λ` with
/// `QC(u, λ_A, ψ_A)` for all `A`, and any two such `u` are `≅`.
pub fn qlim_holds(i: &IsoGraph, d: &Diagram, caps: &Caps) -> Result<bool> {
    let shape = &d.functor.source;
    if shape.num_objects() > caps.max_qlim_objects || shape.num_morphisms() > caps.max_qlim_morphisms {
        return Err(Error::BoundsExceeded(format!(
            "diagram shape with {} objects and {} morphisms exceeds {} and {}",
            shape.num_objects(),
            shape.num_morphisms(),
            caps.max_qlim_objects,
            caps.max_qlim_morphisms
        )));
    }
    if d.target() != &i.host {
        return Err(Error::InvalidInput(
            "diagram does not land in the iso-graph's category".into(),
        ));
    }
    let c = &i.host;
    let qc = QuasiCones::new(i, d);
    let class = &qc.class;
    for (li, &l) in qc.classes.iter().enumerate() {
        'lambda: for lambda in &qc.cones[li] {
            for (ki, &k) in qc.classes.iter().enumerate() {
                let quasi: Vec<usize> = (0..c.num_morphisms())
                    .filter(|&u| class[c.dom(u)] == k && class[c.cod(u)] == l)
                    .collect();
                for psi in &qc.cones[ki] {
                    let factors: Vec<usize> = quasi
                        .iter()
                        .copied()
                        .filter(|&u| lambda.iter().zip(psi).all(|(&la, &pa)| i.qc(u, la, pa)))
                        .collect();
                    let Some(&u) = factors.first() else {
                        continue 'lambda;
                    };
                    if factors.iter().any(|&v| !i.quasi_iso(u, v)) {
                        continue 'lambda;
                    }
                }
            }
            return Ok(true);
        }
    }
    Ok(false)
}
