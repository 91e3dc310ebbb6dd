use std::collections::HashMap;

use super::filter::FilterOnX;
use crate::label::Label;
use crate::logic::{eval_sentence, Formula};
use crate::report::Report;
use crate::structures::{tuples, FinStructure, Homomorphism};
use crate::{Error, Result};

/// Entry of a family at a factor whose carrier is empty.
pub const ABSENT: usize = usize::MAX;

/// A reduced product together with the representative family behind each
/// element.
#[derive(Clone, Debug)]
pub struct ReducedProduct {
    pub structure: FinStructure,
    /// `families[sort][element]` is the least family in the class; a factor
    /// with an empty carrier outside the kernel holds [`ABSENT`].
    pub families: Vec<Vec<Vec<usize>>>,
    kernel: Vec<usize>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl ReducedProduct {
    /// The element represented by a family.
    pub fn class_of(&self, sort: usize, family: &[usize]) -> usize {
        let key: Vec<usize> = self.kernel.iter().map(|&x| family[x]).collect();
        self.index[sort][&key]
    }
}

/// `Π M_x / F`. Two families are identified when they agree on a member of
/// `F`; relations hold when they hold on a member, and a function is defined
/// when it is defined on a member.
pub fn reduced_product(ms: &[FinStructure], f: &FilterOnX) -> Result<ReducedProduct> {
    if ms.len() != f.size() {
        return Err(Error::InvalidInput(format!(
            "{} factors for an index set of size {}",
            ms.len(),
            f.size()
        )));
    }
    let Some(first) = ms.first() else {
        return Err(Error::ImproperFilter("the index set is empty".into()));
    };
    let sig = &first.sig;
    if ms.iter().any(|m| m.sig != *sig) {
        return Err(Error::SignatureMismatch("factors must share the signature".into()));
    }
    let n = ms.len();
    let nsorts = sig.sorts.len();
    // Every filter on a finite set is generated by its kernel, so a class is
    // determined by the entries at the kernel points.
    let kernel: Vec<usize> = (0..n).filter(|&x| f.kernel() & (1 << x) != 0).collect();
    let mut families = Vec::with_capacity(nsorts);
    let mut index = Vec::with_capacity(nsorts);
    for s in 0..nsorts {
        let mut fams = Vec::new();
        let mut idx = HashMap::new();
        if kernel.iter().all(|&x| ms[x].size(s) > 0) {
            let dims: Vec<usize> = kernel.iter().map(|&x| ms[x].size(s)).collect();
            for key in tuples(&dims) {
                let mut fam: Vec<usize> = ms.iter().map(|m| if m.size(s) > 0 { 0 } else { ABSENT }).collect();
                for (k, &x) in kernel.iter().enumerate() {
                    fam[x] = key[k];
                }
                idx.insert(key, fams.len());
                fams.push(fam);
            }
        }
        families.push(fams);
        index.push(idx);
    }
    let sizes: Vec<usize> = families.iter().map(Vec::len).collect();
    let mut out = FinStructure::blank(sig, &sizes);
    for s in 0..nsorts {
        out.names[s] = families[s]
            .iter()
            .map(|fam| {
                let parts: Vec<String> = fam
                    .iter()
                    .enumerate()
                    .map(|(x, &e)| {
                        if e == ABSENT {
                            "_".to_string()
                        } else {
                            ms[x].label(s, e).0.clone()
                        }
                    })
                    .collect();
                Label(format!("({})", parts.join(",")))
            })
            .collect();
    }
    let mut rp = ReducedProduct {
        structure: FinStructure::blank(sig, &vec![0; nsorts]),
        families,
        kernel,
        index,
    };
    let set_of = |pred: &dyn Fn(usize) -> bool| -> u32 { (0..n).filter(|&x| pred(x)).fold(0, |acc, x| acc | (1 << x)) };
    for k in sig.constants.keys() {
        let s = sig.constant_sort(k).unwrap();
        let fam: Vec<usize> = ms.iter().map(|m| m.constant(k)).collect();
        out.consts.insert(k.clone(), rp.class_of(s, &fam));
    }
    for name in sig.functions.keys() {
        let (args, res) = sig.function_profile(name).unwrap();
        let dims: Vec<usize> = args.iter().map(|&s| sizes[s]).collect();
        for t in tuples(&dims) {
            let arg_fams: Vec<&Vec<usize>> = args.iter().zip(&t).map(|(&s, &e)| &rp.families[s][e]).collect();
            let at = |x: usize| -> Vec<usize> { arg_fams.iter().map(|fam| fam[x]).collect() };
            let values: Vec<Option<usize>> = (0..n)
                .map(|x| {
                    let a = at(x);
                    if a.contains(&ABSENT) {
                        None
                    } else {
                        ms[x].apply(name, &a)
                    }
                })
                .collect();
            let defined = set_of(&|x| values[x].is_some());
            let v = if f.contains(defined) {
                let fam: Vec<usize> = values
                    .iter()
                    .enumerate()
                    .map(|(x, v)| v.unwrap_or(if ms[x].size(res) > 0 { 0 } else { ABSENT }))
                    .collect();
                Some(rp.class_of(res, &fam))
            } else {
                None
            };
            out.funcs.get_mut(name).unwrap().set(&t, v);
        }
    }
    for name in sig.relations.keys() {
        let args = sig.relation_profile(name).unwrap();
        let dims: Vec<usize> = args.iter().map(|&s| sizes[s]).collect();
        for t in tuples(&dims) {
            let arg_fams: Vec<&Vec<usize>> = args.iter().zip(&t).map(|(&s, &e)| &rp.families[s][e]).collect();
            let holds = set_of(&|x| {
                let a: Vec<usize> = arg_fams.iter().map(|fam| fam[x]).collect();
                !a.contains(&ABSENT) && ms[x].holds(name, &a)
            });
            out.rels.get_mut(name).unwrap().set(&t, f.contains(holds));
        }
    }
    rp.structure = out;
    Ok(rp)
}

/// Compares truth of `sigma` in the ultraproduct with membership of the
/// set of factors satisfying it.
pub fn los_verify(ms: &[FinStructure], u: &FilterOnX, sigma: &Formula, depth_cap: usize) -> Result<Report> {
    if !u.ultra {
        return Err(Error::ImproperFilter("an ultrafilter is required".into()));
    }
    if sigma.depth() > depth_cap {
        return Err(Error::BoundsExceeded(format!(
            "sentence depth {} exceeds {depth_cap}",
            sigma.depth()
        )));
    }
    let rp = reduced_product(ms, u)?;
    los_verify_product(ms, u, &rp.structure, sigma)
}

/// The same check against an already computed ultraproduct.
pub fn los_verify_product(
    ms: &[FinStructure],
    u: &FilterOnX,
    product: &FinStructure,
    sigma: &Formula,
) -> Result<Report> {
    let mut report = Report::new();
    let mut set = 0u32;
    for (x, m) in ms.iter().enumerate() {
        if eval_sentence(m, sigma)? {
            set |= 1 << x;
        }
    }
    let lhs = eval_sentence(product, sigma)?;
    let rhs = u.contains(set);
    if lhs != rhs {
        report.push(format!(
            "`{sigma}` is {} in the ultraproduct but holds on {set:#b}, which is {}in the ultrafilter",
            if lhs { "true" } else { "false" },
            if rhs { "" } else { "not " }
        ));
    }
    Ok(report)
}

/// Sends each element to the class of its constant family.
pub fn diagonal_embedding(m: &FinStructure, u: &FilterOnX) -> Result<(ReducedProduct, Homomorphism)> {
    let ms = vec![m.clone(); u.size()];
    let rp = reduced_product(&ms, u)?;
    let maps = (0..m.sig.sorts.len())
        .map(|s| (0..m.size(s)).map(|e| rp.class_of(s, &vec![e; u.size()])).collect())
        .collect();
    Ok((rp, Homomorphism { maps }))
}

/// The map induced by a family of homomorphisms `h_x: A_x → B_x`.
pub fn ultraproduct_hom(a: &ReducedProduct, b: &ReducedProduct, hs: &[Homomorphism]) -> Homomorphism {
    let maps = (0..a.families.len())
        .map(|s| {
            a.families[s]
                .iter()
                .map(|fam| {
                    let image: Vec<usize> = fam
                        .iter()
                        .enumerate()
                        .map(|(x, &e)| if e == ABSENT { e } else { hs[x].maps[s][e] })
                        .collect();
                    b.class_of(s, &image)
                })
                .collect()
        })
        .collect();
    Homomorphism { maps }
}

/// For a principal ultrafilter at `x`, the projection onto the factor at
/// `x`; it is an isomorphism.
pub fn principal_collapse(rp: &ReducedProduct, u: &FilterOnX) -> Result<Homomorphism> {
    let x = u
        .principal_point()
        .ok_or_else(|| Error::ImproperFilter("the filter is not principal at a point".into()))?;
    Ok(Homomorphism {
        maps: rp
            .families
            .iter()
            .map(|fams| fams.iter().map(|fam| fam[x]).collect())
            .collect(),
    })
}
