use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::fincat::{skeleton_data, FinCategory, Functor};
use crate::label::Label;
use crate::report::Report;
use crate::{Error, Result};

/// A thin wide subcategory with an arrow `a ⇒ b` exactly when `a ≅ b`.
/// `chosen(a, b)` is that arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoGraph {
    pub host: FinCategory,
    chosen: Vec<Option<usize>>,
}

impl IsoGraph {
    /// Builds the graph from a representative per object and isos
    /// `sigma[a]: rep[a] → a`, with `sigma` the identity on representatives.
    /// The arrow `a ⇒ b` is `σ_b ∘ σ_a⁻¹`.
    pub fn from_sigmas(host: &FinCategory, rep: &[usize], sigma: &[usize]) -> IsoGraph {
        let n = host.num_objects();
        let mut chosen = vec![None; n * n];
        for a in 0..n {
            let inv = host.inverse(sigma[a]).expect("sigma is an isomorphism");
            for b in 0..n {
                if rep[a] == rep[b] {
                    chosen[a * n + b] = Some(host.compose(sigma[b], inv));
                }
            }
        }
        IsoGraph {
            host: host.clone(),
            chosen,
        }
    }

    pub fn chosen(&self, a: usize, b: usize) -> Option<usize> {
        self.chosen[a * self.host.num_objects() + b]
    }

    /// Morphisms of the iso-graph, sorted by index.
    pub fn arrows(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.chosen.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn contains(&self, f: usize) -> bool {
        self.chosen(self.host.dom(f), self.host.cod(f)) == Some(f)
    }

    pub fn arrow_names(&self) -> Vec<String> {
        self.arrows()
            .into_iter()
            .map(|f| self.host.morphisms[f].name.clone())
            .collect()
    }

    /// Checks every defining property of an iso-graph.
    pub fn validate(&self) -> Report {
        let c = &self.host;
        let n = c.num_objects();
        let mut report = Report::new();
        for a in 0..n {
            for b in 0..n {
                let name = |o: usize| c.objects[o].clone();
                match self.chosen(a, b) {
                    None if c.isomorphic(a, b) => report.push(format!(
                        "no arrow between isomorphic objects {} and {}",
                        name(a),
                        name(b)
                    )),
                    None => {}
                    Some(_) if !c.isomorphic(a, b) => report.push(format!(
                        "arrow between non-isomorphic objects {} and {}",
                        name(a),
                        name(b)
                    )),
                    Some(f) => {
                        let fname = c.morphisms[f].name.clone();
                        if c.dom(f) != a || c.cod(f) != b {
                            report.push(format!("arrow {fname} is not in Hom({}, {})", name(a), name(b)));
                        } else if !c.is_iso(f) {
                            report.push(format!("arrow {fname} is not an isomorphism"));
                        } else if a == b && !c.is_identity(f) {
                            report.push(format!("proper automorphism {fname}"));
                        }
                    }
                }
            }
        }
        if !report.is_empty() {
            return report;
        }
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    if let (Some(f), Some(g)) = (self.chosen(a, b), self.chosen(b, d)) {
                        if self.chosen(a, d) != c.comp(g, f) {
                            report.push(format!(
                                "not closed under composition at {} ⇒ {} ⇒ {}",
                                c.objects[a], c.objects[b], c.objects[d]
                            ));
                        }
                    }
                }
            }
        }
        report
    }

    /// Representative of each object's iso class (least object name) and
    /// `σ_a = rep(a) ⇒ a`.
    pub fn sigmas(&self) -> (Vec<usize>, Vec<usize>) {
        let rep = skeleton_data(&self.host).representative;
        let sigma = (0..rep.len()).map(|a| self.chosen(rep[a], a).unwrap()).collect();
        (rep, sigma)
    }

    /// The functor onto the skeleton sending `f: a → b` to
    /// `σ_b⁻¹ ∘ f ∘ σ_a`; it maps every arrow of the iso-graph to an
    /// identity.
    pub fn collapse(&self) -> Functor {
        let c = &self.host;
        let sk = skeleton_data(c);
        let (_, sigma) = self.sigmas();
        let reps: Vec<usize> = sk.inclusion.objects.clone();
        let kept = &sk.inclusion.morphisms;
        let morphisms = (0..c.num_morphisms())
            .map(|f| {
                let (a, b) = (c.dom(f), c.cod(f));
                let g = c.compose(c.inverse(sigma[b]).unwrap(), c.compose(f, sigma[a]));
                kept.iter().position(|&k| k == g).unwrap()
            })
            .collect();
        let objects = (0..c.num_objects())
            .map(|a| reps.iter().position(|&r| r == sk.representative[a]).unwrap())
            .collect();
        Functor {
            source: c.clone(),
            target: sk.category,
            objects,
            morphisms,
        }
    }

    pub fn to_raw(&self) -> RawIsoGraph {
        let c = &self.host;
        let n = c.num_objects();
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(f) = self.chosen(a, b) {
                    if a != b {
                        arrows.push([
                            Label(c.objects[a].clone()),
                            Label(c.objects[b].clone()),
                            Label(c.morphisms[f].name.clone()),
                        ]);
                    }
                }
            }
        }
        RawIsoGraph { arrows }
    }

    /// Reads the non-identity arrows of an iso-graph of `host` and validates
    /// the result.
    pub fn from_raw(host: &FinCategory, raw: &RawIsoGraph) -> Result<IsoGraph> {
        let n = host.num_objects();
        let mut chosen = vec![None; n * n];
        for a in 0..n {
            chosen[a * n + a] = Some(host.id(a));
        }
        for [a, b, f] in &raw.arrows {
            let lookup = |l: &Label| {
                host.object_index(l.as_str())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown object `{l}`")))
            };
            let (a, b) = (lookup(a)?, lookup(b)?);
            let f = host
                .morphism_index(f.as_str())
                .ok_or_else(|| Error::InvalidInput(format!("unknown morphism `{f}`")))?;
            chosen[a * n + b] = Some(f);
        }
        let i = IsoGraph {
            host: host.clone(),
            chosen,
        };
        let report = i.validate();
        if report.is_empty() {
            Ok(i)
        } else {
            Err(Error::InvalidInput(format!("not an iso-graph:\n{report}")))
        }
    }
}

/// Serialized iso-graph: its non-identity arrows as `[source, target, morphism]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawIsoGraph {
    pub arrows: Vec<[Label; 3]>,
}

/// The iso-graph whose arrows out of each representative are the least
/// isos by name.
pub fn build_isograph(c: &FinCategory) -> IsoGraph {
    let sk = skeleton_data(c);
    let i = IsoGraph::from_sigmas(c, &sk.representative, &sk.sigma);
    debug_assert!(i.validate().is_empty());
    i
}

/// Number of iso-graphs of `c`: one per choice of `σ_a` for every
/// non-representative object.
pub fn count_isographs(c: &FinCategory) -> u128 {
    let rep = skeleton_data(c).representative;
    (0..c.num_objects())
        .filter(|&a| rep[a] != a)
        .map(|a| c.isos(rep[a], a).len() as u128)
        .product()
}

/// Every iso-graph of `c`, failing when there are more than
/// `caps.max_isographs`.
pub fn enumerate_isographs(c: &FinCategory, caps: &Caps) -> Result<Vec<IsoGraph>> {
    let count = count_isographs(c);
    if count > caps.max_isographs as u128 {
        return Err(Error::BoundsExceeded(format!(
            "{count} iso-graphs exceed the cap of {}",
            caps.max_isographs
        )));
    }
    let rep = skeleton_data(c).representative;
    let choices: Vec<Vec<usize>> = (0..c.num_objects())
        .map(|a| if rep[a] == a { vec![c.id(a)] } else { c.isos(rep[a], a) })
        .collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut pick = vec![0usize; choices.len()];
    loop {
        let sigma: Vec<usize> = pick.iter().zip(&choices).map(|(&k, ch)| ch[k]).collect();
        out.push(IsoGraph::from_sigmas(c, &rep, &sigma));
        let mut pos = 0;
        loop {
            if pos == pick.len() {
                return Ok(out);
            }
            pick[pos] += 1;
            if pick[pos] < choices[pos].len() {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
    }
}

/// An iso-graph of `c` containing all of `d`, if one exists.
///
/// Each connected component of `d` (as a graph on objects) fixes the arrows
/// between its objects relative to one root; the component is consistent
/// when every word in `d` around a cycle composes to an identity. The
/// components are then tied to the representatives by least isos.
pub fn extend_to_isograph(c: &FinCategory, d: &[usize], caps: &Caps) -> Result<Option<IsoGraph>> {
    if d.len() > caps.max_isograph_seed {
        return Err(Error::BoundsExceeded(format!(
            "{} seed morphisms exceed the cap of {}",
            d.len(),
            caps.max_isograph_seed
        )));
    }
    if d.iter().any(|&f| !c.is_iso(f)) {
        return Ok(None);
    }
    let n = c.num_objects();
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
    for &f in d {
        adj[c.dom(f)].push((c.cod(f), f, true));
        adj[c.cod(f)].push((c.dom(f), f, false));
    }
    // tau[a] = (root, iso root → a) within a's component
    let mut tau: Vec<Option<(usize, usize)>> = vec![None; n];
    for start in 0..n {
        if tau[start].is_some() {
            continue;
        }
        tau[start] = Some((start, c.id(start)));
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            let (root, ta) = tau[a].unwrap();
            for &(b, f, forward) in &adj[a] {
                let step = if forward { f } else { c.inverse(f).unwrap() };
                let tb = c.compose(step, ta);
                match tau[b] {
                    Some((_, existing)) if existing != tb => return Ok(None),
                    Some(_) => {}
                    None => {
                        tau[b] = Some((root, tb));
                        queue.push_back(b);
                    }
                }
            }
        }
    }
    let sk = skeleton_data(c);
    let rep = sk.representative;
    let sigma: Vec<usize> = (0..n)
        .map(|a| {
            let r = rep[a];
            let (root, ta) = tau[a].unwrap();
            let (rroot, tr) = tau[r].unwrap();
            if rroot == root {
                c.compose(ta, c.inverse(tr).unwrap())
            } else {
                // tie the component root to r by the least iso r → root
                let link = c
                    .isos(r, root)
                    .into_iter()
                    .min_by(|&x, &y| c.morphisms[x].name.cmp(&c.morphisms[y].name))
                    .unwrap();
                c.compose(ta, link)
            }
        })
        .collect();
    let i = IsoGraph::from_sigmas(c, &rep, &sigma);
    debug_assert!(i.validate().is_empty());
    debug_assert!(d.iter().all(|&f| i.contains(f)));
    Ok(Some(i))
}

/// Whether some iso-graph of `c` contains every morphism of `d`.
pub fn extends_to_isograph(c: &FinCategory, d: &[usize], caps: &Caps) -> Result<bool> {
    Ok(extend_to_isograph(c, d, caps)?.is_some())
}
