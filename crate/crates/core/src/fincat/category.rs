use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::label::Label;
use crate::logic::{Signature, COMP, DOM, ID, RNG};
use crate::report::Report;
use crate::structures::FinStructure;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category with a dense composition table. Objects and morphisms
/// are addressed by index; `comp(g, f)` is `g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub ids: Vec<usize>,
    table: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: Label,
    pub dom: Label,
    pub cod: Label,
}

/// The JSON form of a category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<Label>,
    pub morphisms: Vec<RawMorphism>,
    pub comp: Vec<[Label; 3]>,
    pub ids: BTreeMap<Label, Label>,
}

impl FinCategory {
    /// Assembles a category from index data without checking the axioms.
    pub(crate) fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        ids: Vec<usize>,
        mut comp: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Self {
        let n = morphisms.len();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if morphisms[f].cod == morphisms[g].dom {
                    table[g * n + f] = comp(g, f);
                }
            }
        }
        let no = objects.len();
        let mut homs = vec![Vec::new(); no * no];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.dom * no + m.cod].push(i);
        }
        FinCategory {
            objects,
            morphisms,
            ids,
            table,
            homs,
        }
    }

    /// Builds a category whose morphisms are concrete values (functions,
    /// homomorphisms, ...) composed by `compose(g, f)`. Fails if a composite
    /// is not among the listed morphisms.
    pub fn concrete<K, F>(objects: Vec<String>, morphisms: Vec<(String, usize, usize, K)>, compose: F) -> Result<Self>
    where
        K: Eq + Hash + Clone,
        F: Fn(&K, &K) -> K,
    {
        let mut index: HashMap<(usize, usize, K), usize> = HashMap::new();
        for (i, (_, d, c, k)) in morphisms.iter().enumerate() {
            index.insert((*d, *c, k.clone()), i);
        }
        let mut ids = vec![usize::MAX; objects.len()];
        for (o, id) in ids.iter_mut().enumerate() {
            *id = (0..morphisms.len())
                .find(|&i| {
                    let (_, d, c, k) = &morphisms[i];
                    *d == o
                        && *c == o
                        && morphisms.iter().filter(|m| m.2 == o).all(|m| compose(k, &m.3) == m.3)
                        && morphisms.iter().filter(|m| m.1 == o).all(|m| compose(&m.3, k) == m.3)
                })
                .ok_or_else(|| Error::InvalidInput(format!("object `{}` has no identity", objects[o])))?;
        }
        let ms: Vec<Morphism> = morphisms
            .iter()
            .map(|(n, d, c, _)| Morphism {
                name: n.clone(),
                dom: *d,
                cod: *c,
            })
            .collect();
        let mut missing = None;
        let cat = FinCategory::from_parts(objects, ms, ids, |g, f| {
            let (_, df, _, kf) = &morphisms[f];
            let (_, _, cg, kg) = &morphisms[g];
            let k = compose(kg, kf);
            let r = index.get(&(*df, *cg, k)).copied();
            if r.is_none() {
                missing = Some((g, f));
            }
            r
        });
        if let Some((g, f)) = missing {
            return Err(Error::InvalidInput(format!(
                "composite of `{}` and `{}` is not a listed morphism",
                morphisms[g].0, morphisms[f].0
            )));
        }
        Ok(cat)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn id(&self, a: usize) -> usize {
        self.ids[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.ids[self.dom(f)] == f
    }

    /// `g ∘ f`, defined when `cod(f) = dom(g)`.
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.morphisms.len() + f]
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.comp(g, f).expect("composable pair")
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.comp(g, f) == Some(self.ids[a]) && self.comp(f, g) == Some(self.ids[b]))
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn isos(&self, a: usize, b: usize) -> Vec<usize> {
        self.hom(a, b).iter().copied().filter(|&f| self.is_iso(f)).collect()
    }

    pub fn isomorphic(&self, a: usize, b: usize) -> bool {
        self.hom(a, b).iter().any(|&f| self.is_iso(f))
    }

    /// The dual category: same names, arrows reversed.
    pub fn opposite(&self) -> FinCategory {
        let ms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: m.name.clone(),
                dom: m.cod,
                cod: m.dom,
            })
            .collect();
        FinCategory::from_parts(self.objects.clone(), ms, self.ids.clone(), |g, f| self.comp(f, g))
    }

    /// Full subcategory on the given objects (in the given order).
    pub fn full_subcategory(&self, objects: &[usize]) -> (FinCategory, Vec<usize>) {
        let pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let kept: Vec<usize> = (0..self.morphisms.len())
            .filter(|&f| pos.contains_key(&self.dom(f)) && pos.contains_key(&self.cod(f)))
            .collect();
        let new_index: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let ms = kept
            .iter()
            .map(|&f| Morphism {
                name: self.morphisms[f].name.clone(),
                dom: pos[&self.dom(f)],
                cod: pos[&self.cod(f)],
            })
            .collect();
        let ids = objects.iter().map(|&o| new_index[&self.ids[o]]).collect();
        let names = objects.iter().map(|&o| self.objects[o].clone()).collect();
        let sub = FinCategory::from_parts(names, ms, ids, |g, f| {
            self.comp(kept[g], kept[f]).map(|h| new_index[&h])
        });
        (sub, kept)
    }

    pub fn to_raw(&self) -> RawCategory {
        let name = |f: usize| Label(self.morphisms[f].name.clone());
        let mut comp = Vec::new();
        for g in 0..self.morphisms.len() {
            for f in 0..self.morphisms.len() {
                if let Some(h) = self.comp(g, f) {
                    comp.push([name(g), name(f), name(h)]);
                }
            }
        }
        RawCategory {
            objects: self.objects.iter().map(|o| Label(o.clone())).collect(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| RawMorphism {
                    id: Label(m.name.clone()),
                    dom: Label(self.objects[m.dom].clone()),
                    cod: Label(self.objects[m.cod].clone()),
                })
                .collect(),
            comp,
            ids: self
                .ids
                .iter()
                .enumerate()
                .map(|(o, &f)| (Label(self.objects[o].clone()), name(f)))
                .collect(),
        }
    }

    /// Checks the axioms and builds the category.
    pub fn from_raw(raw: &RawCategory) -> Result<Self> {
        let report = validate_category(raw);
        if !report.is_valid() {
            return Err(Error::AxiomViolation(report));
        }
        Ok(Self::from_raw_unchecked(raw).expect("validated"))
    }

    fn from_raw_unchecked(raw: &RawCategory) -> Option<Self> {
        let objects: Vec<String> = raw.objects.iter().map(|l| l.0.clone()).collect();
        let oidx = |l: &Label| objects.iter().position(|o| *o == l.0);
        let ms: Vec<Morphism> = raw
            .morphisms
            .iter()
            .map(|m| {
                Some(Morphism {
                    name: m.id.0.clone(),
                    dom: oidx(&m.dom)?,
                    cod: oidx(&m.cod)?,
                })
            })
            .collect::<Option<_>>()?;
        let midx = |l: &Label| ms.iter().position(|m| m.name == l.0);
        let mut comp = HashMap::new();
        for [g, f, h] in &raw.comp {
            comp.insert((midx(g)?, midx(f)?), midx(h)?);
        }
        let ids = objects
            .iter()
            .map(|o| midx(raw.ids.get(&Label(o.clone()))?))
            .collect::<Option<Vec<_>>>()?;
        Some(FinCategory::from_parts(objects.clone(), ms, ids, |g, f| {
            comp.get(&(g, f)).copied()
        }))
    }

    /// The category as an `L_cat` structure: sort `o` holds the objects and
    /// sort `m` the morphisms.
    pub fn to_structure(&self) -> FinStructure {
        let (no, nm) = (self.objects.len(), self.morphisms.len());
        let mut s = FinStructure::blank(&Signature::l_cat(), &[no, nm]);
        s.names[0] = self.objects.iter().map(|o| Label(o.clone())).collect();
        s.names[1] = self.morphisms.iter().map(|m| Label(m.name.clone())).collect();
        for f in 0..nm {
            s.funcs.get_mut(DOM).unwrap().set(&[f], Some(self.dom(f)));
            s.funcs.get_mut(RNG).unwrap().set(&[f], Some(self.cod(f)));
            for g in 0..nm {
                s.funcs.get_mut(COMP).unwrap().set(&[g, f], self.comp(g, f));
            }
        }
        for o in 0..no {
            s.funcs.get_mut(ID).unwrap().set(&[o], Some(self.ids[o]));
        }
        s
    }

    /// Total number of morphisms in all hom-sets `Hom(a, b)`.
    pub fn hom_count(&self, a: usize, b: usize) -> usize {
        self.hom(a, b).len()
    }
}

/// Builds the category described by an `L_cat` structure satisfying the
/// category axioms.
pub fn category_from_structure(s: &FinStructure) -> Result<FinCategory> {
    if s.sig != Signature::l_cat() {
        return Err(Error::SignatureMismatch("expected the language of categories".into()));
    }
    let obj = |e: usize| s.names[0][e].clone();
    let mor = |e: usize| s.names[1][e].clone();
    let mut raw = RawCategory {
        objects: s.names[0].clone(),
        morphisms: Vec::new(),
        comp: Vec::new(),
        ids: BTreeMap::new(),
    };
    let nm = s.size(1);
    for f in 0..nm {
        raw.morphisms.push(RawMorphism {
            id: mor(f),
            dom: obj(s.apply(DOM, &[f]).unwrap()),
            cod: obj(s.apply(RNG, &[f]).unwrap()),
        });
        for g in 0..nm {
            if let Some(h) = s.apply(COMP, &[g, f]) {
                raw.comp.push([mor(g), mor(f), mor(h)]);
            }
        }
    }
    for o in 0..s.size(0) {
        raw.ids.insert(obj(o), mor(s.apply(ID, &[o]).unwrap()));
    }
    FinCategory::from_raw(&raw)
}

/// Checks the three category axioms: (1) composites exist exactly on
/// composable pairs with the right domain and codomain, (2) associativity,
/// (3) identities. Later axioms skip composites already reported under (1).
pub fn validate_category(raw: &RawCategory) -> Report {
    let mut report = Report::new();
    let mut seen = std::collections::BTreeSet::new();
    for o in &raw.objects {
        if !seen.insert(o) {
            report.push(format!("object `{o}` listed twice"));
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for m in &raw.morphisms {
        if !seen.insert(&m.id) {
            report.push(format!("morphism `{}` listed twice", m.id));
        }
        for end in [&m.dom, &m.cod] {
            if !raw.objects.contains(end) {
                report.push(format!("morphism `{}` mentions unknown object `{end}`", m.id));
            }
        }
    }
    let known = |l: &Label| raw.morphisms.iter().any(|m| m.id == *l);
    let mut table: HashMap<(&Label, &Label), &Label> = HashMap::new();
    for [g, f, h] in &raw.comp {
        for x in [g, f, h] {
            if !known(x) {
                report.push(format!("composition mentions unknown morphism `{x}`"));
            }
        }
        if let Some(prev) = table.insert((g, f), h) {
            if prev != h {
                report.push(format!("`{g} o {f}` is given two values"));
            }
        }
    }
    for o in raw.ids.keys() {
        if !raw.objects.contains(o) {
            report.push(format!("identity given for unknown object `{o}`"));
        }
    }
    if !report.is_valid() {
        return report;
    }

    let by_name: HashMap<&Label, &RawMorphism> = raw.morphisms.iter().map(|m| (&m.id, m)).collect();
    let comp = |g: &Label, f: &Label| table.get(&(g, f)).copied();
    // Axiom 1.
    let mut well_typed: HashMap<(&Label, &Label), &Label> = HashMap::new();
    for f in &raw.morphisms {
        for g in &raw.morphisms {
            let composable = f.cod == g.dom;
            match (composable, comp(&g.id, &f.id)) {
                (true, None) => report.push_axiom(
                    1,
                    format!(
                        "`{} o {}` is undefined although `{}` ends where `{}` starts",
                        g.id, f.id, f.id, g.id
                    ),
                    vec![g.id.0.clone(), f.id.0.clone()],
                ),
                (false, Some(h)) => report.push_axiom(
                    1,
                    format!("`{} o {}` = `{h}` is defined on a non-composable pair", g.id, f.id),
                    vec![g.id.0.clone(), f.id.0.clone()],
                ),
                (true, Some(h)) => {
                    let hm = by_name[h];
                    if hm.dom != f.dom || hm.cod != g.cod {
                        report.push_axiom(
                            1,
                            format!(
                                "`{} o {}` = `{h}` has type {} -> {}, expected {} -> {}",
                                g.id, f.id, hm.dom, hm.cod, f.dom, g.cod
                            ),
                            vec![g.id.0.clone(), f.id.0.clone(), h.0.clone()],
                        );
                    } else {
                        well_typed.insert((&g.id, &f.id), h);
                    }
                }
                (false, None) => {}
            }
        }
    }
    let wt = |g: &Label, f: &Label| well_typed.get(&(g, f)).copied();
    // Axiom 2.
    for f in &raw.morphisms {
        for g in raw.morphisms.iter().filter(|g| g.dom == f.cod) {
            let Some(gf) = wt(&g.id, &f.id) else { continue };
            for h in raw.morphisms.iter().filter(|h| h.dom == g.cod) {
                let Some(hg) = wt(&h.id, &g.id) else { continue };
                let (Some(l), Some(r)) = (wt(&h.id, gf), wt(hg, &f.id)) else {
                    continue;
                };
                if l != r {
                    report.push_axiom(
                        2,
                        format!(
                            "`{h} o ({g} o {f})` = `{l}` but `({h} o {g}) o {f}` = `{r}`",
                            h = h.id,
                            g = g.id,
                            f = f.id
                        ),
                        vec![h.id.0.clone(), g.id.0.clone(), f.id.0.clone()],
                    );
                }
            }
        }
    }
    // Axiom 3.
    for o in &raw.objects {
        let Some(i) = raw.ids.get(o) else {
            report.push_axiom(3, format!("object `{o}` has no identity"), vec![o.0.clone()]);
            continue;
        };
        let Some(im) = by_name.get(i) else {
            report.push_axiom(3, format!("identity of `{o}` is not a morphism"), vec![o.0.clone()]);
            continue;
        };
        if im.dom != *o || im.cod != *o {
            report.push_axiom(
                3,
                format!("identity `{i}` of `{o}` has type {} -> {}", im.dom, im.cod),
                vec![i.0.clone()],
            );
            continue;
        }
        for f in &raw.morphisms {
            if f.dom == *o {
                if let Some(h) = wt(&f.id, i) {
                    if *h != f.id {
                        report.push_axiom(
                            3,
                            format!("`{} o {i}` = `{h}`", f.id),
                            vec![f.id.0.clone(), i.0.clone()],
                        );
                    }
                }
            }
            if f.cod == *o {
                if let Some(h) = wt(i, &f.id) {
                    if *h != f.id {
                        report.push_axiom(
                            3,
                            format!("`{i} o {}` = `{h}`", f.id),
                            vec![i.0.clone(), f.id.0.clone()],
                        );
                    }
                }
            }
        }
    }
    report
}

impl Serialize for FinCategory {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinCategory {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCategory::deserialize(d)?;
        FinCategory::from_raw(&raw).map_err(serde::de::Error::custom)
    }
}
