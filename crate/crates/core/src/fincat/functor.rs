use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::label::Label;
use crate::structures::{search, Homomorphism, SearchMode};
use crate::{Error, Result};

use super::category::{FinCategory, RawCategory};

/// A functor between finite categories, stored as index maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub source: FinCategory,
    pub target: FinCategory,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn new(source: FinCategory, target: FinCategory, objects: Vec<usize>, morphisms: Vec<usize>) -> Result<Self> {
        let f = Functor {
            source,
            target,
            objects,
            morphisms,
        };
        if !f.is_valid() {
            return Err(Error::InvalidInput("the maps do not form a functor".into()));
        }
        Ok(f)
    }

    pub fn identity(c: &FinCategory) -> Self {
        Functor {
            source: c.clone(),
            target: c.clone(),
            objects: (0..c.num_objects()).collect(),
            morphisms: (0..c.num_morphisms()).collect(),
        }
    }

    pub fn obj(&self, a: usize) -> usize {
        self.objects[a]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    /// Preservation of domains, codomains, identities and composition.
    pub fn is_valid(&self) -> bool {
        let (c, d) = (&self.source, &self.target);
        if self.objects.len() != c.num_objects()
            || self.morphisms.len() != c.num_morphisms()
            || self.objects.iter().any(|&o| o >= d.num_objects())
            || self.morphisms.iter().any(|&m| m >= d.num_morphisms())
        {
            return false;
        }
        (0..c.num_morphisms()).all(|f| {
            let ff = self.mor(f);
            d.dom(ff) == self.obj(c.dom(f)) && d.cod(ff) == self.obj(c.cod(f))
        }) && (0..c.num_objects()).all(|a| self.mor(c.id(a)) == d.id(self.obj(a)))
            && (0..c.num_morphisms()).all(|g| {
                (0..c.num_morphisms()).all(|f| match c.comp(g, f) {
                    Some(h) => d.comp(self.mor(g), self.mor(f)) == Some(self.mor(h)),
                    None => true,
                })
            })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&o| other.obj(o)).collect(),
            morphisms: self.morphisms.iter().map(|&m| other.mor(m)).collect(),
        }
    }

    pub fn is_faithful(&self) -> bool {
        let c = &self.source;
        (0..c.num_objects()).all(|a| {
            (0..c.num_objects()).all(|b| {
                let mut seen: Vec<usize> = c.hom(a, b).iter().map(|&f| self.mor(f)).collect();
                seen.sort_unstable();
                seen.windows(2).all(|w| w[0] != w[1])
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let c = &self.source;
        (0..c.num_objects()).all(|a| {
            (0..c.num_objects()).all(|b| {
                let hit: Vec<usize> = c.hom(a, b).iter().map(|&f| self.mor(f)).collect();
                self.target
                    .hom(self.obj(a), self.obj(b))
                    .iter()
                    .all(|g| hit.contains(g))
            })
        })
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut o = self.objects.clone();
        o.sort_unstable();
        o.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        (0..self.target.num_objects()).all(|b| self.objects.contains(&b))
    }

    pub fn is_essentially_surjective(&self) -> bool {
        (0..self.target.num_objects()).all(|b| self.objects.iter().any(|&a| self.target.isomorphic(a, b)))
    }

    pub fn to_raw(&self) -> RawFunctor {
        RawFunctor {
            objects: (0..self.source.num_objects())
                .map(|a| {
                    (
                        Label(self.source.objects[a].clone()),
                        Label(self.target.objects[self.obj(a)].clone()),
                    )
                })
                .collect(),
            morphisms: (0..self.source.num_morphisms())
                .map(|f| {
                    (
                        Label(self.source.morphisms[f].name.clone()),
                        Label(self.target.morphisms[self.mor(f)].name.clone()),
                    )
                })
                .collect(),
        }
    }

    pub fn from_raw(source: &FinCategory, target: &FinCategory, raw: &RawFunctor) -> Result<Self> {
        let objects = (0..source.num_objects())
            .map(|a| {
                let img = raw
                    .objects
                    .get(&Label(source.objects[a].clone()))
                    .ok_or_else(|| Error::InvalidInput(format!("object `{}` is not mapped", source.objects[a])))?;
                target
                    .object_index(&img.0)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown target object `{img}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let morphisms = (0..source.num_morphisms())
            .map(|f| {
                let name = &source.morphisms[f].name;
                match raw.morphisms.get(&Label(name.clone())) {
                    Some(img) => target
                        .morphism_index(&img.0)
                        .ok_or_else(|| Error::InvalidInput(format!("unknown target morphism `{img}`"))),
                    None if source.is_identity(f) => Ok(target.id(objects[source.dom(f)])),
                    None => Err(Error::InvalidInput(format!("morphism `{name}` is not mapped"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Functor::new(source.clone(), target.clone(), objects, morphisms)
    }
}

/// Object and morphism maps by name. Identities may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunctor {
    pub objects: BTreeMap<Label, Label>,
    #[serde(default)]
    pub morphisms: BTreeMap<Label, Label>,
}

/// A diagram `J: shape → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub shape: FinCategory,
    pub functor: Functor,
}

impl Diagram {
    pub fn new(functor: Functor) -> Self {
        Diagram {
            shape: functor.source.clone(),
            functor,
        }
    }

    pub fn target(&self) -> &FinCategory {
        &self.functor.target
    }

    /// The same diagram read in the opposite categories.
    pub fn opposite(&self) -> Diagram {
        let f = &self.functor;
        Diagram::new(Functor {
            source: f.source.opposite(),
            target: f.target.opposite(),
            objects: f.objects.clone(),
            morphisms: f.morphisms.clone(),
        })
    }

    pub fn from_raw(c: &FinCategory, raw: &RawDiagram) -> Result<Self> {
        let shape = FinCategory::from_raw(&raw.shape)?;
        let functor = Functor::from_raw(
            &shape,
            c,
            &RawFunctor {
                objects: raw.objects.clone(),
                morphisms: raw.morphisms.clone(),
            },
        )?;
        Ok(Diagram::new(functor))
    }

    pub fn to_raw(&self) -> RawDiagram {
        let f = self.functor.to_raw();
        RawDiagram {
            shape: self.shape.to_raw(),
            objects: f.objects,
            morphisms: f.morphisms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagram {
    pub shape: RawCategory,
    pub objects: BTreeMap<Label, Label>,
    #[serde(default)]
    pub morphisms: BTreeMap<Label, Label>,
}

fn from_hom(source: &FinCategory, target: &FinCategory, h: &Homomorphism) -> Functor {
    Functor {
        source: source.clone(),
        target: target.clone(),
        objects: h.maps[0].clone(),
        morphisms: h.maps[1].clone(),
    }
}

/// All functors `source → target`, found as homomorphisms of the `L_cat`
/// structures.
pub fn enumerate_functors(source: &FinCategory, target: &FinCategory) -> Vec<Functor> {
    let (a, b) = (source.to_structure(), target.to_structure());
    let mut out = Vec::new();
    search(&a, &b, SearchMode::default(), |h| {
        out.push(from_hom(source, target, h));
        ControlFlow::Continue(())
    });
    out
}

/// An isomorphism of categories, if one exists.
pub fn find_isomorphism(c: &FinCategory, d: &FinCategory) -> Option<Functor> {
    let (a, b) = (c.to_structure(), d.to_structure());
    crate::structures::are_isomorphic(&a, &b)
        .ok()
        .flatten()
        .map(|h| from_hom(c, d, &h))
}
