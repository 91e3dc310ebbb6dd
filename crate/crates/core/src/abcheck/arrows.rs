use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::fincat::{is_limit_cone, limit_of, pair_diagram, Cone, FinCategory};
use crate::{Error, Result};

/// A binary product `apex` with projections `p1: apex → a`, `p2: apex → b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductCone {
    pub apex: usize,
    pub p1: usize,
    pub p2: usize,
}

impl ProductCone {
    /// The unique `u: dom f → apex` with `p1 u = f` and `p2 u = g`.
    pub fn pairing(&self, c: &FinCategory, f: usize, g: usize) -> Option<usize> {
        c.hom(c.dom(f), self.apex)
            .iter()
            .copied()
            .find(|&u| c.comp(self.p1, u) == Some(f) && c.comp(self.p2, u) == Some(g))
    }

    /// All pairings out of `q`, keyed by their two components.
    fn pairings_from(&self, c: &FinCategory, q: usize) -> HashMap<(usize, usize), usize> {
        c.hom(q, self.apex)
            .iter()
            .map(|&u| ((c.compose(self.p1, u), c.compose(self.p2, u)), u))
            .collect()
    }
}

/// Whether `cone` is a product of `a` and `b`.
pub fn is_product(c: &FinCategory, a: usize, b: usize, cone: &ProductCone) -> bool {
    let ok_legs =
        c.dom(cone.p1) == cone.apex && c.dom(cone.p2) == cone.apex && c.cod(cone.p1) == a && c.cod(cone.p2) == b;
    ok_legs
        && is_limit_cone(
            &pair_diagram(c, a, b),
            &Cone {
                apex: cone.apex,
                legs: vec![cone.p1, cone.p2],
            },
        )
}

pub fn find_product(c: &FinCategory, a: usize, b: usize) -> Option<ProductCone> {
    limit_of(c, &pair_diagram(c, a, b), false).map(|cone| ProductCone {
        apex: cone.apex,
        p1: cone.legs[0],
        p2: cone.legs[1],
    })
}

/// An object with exactly one morphism from and to every object.
pub fn find_null_object(c: &FinCategory) -> Option<usize> {
    (0..c.num_objects()).find(|&z| (0..c.num_objects()).all(|x| c.hom_count(z, x) == 1 && c.hom_count(x, z) == 1))
}

/// The zero morphism `x → 0 → y`.
pub fn zero_map(c: &FinCategory, null: usize, x: usize, y: usize) -> usize {
    c.compose(c.hom(null, y)[0], c.hom(x, null)[0])
}

/// How associativity was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Associativity {
    /// Through products `G×(G×G)` and `(G×G)×G` and the associator between
    /// them, all found by search.
    TripleProducts {
        left: ProductCone,
        right: ProductCone,
        associator: usize,
    },
    /// On generalized elements: `μ⟨a, μ⟨b, c⟩⟩ = μ⟨μ⟨a, b⟩, c⟩` for every
    /// object `Q` and all `a, b, c: Q → G`.
    GeneralizedElements,
}

/// Verdicts of the four group-arrow axioms for one candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupArrowCheck {
    pub associativity: bool,
    pub unit: bool,
    pub inverse: bool,
    pub commutativity: bool,
}

impl GroupArrowCheck {
    pub fn passes(&self) -> bool {
        self.associativity && self.unit && self.inverse && self.commutativity
    }
}

/// The data shared by all candidates `μ: G×G → G`.
pub struct GroupArrowContext<'a> {
    c: &'a FinCategory,
    g: usize,
    null: usize,
    cone: ProductCone,
    twist: usize,
    unit_arg: usize,
    assoc: Associativity,
}

impl<'a> GroupArrowContext<'a> {
    /// Checks the null object and the product cone and derives the twist
    /// and `0 × 1_G`. With `strict`, the triple products must exist.
    pub fn new(c: &'a FinCategory, g: usize, cone: &ProductCone, strict: bool) -> Result<Self> {
        let null = find_null_object(c).ok_or(Error::NoNullObject)?;
        if !is_product(c, g, g, cone) {
            return Err(Error::NoProductCone(format!(
                "the supplied cone is not a product {0} × {0}",
                c.objects[g]
            )));
        }
        let p = cone.apex;
        let twist = cone.pairing(c, cone.p2, cone.p1).expect("product pairing");
        let unit_arg = cone
            .pairing(c, zero_map(c, null, p, g), cone.p2)
            .expect("product pairing");
        let assoc = match (find_product(c, g, p), find_product(c, p, g)) {
            (Some(left), Some(right)) => {
                let inner = cone
                    .pairing(c, left.p1, c.compose(cone.p1, left.p2))
                    .expect("product pairing");
                let associator = right
                    .pairing(c, inner, c.compose(cone.p2, left.p2))
                    .expect("product pairing");
                Associativity::TripleProducts {
                    left,
                    right,
                    associator,
                }
            }
            _ if strict => return Err(Error::MissingTripleProduct(format!("{0} × ({0} × {0})", c.objects[g]))),
            _ => Associativity::GeneralizedElements,
        };
        Ok(GroupArrowContext {
            c,
            g,
            null,
            cone: *cone,
            twist,
            unit_arg,
            assoc,
        })
    }

    pub fn associativity_mode(&self) -> &Associativity {
        &self.assoc
    }

    pub fn check(&self, mu: usize) -> GroupArrowCheck {
        let c = self.c;
        let (g, cone) = (self.g, &self.cone);
        if c.dom(mu) != cone.apex || c.cod(mu) != g {
            return GroupArrowCheck {
                associativity: false,
                unit: false,
                inverse: false,
                commutativity: false,
            };
        }
        let unit = c.comp(mu, self.unit_arg) == Some(cone.p2);
        let commutativity = c.comp(mu, self.twist) == Some(mu);
        let zero = zero_map(c, self.null, g, g);
        let inverse = c
            .hom(g, g)
            .iter()
            .any(|&l| cone.pairing(c, c.id(g), l).and_then(|u| c.comp(mu, u)) == Some(zero));
        GroupArrowCheck {
            associativity: self.associative(mu),
            unit,
            inverse,
            commutativity,
        }
    }

    fn associative(&self, mu: usize) -> bool {
        let c = self.c;
        let cone = &self.cone;
        match &self.assoc {
            Associativity::TripleProducts {
                left: lc,
                right: rc,
                associator,
            } => {
                let one_mu = cone.pairing(c, lc.p1, c.compose(mu, lc.p2)).unwrap();
                let mu_one = cone.pairing(c, c.compose(mu, rc.p1), rc.p2).unwrap();
                c.compose(mu, one_mu) == c.compose(mu, c.compose(mu_one, *associator))
            }
            Associativity::GeneralizedElements => (0..c.num_objects()).all(|q| {
                let pairs = cone.pairings_from(c, q);
                let add = |a: usize, b: usize| c.compose(mu, pairs[&(a, b)]);
                let elems = c.hom(q, self.g);
                elems.iter().all(|&a| {
                    elems
                        .iter()
                        .all(|&b| elems.iter().all(|&d| add(a, add(b, d)) == add(add(a, b), d)))
                })
            }),
        }
    }
}

/// Every `μ: G×G → G` satisfying the four group-arrow axioms, where `cone`
/// is a product `G × G`. Associativity falls back to generalized elements
/// when the triple products are missing.
pub fn group_arrows(c: &FinCategory, g: usize, cone: &ProductCone) -> Result<Vec<usize>> {
    group_arrows_with(c, g, cone, false).map(|(arrows, _)| arrows)
}

/// [`group_arrows`]; with `strict` set, missing triple products are an error.
pub fn group_arrows_with(
    c: &FinCategory,
    g: usize,
    cone: &ProductCone,
    strict: bool,
) -> Result<(Vec<usize>, Associativity)> {
    let ctx = GroupArrowContext::new(c, g, cone, strict)?;
    let arrows = c
        .hom(cone.apex, g)
        .iter()
        .copied()
        .filter(|&mu| ctx.check(mu).passes())
        .collect();
    Ok((arrows, ctx.assoc))
}
