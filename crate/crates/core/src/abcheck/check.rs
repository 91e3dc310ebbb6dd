use serde::{Deserialize, Serialize};

use super::arrows::{find_null_object, find_product, group_arrows_with, Associativity, ProductCone};
use crate::fincat::{find_generators, FinCategory};

const SCOPE_NOTE: &str = "A finite category with all binary products and a null object has only trivial objects, \
     since |G x G| = |G|^2. Verdicts are therefore given per object and per pair; \
     partially product-closed fixtures pass Ab1 exactly where G x G exists.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<String>,
}

impl AxiomVerdict {
    fn from_failures(failures: Vec<String>, witnesses: Vec<String>) -> Self {
        AxiomVerdict {
            passed: failures.is_empty(),
            failures,
            witnesses,
        }
    }
}

/// Group arrows found on one object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectVerdict {
    pub object: String,
    pub passed: bool,
    /// `None` when `G × G` is missing.
    pub group_arrows: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub associativity: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbReport {
    pub note: String,
    pub prod: AxiomVerdict,
    pub null: AxiomVerdict,
    pub gen: AxiomVerdict,
    pub ab1: Vec<ObjectVerdict>,
    pub ab2: AxiomVerdict,
    pub passed: bool,
}

impl AbReport {
    pub fn ab1_passed(&self) -> bool {
        self.ab1.iter().all(|v| v.passed)
    }

    pub fn ab1_for(&self, object: &str) -> Option<&ObjectVerdict> {
        self.ab1.iter().find(|v| v.object == object)
    }
}

/// The unique group arrow on `g` with the product cone it lives on.
pub(crate) fn unique_group_arrow(c: &FinCategory, g: usize) -> Option<(ProductCone, usize)> {
    let cone = find_product(c, g, g)?;
    let (arrows, _) = group_arrows_with(c, g, &cone, false).ok()?;
    match arrows.as_slice() {
        [mu] => Some((cone, *mu)),
        _ => None,
    }
}

/// Checks products, null object, generator, unique group arrows (Ab1) and
/// linearity (Ab2).
pub fn check_ab(c: &FinCategory) -> AbReport {
    let n = c.num_objects();
    let name = |o: usize| c.objects[o].clone();

    let mut missing = Vec::new();
    let mut products = vec![vec![None; n]; n];
    for a in 0..n {
        for b in 0..n {
            products[a][b] = find_product(c, a, b);
            if products[a][b].is_none() {
                missing.push(format!("no product of ({}, {})", name(a), name(b)));
            }
        }
    }
    let prod = AxiomVerdict::from_failures(missing, Vec::new());

    let null_object = find_null_object(c);
    let null = match null_object {
        Some(z) => AxiomVerdict::from_failures(Vec::new(), vec![name(z)]),
        None => AxiomVerdict::from_failures(vec!["no null object".into()], Vec::new()),
    };

    let gens = find_generators(c);
    let gen = if gens.is_empty() {
        AxiomVerdict::from_failures(vec!["no generator".into()], Vec::new())
    } else {
        AxiomVerdict::from_failures(Vec::new(), gens.iter().map(|&g| name(g)).collect())
    };

    let mut mus: Vec<Option<(ProductCone, usize)>> = vec![None; n];
    let ab1: Vec<ObjectVerdict> = (0..n)
        .map(|g| {
            let Some(cone) = products[g][g] else {
                return ObjectVerdict {
                    object: name(g),
                    passed: false,
                    group_arrows: None,
                    associativity: None,
                };
            };
            match (null_object, group_arrows_with(c, g, &cone, false)) {
                (Some(_), Ok((arrows, mode))) => {
                    if let [mu] = arrows.as_slice() {
                        mus[g] = Some((cone, *mu));
                    }
                    ObjectVerdict {
                        object: name(g),
                        passed: arrows.len() == 1,
                        group_arrows: Some(arrows.iter().map(|&m| c.morphisms[m].name.clone()).collect()),
                        associativity: Some(match mode {
                            Associativity::TripleProducts { .. } => "triple products".into(),
                            Associativity::GeneralizedElements => "generalized elements".into(),
                        }),
                    }
                }
                _ => ObjectVerdict {
                    object: name(g),
                    passed: false,
                    group_arrows: None,
                    associativity: None,
                },
            }
        })
        .collect();

    let mut nonlinear = Vec::new();
    let mut linear = 0usize;
    for f in 0..c.num_morphisms() {
        let (g, h) = (c.dom(f), c.cod(f));
        let fname = &c.morphisms[f].name;
        match (mus[g], mus[h]) {
            (Some((cg, mu_g)), Some((ch, mu_h))) => {
                let ff = ch
                    .pairing(c, c.compose(f, cg.p1), c.compose(f, cg.p2))
                    .expect("product pairing");
                if c.compose(mu_h, ff) == c.compose(f, mu_g) {
                    linear += 1;
                } else {
                    nonlinear.push(format!("{fname} is not linear"));
                }
            }
            _ => nonlinear.push(format!("{fname}: no unique group arrow on its domain or codomain")),
        }
    }
    let ab2 = AxiomVerdict::from_failures(nonlinear, vec![format!("{linear} linear morphisms")]);

    let passed = prod.passed && null.passed && gen.passed && ab1.iter().all(|v| v.passed) && ab2.passed;
    AbReport {
        note: SCOPE_NOTE.into(),
        prod,
        null,
        gen,
        ab1,
        ab2,
        passed,
    }
}
