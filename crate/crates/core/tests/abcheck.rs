#![allow(clippy::needless_range_loop)]

use catmod::abcheck::*;
use catmod::fincat::FinCategory;
use catmod::fixtures::*;
use catmod::logic::{eval_sentence, Signature};
use catmod::modcat::structure_category;
use catmod::structures::{are_isomorphic, is_homomorphism, FinStructure, Homomorphism, Theory};
use catmod::Error;

/// Full subcategory of abelian groups together with the underlying maps of
/// its morphisms.
fn groups_fixture(groups: &[&[usize]]) -> (FinCategory, Vec<FinStructure>, Vec<Homomorphism>) {
    let names: Vec<String> = groups
        .iter()
        .map(|fs| {
            if fs.is_empty() {
                "0".to_string()
            } else {
                fs.iter().map(|k| format!("Z{k}")).collect::<Vec<_>>().join("x")
            }
        })
        .collect();
    let structures: Vec<FinStructure> = groups.iter().map(|fs| abelian_group(fs)).collect();
    let (c, homs) = structure_category(&names, &structures, false).unwrap();
    (c, structures, homs)
}

/// `μ` is the addition of `G` transported along the cone:
/// `μ(x) = p1(x) + p2(x)` for every element `x` of the apex.
fn is_transported_addition(
    c: &FinCategory,
    structures: &[FinStructure],
    homs: &[Homomorphism],
    cone: &ProductCone,
    mu: usize,
) -> bool {
    let g = &structures[c.cod(mu)];
    let apex = &structures[cone.apex];
    (0..apex.size(0)).all(|x| {
        let sum = g
            .apply("+", &[homs[cone.p1].apply(0, x), homs[cone.p2].apply(0, x)])
            .unwrap();
        homs[mu].apply(0, x) == sum
    })
}

#[test]
fn z2_in_zero_z2_v4_has_exactly_the_addition_arrow() {
    let (c, structures, homs) = groups_fixture(&[&[], &[2], &[2, 2]]);
    let z2 = c.object_index("Z2").unwrap();
    let cone = find_product(&c, z2, z2).unwrap();
    assert_eq!(c.objects[cone.apex], "Z2xZ2");
    assert_eq!(c.hom_count(cone.apex, z2), 4);
    let arrows = group_arrows(&c, z2, &cone).unwrap();
    assert_eq!(arrows.len(), 1);
    assert!(is_transported_addition(&c, &structures, &homs, &cone, arrows[0]));

    let ctx = GroupArrowContext::new(&c, z2, &cone, false).unwrap();
    assert_eq!(ctx.associativity_mode(), &Associativity::GeneralizedElements);
    assert!(!ctx.check(cone.p1).unit);
    let p2 = ctx.check(cone.p2);
    assert!(p2.unit && !p2.commutativity);
}

#[test]
fn terminal_category_identity_is_a_group_arrow() {
    let t = terminal_category();
    let cone = find_product(&t, 0, 0).unwrap();
    let (arrows, mode) = group_arrows_with(&t, 0, &cone, true).unwrap();
    assert_eq!(arrows, vec![t.id(0)]);
    assert!(matches!(mode, Associativity::TripleProducts { .. }));
}

#[test]
fn group_arrow_errors() {
    let d = discrete_category(2);
    let fake = ProductCone {
        apex: 0,
        p1: d.id(0),
        p2: d.id(0),
    };
    assert!(matches!(group_arrows(&d, 0, &fake), Err(Error::NoNullObject)));

    let (c, _, _) = groups_fixture(&[&[], &[2], &[2, 2]]);
    let z2 = c.object_index("Z2").unwrap();
    let not_a_product = ProductCone {
        apex: z2,
        p1: c.id(z2),
        p2: c.id(z2),
    };
    assert!(matches!(
        group_arrows(&c, z2, &not_a_product),
        Err(Error::NoProductCone(_))
    ));
    let cone = find_product(&c, z2, z2).unwrap();
    assert!(matches!(
        group_arrows_with(&c, z2, &cone, true),
        Err(Error::MissingTripleProduct(_))
    ));
}

#[test]
fn group_arrows_are_unique_and_additive_in_group_fixtures() {
    let fixtures: [&[&[usize]]; 5] = [
        &[&[], &[2], &[2, 2]],
        &[&[], &[3], &[3, 3]],
        &[&[], &[2], &[2, 2], &[2, 2, 2]],
        &[&[], &[2], &[4], &[2, 2], &[2, 4], &[4, 4]],
        &[&[], &[2], &[3], &[6], &[2, 2], &[3, 3]],
    ];
    for groups in fixtures {
        let (c, structures, homs) = groups_fixture(groups);
        let mut checked = 0;
        for g in 0..c.num_objects() {
            let Some(cone) = find_product(&c, g, g) else { continue };
            let arrows = group_arrows(&c, g, &cone).unwrap();
            assert_eq!(arrows.len(), 1, "{}", c.objects[g]);
            assert!(is_transported_addition(&c, &structures, &homs, &cone, arrows[0]));
            checked += 1;
        }
        assert!(checked >= 2);
    }
}

#[test]
fn triple_products_and_generalized_elements_agree() {
    let (c, _, _) = groups_fixture(&[&[], &[2], &[2, 2], &[2, 2, 2]]);
    let z2 = c.object_index("Z2").unwrap();
    let cone = find_product(&c, z2, z2).unwrap();
    let strict = group_arrows_with(&c, z2, &cone, true).unwrap();
    assert!(matches!(strict.1, Associativity::TripleProducts { .. }));
    let (c2, _, _) = groups_fixture(&[&[], &[2], &[2, 2]]);
    let z2b = c2.object_index("Z2").unwrap();
    let loose = group_arrows(&c2, z2b, &find_product(&c2, z2b, z2b).unwrap()).unwrap();
    assert_eq!(strict.0.len(), 1);
    assert_eq!(loose.len(), 1);
    assert_eq!(c.morphisms[strict.0[0]].name, c2.morphisms[loose[0]].name);
}

#[test]
fn concrete_group_arrows_are_the_addition() {
    for (name, g) in abelian_groups_up_to(16) {
        let ops = concrete_group_arrows(&g).unwrap();
        assert_eq!(ops, vec![addition_table(&g)], "{name}");
    }
    let trivial = cyclic_group(1);
    assert_eq!(concrete_group_arrows(&trivial).unwrap(), vec![vec![vec![0]]]);
    let not_a_group = {
        let mut m = cyclic_group(3);
        m.funcs.get_mut("+").unwrap().set(&[1, 1], Some(1));
        m
    };
    assert!(matches!(concrete_group_arrows(&not_a_group), Err(Error::NotAGroup(_))));
    assert!(matches!(concrete_group_arrows(&bare_set(2)), Err(Error::NotAGroup(_))));
}

/// Independent count for Z/4: μ(a, b) = φ(a) + ψ(b) with φ, ψ among the
/// four maps `x ↦ kx`; the unit law forces both to be the identity.
#[test]
fn z4_oracle() {
    let g = cyclic_group(4);
    let mut count = 0;
    for k in 0..4 {
        for l in 0..4 {
            let mu = |a: usize, b: usize| (k * a + l * b) % 4;
            let unital = (0..4).all(|a| mu(a, 0) == a && mu(0, a) == a);
            let comm = (0..4).all(|a| (0..4).all(|b| mu(a, b) == mu(b, a)));
            if unital && comm {
                count += 1;
            }
        }
    }
    assert_eq!(count, 1);
    assert_eq!(concrete_group_arrows(&g).unwrap().len(), count);
}

#[test]
fn ab_report_examples() {
    let t = check_ab(&terminal_category());
    assert!(t.passed && t.prod.passed && t.null.passed && t.gen.passed && t.ab1_passed() && t.ab2.passed);

    let d = check_ab(&discrete_category(2));
    assert!(!d.prod.passed && !d.passed);

    let (c, _, _) = groups_fixture(&[&[], &[2], &[2, 2]]);
    let r = check_ab(&c);
    assert!(!r.prod.passed);
    assert!(r.prod.failures.iter().any(|f| f.contains("(Z2xZ2, Z2xZ2)")));
    assert!(r.null.passed && r.gen.passed);
    assert!(r.ab1_for("Z2").unwrap().passed);
    assert!(r.ab1_for("0").unwrap().passed);
    assert!(!r.ab1_for("Z2xZ2").unwrap().passed);
    assert!(!r.passed);
    let json = serde_json::to_value(&r).unwrap();
    assert!(json["note"].as_str().unwrap().contains("trivial"));
}

#[test]
fn extraction_recovers_the_groups() {
    let (c, structures, _) = groups_fixture(&[&[], &[2], &[2, 2]]);
    let z2 = c.object_index("Z2").unwrap();
    let ex = extract_groups(&c, z2).unwrap();
    for g in 0..c.num_objects() {
        assert!(
            are_isomorphic(&ex.groups[g], &structures[g]).unwrap().is_some(),
            "{}",
            c.objects[g]
        );
    }
    assert_eq!(ex.groups[z2].size(0), 2);
    assert_eq!(ex.groups[c.object_index("Z2xZ2").unwrap()].size(0), 4);

    let zero = c.object_index("0").unwrap();
    assert!(matches!(
        extract_groups(&c, zero),
        Err(Error::AxiomFailure { axiom, .. }) if axiom == "Gen"
    ));

    let t = terminal_category();
    let ex = extract_groups(&t, 0).unwrap();
    assert_eq!(ex.groups[0].size(0), 1);
}

#[test]
fn extracted_images_are_groups_and_homomorphisms() {
    let fixtures: [&[&[usize]]; 4] = [
        &[&[], &[2], &[2, 2]],
        &[&[], &[3], &[3, 3]],
        &[&[], &[2], &[4], &[2, 2], &[2, 4], &[4, 4]],
        &[&[], &[2], &[2, 2], &[2, 2, 2]],
    ];
    let theory = Theory::abelian_groups();
    for groups in fixtures {
        let (c, structures, homs) = groups_fixture(groups);
        let gens = catmod::fincat::find_generators(&c);
        assert!(!gens.is_empty());
        for &i in &gens {
            let ex = extract_groups(&c, i).unwrap();
            for (g, m) in ex.groups.iter().enumerate() {
                assert_eq!(m.sig, Signature::group());
                assert!(theory.sentences.iter().all(|s| eval_sentence(m, s).unwrap()));
                // the sum of α, β: I → G is the pointwise sum of the underlying maps
                let elems = c.hom(i, g);
                for (a, &alpha) in elems.iter().enumerate() {
                    for (b, &beta) in elems.iter().enumerate() {
                        let sum = elems[m.apply("+", &[a, b]).unwrap()];
                        let ok = (0..structures[i].size(0)).all(|x| {
                            let expected = structures[g]
                                .apply("+", &[homs[alpha].apply(0, x), homs[beta].apply(0, x)])
                                .unwrap();
                            homs[sum].apply(0, x) == expected
                        });
                        assert!(ok, "{} via {}", c.objects[g], c.objects[i]);
                    }
                }
            }
            for f in 0..c.num_morphisms() {
                assert!(is_homomorphism(
                    &ex.groups[c.dom(f)],
                    &ex.groups[c.cod(f)],
                    &ex.morphisms[f]
                ));
            }
            for a in 0..c.num_objects() {
                for b in 0..a {
                    assert_ne!(ex.groups[a], ex.groups[b]);
                }
            }
        }
    }
}
