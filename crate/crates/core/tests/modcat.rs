use catmod::fincat::*;
use catmod::fixtures::*;
use catmod::logic::Signature;
use catmod::modcat::*;
use catmod::structures::*;
use catmod::Error;

fn id(m: &FinStructure) -> Homomorphism {
    Homomorphism::identity(m)
}

#[test]
fn sets_of_fixed_size_have_n_to_the_n_endomorphisms() {
    for (n, expected) in [(1, 1), (2, 4), (3, 27)] {
        let mc = build_model_category(&Theory::exactly(n), 3, false).unwrap();
        assert_eq!(mc.category.num_objects(), 1);
        assert_eq!(mc.category.num_morphisms(), expected);
    }
}

#[test]
fn builds_are_valid_categories() {
    let ab = build_model_category(&Theory::abelian_groups(), 4, false).unwrap();
    assert_eq!(ab.category.num_objects(), 5);
    let z2 = ab.models.iter().position(|m| m.size(0) == 2).unwrap();
    assert_eq!(ab.category.hom(z2, z2).len(), 2);
    assert!(validate_category(&ab.category.to_raw()).is_valid());
    let t = build_model_category(&Theory::exactly(1), 3, false).unwrap();
    assert_eq!((t.category.num_objects(), t.category.num_morphisms()), (1, 1));
    assert!(matches!(
        build_model_category(&Theory::abelian_groups(), 9, false),
        Err(Error::BoundsExceeded(_))
    ));
}

#[test]
fn strong_builds() {
    let strong = build_model_category(&Theory::unary_predicate(), 3, true).unwrap();
    for (f, h) in strong.homs.iter().enumerate() {
        let c = &strong.category;
        assert!(is_strong(&strong.models[c.dom(f)], &strong.models[c.cod(f)], h));
    }
    assert!(validate_category(&strong.category.to_raw()).is_valid());
    let plain = build_model_category(&Theory::abelian_groups(), 4, false).unwrap();
    let strong = build_model_category(&Theory::abelian_groups(), 4, true).unwrap();
    assert_eq!(plain.category, strong.category);
}

#[test]
fn coequalizer_of_equal_maps_is_identity() {
    let z4 = cyclic_group(4);
    let (c, p) = coequalizer(&z4, &z4, &id(&z4), &id(&z4)).unwrap();
    assert_eq!(c.size(0), 4);
    assert_eq!(p, id(&z4));
}

fn negation(m: &FinStructure) -> Homomorphism {
    Homomorphism {
        maps: vec![(0..m.size(0)).map(|x| m.apply("-", &[x]).unwrap()).collect()],
    }
}

#[test]
fn coequalizer_of_identity_and_negation_on_z3_is_trivial() {
    let z3 = cyclic_group(3);
    let (c, p) = coequalizer(&z3, &z3, &id(&z3), &negation(&z3)).unwrap();
    assert_eq!(c.size(0), 1);
    let targets = enumerate_models(&Theory::abelian_groups(), 3).unwrap();
    assert!(check_coequalizer_property(&z3, &id(&z3), &negation(&z3), &c, &p, &targets).unwrap());
}

#[test]
fn transitive_closure_alone_is_not_a_congruence() {
    // Classes {0}, {1, 2}: 1 + 1 = 2 lies in [1] but 1 + 2 = 0 does not.
    let z3 = cyclic_group(3);
    let class = |x: usize| if x == 0 { 0 } else { 1 };
    let sums: Vec<(usize, usize)> = [(1, 1), (1, 2)]
        .iter()
        .map(|&(x, y)| (class(x), class(z3.apply("+", &[x, y]).unwrap())))
        .collect();
    assert_eq!(sums[0].0, sums[1].0);
    assert_ne!(sums[0].1, sums[1].1);
}

#[test]
fn coequalizer_of_points_identifies_them() {
    let a = bare_set(1);
    let b = bare_set(2);
    let f = Homomorphism { maps: vec![vec![0]] };
    let g = Homomorphism { maps: vec![vec![1]] };
    let (c, p) = coequalizer(&a, &b, &f, &g).unwrap();
    assert_eq!(c.size(0), 1);
    let targets: Vec<FinStructure> = (1..=2).map(bare_set).collect();
    assert!(check_coequalizer_property(&b, &f, &g, &c, &p, &targets).unwrap());
    assert!(matches!(coequalizer(&b, &b, &f, &g), Err(Error::NotParallel(_))));
}

#[test]
fn coequalizer_projection_need_not_be_strong() {
    let a = unary_predicate(1, &[]);
    let b = unary_predicate(2, &[0]);
    let f = Homomorphism { maps: vec![vec![0]] };
    let g = Homomorphism { maps: vec![vec![1]] };
    let (c, p) = coequalizer(&a, &b, &f, &g).unwrap();
    assert!(is_homomorphism(&b, &c, &p));
    assert!(!is_strong(&b, &c, &p));
}

#[test]
fn coproducts_of_unary_structures() {
    let empty_sig = Signature::new(&["s"]);
    let (u, inj) = coproduct_unary(&empty_sig, &[]).unwrap();
    assert_eq!((u.size(0), inj.len()), (0, 0));

    let parts = [bare_set(2), bare_set(3)];
    let (u, inj) = coproduct_unary(&empty_sig, &parts).unwrap();
    assert_eq!(u.size(0), 5);
    let targets: Vec<FinStructure> = (1..=5).map(bare_set).collect();
    assert!(check_coproduct_property(&parts, &u, &inj, &targets).unwrap());

    let loops = [unary_algebra(&[0]), unary_algebra(&[0])];
    let (u, inj) = coproduct_unary(&loops[0].sig, &loops).unwrap();
    assert_eq!(u.size(0), 2);
    for (m, i) in loops.iter().zip(&inj) {
        assert!(is_homomorphism(m, &u, i));
    }
    let targets = enumerate_models(&Theory::new(loops[0].sig.clone(), vec![]).unwrap(), 2).unwrap();
    assert!(check_coproduct_property(&loops, &u, &inj, &targets).unwrap());

    assert!(matches!(
        coproduct_unary(&Signature::group(), &[]),
        Err(Error::SignatureNotUnary(_))
    ));
}

#[test]
fn theta_families() {
    let empty = theta_family(&Signature::new(&["s"])).unwrap();
    assert_eq!(empty.len(), 1);
    assert_eq!(empty[0].size(0), 1);
    let p_sig = Signature::new(&["s"]).with_relation("P", &["s"]);
    let theta = theta_family(&p_sig).unwrap();
    assert_eq!(theta.len(), 2);
    let m = unary_predicate(2, &[1]);
    let per_member: Vec<Vec<usize>> = theta
        .iter()
        .map(|t| {
            enumerate_homomorphisms(t, &m, true)
                .unwrap()
                .iter()
                .map(|h| h.maps[0][0])
                .collect()
        })
        .collect();
    assert_eq!(per_member, vec![vec![0], vec![1]]);
    assert!(matches!(
        theta_family(&Signature::group()),
        Err(Error::TermAlgebraInfinite { .. })
    ));
}

#[test]
fn theta_separates_strong_homomorphisms() {
    let mc = build_model_category(&Theory::unary_predicate(), 3, true).unwrap();
    let theta = theta_family(&mc.theory.sig).unwrap();
    let c = &mc.category;
    for a in 0..c.num_objects() {
        for b in 0..c.num_objects() {
            let hom = c.hom(a, b);
            for (i, &f) in hom.iter().enumerate() {
                for &g in &hom[i + 1..] {
                    let separated = theta.iter().any(|t| {
                        enumerate_homomorphisms(t, &mc.models[a], true)
                            .unwrap()
                            .iter()
                            .any(|x| x.then(&mc.homs[f]) != x.then(&mc.homs[g]))
                    });
                    assert!(separated);
                }
            }
            // Local uniqueness: each element of a model is hit from exactly one member.
            let m = &mc.models[a];
            let mut hits = vec![0; m.size(0)];
            for t in &theta {
                for h in enumerate_homomorphisms(t, m, true).unwrap() {
                    hits[h.maps[0][0]] += 1;
                }
            }
            assert!(hits.iter().all(|&k| k == 1));
        }
    }
}

fn iso(a: &FinStructure, b: &FinStructure) -> bool {
    are_isomorphic(a, b).unwrap().is_some()
}

#[test]
fn categorical_limits_match_constructions() {
    for (mc, name) in [
        (
            build_model_category(&Theory::abelian_groups(), 4, false).unwrap(),
            "ab4",
        ),
        (
            build_model_category(&Theory::unary_predicate(), 3, false).unwrap(),
            "pred3",
        ),
    ] {
        let c = &mc.category;
        let sig = &mc.theory.sig;
        for a in 0..c.num_objects() {
            for b in 0..c.num_objects() {
                let d = pair_diagram(c, a, b);
                if let Some(cone) = limit_of(c, &d, false) {
                    let (p, _) = product_structure(sig, &[mc.models[a].clone(), mc.models[b].clone()]);
                    assert!(iso(&mc.models[cone.apex], &p), "{name}: product");
                }
                let hom = c.hom(a, b);
                for &f in hom {
                    for &g in hom {
                        let d = parallel_diagram(c, f, g);
                        let (ma, mb) = (&mc.models[a], &mc.models[b]);
                        if let Some(cone) = limit_of(c, &d, false) {
                            let (e, _) = equalizer_structure(ma, mb, &mc.homs[f], &mc.homs[g]).unwrap();
                            assert!(iso(&mc.models[cone.apex], &e), "{name}: equalizer");
                        }
                        // Quotients never outgrow the target, so they are always present.
                        let cone = limit_of(c, &d, true).expect("coequalizer exists");
                        let (q, _) = coequalizer(ma, mb, &mc.homs[f], &mc.homs[g]).unwrap();
                        assert!(iso(&mc.models[cone.apex], &q), "{name}: coequalizer");
                    }
                }
            }
        }
    }
}
