use catmod::fixtures::*;
use catmod::logic::{enumerate_sentences, eval_sentence, parse_formula, Signature};
use catmod::modcat::{build_model_category, product_structure};
use catmod::structures::*;
use catmod::ultra::*;
use catmod::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Ultrafilters straight from the definition, over all families of subsets.
fn ultrafilters_by_definition(n: usize) -> Vec<Vec<u32>> {
    let full = (1u32 << n) - 1;
    let subsets = 1usize << n;
    let mut out = Vec::new();
    for fam in 0u64..(1u64 << subsets) {
        let has = |s: u32| fam & (1 << s) != 0;
        let ok = !has(0)
            && has(full)
            && (0..=full)
                .all(|a| (0..=full).all(|b| (!has(a) || !has(b) || has(a & b)) && (!has(a) || a & b != a || has(b))))
            && (0..=full).all(|s| has(s) || has(full & !s));
        if ok {
            out.push((0..=full).filter(|&s| has(s)).collect());
        }
    }
    out
}

#[test]
fn ultrafilters_are_the_principal_ones() {
    for n in 1..=3 {
        let found: Vec<Vec<u32>> = enumerate_ultrafilters(n)
            .unwrap()
            .into_iter()
            .map(|u| u.members)
            .collect();
        let mut expected = ultrafilters_by_definition(n);
        expected.sort();
        let mut sorted = found.clone();
        sorted.sort();
        assert_eq!(sorted, expected);
        assert_eq!(found.len(), n);
    }
    for (x, u) in enumerate_ultrafilters(2).unwrap().iter().enumerate() {
        assert!(u.ultra && u.contains(1 << x));
        assert_eq!(u.principal_point(), Some(x));
    }
    assert!(matches!(enumerate_ultrafilters(7), Err(Error::BoundsExceeded(_))));
}

#[test]
fn improper_filters_are_rejected() {
    let pts = |n: usize| (0..n).map(|i| i.to_string().into()).collect::<Vec<_>>();
    assert!(matches!(
        FilterOnX::new(pts(2), vec![0, 1, 3]),
        Err(Error::ImproperFilter(_))
    ));
    assert!(matches!(FilterOnX::new(pts(2), vec![1]), Err(Error::ImproperFilter(_))));
    assert!(matches!(
        FilterOnX::new(pts(3), vec![1, 2, 3, 7]),
        Err(Error::ImproperFilter(_))
    ));
    let t = FilterOnX::trivial(2).unwrap();
    assert!(!t.ultra);
    let json = serde_json::to_string(&t).unwrap();
    let back: FilterOnX = serde_json::from_str(&json).unwrap();
    assert_eq!(back, t);
}

fn is_iso(a: &FinStructure, b: &FinStructure, h: &Homomorphism) -> bool {
    h.is_injective() && h.is_surjective_onto(b) && is_homomorphism(a, b, h) && is_homomorphism(b, a, &h.inverse())
}

#[test]
fn principal_reduced_product_collapses() {
    let ms = vec![cyclic_group(2), abelian_group(&[2, 2]), cyclic_group(3)];
    for u in enumerate_ultrafilters(3).unwrap() {
        let rp = reduced_product(&ms, &u).unwrap();
        let h = principal_collapse(&rp, &u).unwrap();
        let x = u.principal_point().unwrap();
        assert!(is_iso(&rp.structure, &ms[x], &h));
    }
}

#[test]
fn trivial_filter_gives_the_direct_product() {
    let ms = vec![cyclic_group(2), cyclic_group(3)];
    let rp = reduced_product(&ms, &FilterOnX::trivial(2).unwrap()).unwrap();
    assert_eq!(rp.structure.size(0), 6);
    let (p, _) = product_structure(&Signature::group(), &ms);
    assert!(are_isomorphic(&rp.structure, &p).unwrap().is_some());
    let single = reduced_product(&ms[..1], &FilterOnX::trivial(1).unwrap()).unwrap();
    assert!(are_isomorphic(&single.structure, &ms[0]).unwrap().is_some());
    assert!(matches!(
        reduced_product(&[cyclic_group(2), bare_set(2)], &FilterOnX::trivial(2).unwrap()),
        Err(Error::SignatureMismatch(_))
    ));
}

#[test]
fn los_examples() {
    let sig = Signature::group();
    let ms = vec![cyclic_group(2), cyclic_group(3)];
    let u = FilterOnX::principal(2, 0).unwrap();
    let sigma = parse_formula("forall x:s. x + x = 0", &sig).unwrap();
    assert!(eval_sentence(&ms[0], &sigma).unwrap() && !eval_sentence(&ms[1], &sigma).unwrap());
    let rp = reduced_product(&ms, &u).unwrap();
    assert!(eval_sentence(&rp.structure, &sigma).unwrap());
    assert!(los_verify(&ms, &u, &sigma, 3).unwrap().is_valid());
    let taut = parse_formula("forall x:s. x = x", &sig).unwrap();
    assert!(los_verify(&ms, &u, &taut, 3).unwrap().is_valid());
    assert!(matches!(
        los_verify(&ms, &FilterOnX::trivial(2).unwrap(), &taut, 3),
        Err(Error::ImproperFilter(_))
    ));
}

#[test]
fn los_on_sampled_sentences() {
    let groups: Vec<FinStructure> = abelian_groups_up_to(4).into_iter().map(|(_, g)| g).collect();
    let space = enumerate_sentences(&Signature::group(), 3, 8, false).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sentences: Vec<_> = (0..150).map(|_| space.sample(&mut rng).unwrap()).collect();
    for a in 0..groups.len() {
        for b in 0..groups.len() {
            let ms = vec![groups[a].clone(), groups[b].clone()];
            for u in enumerate_ultrafilters(2).unwrap() {
                let rp = reduced_product(&ms, &u).unwrap();
                for s in &sentences {
                    assert!(los_verify_product(&ms, &u, &rp.structure, s).unwrap().is_valid(), "{s}");
                }
            }
        }
    }
}

#[test]
fn diagonal_embeddings() {
    let z2 = cyclic_group(2);
    let (rp, d) = diagonal_embedding(&z2, &FilterOnX::trivial(1).unwrap()).unwrap();
    assert_eq!(d, Homomorphism::identity(&z2));
    assert_eq!(rp.structure.size(0), 2);
    for n in 1..=3 {
        for u in enumerate_filters(n, &Default::default()).unwrap() {
            for m in [cyclic_group(3), abelian_group(&[2, 2]), unary_predicate(3, &[1])] {
                let (rp, d) = diagonal_embedding(&m, &u).unwrap();
                assert!(is_homomorphism(&m, &rp.structure, &d) && d.is_injective());
                assert!(is_strong(&m, &rp.structure, &d));
                if u.ultra {
                    let back = principal_collapse(&rp, &u).unwrap();
                    assert_eq!(d.then(&back), Homomorphism::identity(&m));
                    for k in 0..=3 {
                        assert!(ef_equivalent(&m, &rp.structure, k).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn ultraproducts_are_functorial() {
    let a = [cyclic_group(2), cyclic_group(4)];
    let b = [cyclic_group(4), abelian_group(&[2, 2])];
    let c = [cyclic_group(2), cyclic_group(2)];
    for u in enumerate_filters(2, &Default::default()).unwrap() {
        let (pa, pb, pc) = (
            reduced_product(&a, &u).unwrap(),
            reduced_product(&b, &u).unwrap(),
            reduced_product(&c, &u).unwrap(),
        );
        let f0 = enumerate_homomorphisms(&a[0], &b[0], false).unwrap();
        let f1 = enumerate_homomorphisms(&a[1], &b[1], false).unwrap();
        let g0 = enumerate_homomorphisms(&b[0], &c[0], false).unwrap();
        let g1 = enumerate_homomorphisms(&b[1], &c[1], false).unwrap();
        for x in &f0 {
            for y in &f1 {
                for z in &g0 {
                    for w in &g1 {
                        let fs = [x.clone(), y.clone()];
                        let gs = [z.clone(), w.clone()];
                        let comp = [x.then(z), y.then(w)];
                        let lhs = ultraproduct_hom(&pa, &pc, &comp);
                        let rhs = ultraproduct_hom(&pa, &pb, &fs).then(&ultraproduct_hom(&pb, &pc, &gs));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn hom_sets_of_an_ultrapower_are_ultraproducts() {
    for c in [
        finite_sets(&[0, 1, 2]),
        span_category(),
        group_category(&cyclic_group(3)),
    ] {
        for n in 1..=2 {
            for u in enumerate_filters(n, &Default::default()).unwrap() {
                let (uc, power) = ultrapower_category(&c, &u).unwrap();
                for i in 0..c.num_objects() {
                    let ul_i = power.class_of(0, &vec![i; n]);
                    for b in 0..uc.num_objects() {
                        let fam = &power.families[0][b];
                        let sets: Vec<FinStructure> = fam.iter().map(|&bx| bare_set(c.hom(i, bx).len())).collect();
                        let expected = reduced_product(&sets, &u).unwrap().structure.size(0);
                        assert_eq!(uc.hom(ul_i, b).len(), expected);
                    }
                }
            }
        }
    }
}

#[test]
fn ultrapower_embedding_of_bundles() {
    let set2 = build_model_category(&Theory::exactly(2), 2, false).unwrap();
    let ab3 = build_model_category(&Theory::abelian_groups(), 3, false).unwrap();
    let one = build_model_category(&Theory::exactly(1), 2, false).unwrap();
    for bundle in [&set2, &ab3, &one] {
        for u in enumerate_ultrafilters(2).unwrap() {
            let e = ultrapower_embedding(bundle, &u).unwrap();
            let uc = &e.ultrapower;
            assert_eq!(uc.num_objects(), bundle.category.num_objects());
            assert_eq!(uc.num_morphisms(), bundle.category.num_morphisms());
            assert!(e.functor.is_valid() && e.functor.is_faithful());
            for a in 0..uc.num_objects() {
                for b in 0..a {
                    assert_ne!(e.images[a], e.images[b]);
                }
                assert_eq!(e.images[a].names[0], e.underlying[a]);
                let x = u.principal_point().unwrap();
                let at_x = &bundle.models[e.power.families[0][a][x]];
                assert!(are_isomorphic(&e.images[a], at_x).unwrap().is_some());
            }
            for f in 0..uc.num_morphisms() {
                assert_eq!(e.target_homs[e.functor.mor(f)].maps[0], e.underlying_maps[f]);
            }
        }
    }
    let e = ultrapower_embedding(&set2, &FilterOnX::principal(2, 1).unwrap()).unwrap();
    assert_eq!((e.ultrapower.num_objects(), e.ultrapower.num_morphisms()), (1, 4));
    let e = ultrapower_embedding(&one, &FilterOnX::principal(2, 0).unwrap()).unwrap();
    assert_eq!((e.target.num_objects(), e.target.num_morphisms()), (1, 1));
}
