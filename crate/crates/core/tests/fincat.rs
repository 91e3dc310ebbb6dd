use catmod::fincat::*;
use catmod::fixtures::*;
use catmod::structures::are_isomorphic;
use catmod::Error;
use proptest::prelude::*;

fn mutate_comp(raw: &mut RawCategory, g: &str, f: &str, h: &str) {
    let entry = raw
        .comp
        .iter_mut()
        .find(|e| e[0].0 == g && e[1].0 == f)
        .expect("entry present");
    entry[2] = h.into();
}

#[test]
fn corpus_is_valid_and_small() {
    let corpus = category_corpus();
    assert!(corpus.len() >= 25);
    for (name, c) in &corpus {
        let report = validate_category(&c.to_raw());
        assert!(report.is_valid(), "{name}: {report}");
        assert!(c.num_morphisms() <= 40, "{name} has {} morphisms", c.num_morphisms());
        let back = FinCategory::from_raw(&c.to_raw()).unwrap();
        assert_eq!(&back, c);
    }
}

#[test]
fn free_arrow_and_z2_are_valid() {
    let a = arrow_category();
    assert_eq!((a.num_objects(), a.num_morphisms()), (2, 3));
    assert!(validate_category(&a.to_raw()).is_valid());
    let z2 = group_category(&cyclic_group(2));
    assert_eq!((z2.num_objects(), z2.num_morphisms()), (1, 2));
    assert!(validate_category(&z2.to_raw()).is_valid());
}

#[test]
fn broken_domain_is_axiom_one() {
    // In the chain p0 -> p1 -> p2, send p1_p2 o p0_p1 to p1_p2.
    let mut raw = chain_category(3).to_raw();
    mutate_comp(&mut raw, "p1_p2", "p0_p1", "p1_p2");
    assert_eq!(validate_category(&raw).axioms(), vec![1]);
}

#[test]
fn missing_composite_is_axiom_one() {
    let mut raw = arrow_category().to_raw();
    raw.comp.retain(|e| !(e[0].0 == "a_b" && e[1].0 == "1_a"));
    assert_eq!(validate_category(&raw).axioms(), vec![1]);
}

#[test]
fn broken_associativity_is_axiom_two() {
    // Z/3 with g1 o g1 changed to g0 stays well typed but loses associativity
    // and keeps identity laws.
    let mut raw = group_category(&cyclic_group(3)).to_raw();
    mutate_comp(&mut raw, "g1", "g1", "g0");
    assert_eq!(validate_category(&raw).axioms(), vec![2]);
}

#[test]
fn broken_identity_is_axiom_three() {
    let mut raw = idempotent_monoid().to_raw();
    raw.ids.insert("*".into(), "e".into());
    assert_eq!(validate_category(&raw).axioms(), vec![3]);
    let err = FinCategory::from_raw(&raw).unwrap_err();
    assert!(matches!(err, Error::AxiomViolation(_)));
}

#[test]
fn structure_round_trip() {
    for (name, c) in category_corpus() {
        let s = c.to_structure();
        let back = category_from_structure(&s).unwrap();
        assert!(are_isomorphic(&back.to_structure(), &s).unwrap().is_some(), "{name}");
    }
    let t = category_from_structure(&terminal_category().to_structure()).unwrap();
    assert_eq!((t.num_objects(), t.num_morphisms()), (1, 1));
}

#[test]
fn invalid_structure_is_rejected() {
    let mut s = idempotent_monoid().to_structure();
    s.funcs.get_mut("Id").unwrap().set(&[0], Some(1));
    assert!(matches!(category_from_structure(&s), Err(Error::AxiomViolation(_))));
}

/// Monoid endomorphisms by brute force over all maps on the elements.
fn monoid_endomorphisms(c: &FinCategory) -> usize {
    let n = c.num_morphisms();
    let unit = c.id(0);
    let mut count = 0;
    let mut map = vec![0; n];
    loop {
        let ok = map[unit] == unit && (0..n).all(|g| (0..n).all(|f| map[c.compose(g, f)] == c.compose(map[g], map[f])));
        count += ok as usize;
        let mut i = n;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < n {
                break;
            }
            map[i] = 0;
        }
    }
}

#[test]
fn functors_of_monoids_are_endomorphisms() {
    for c in [idempotent_monoid(), s3_category(), group_category(&cyclic_group(4))] {
        let functors = enumerate_functors(&c, &c);
        assert!(functors.iter().all(Functor::is_valid));
        assert_eq!(functors.len(), monoid_endomorphisms(&c));
    }
}

#[test]
fn functors_are_lcat_homomorphisms() {
    let c = span_category();
    let d = boolean_lattice();
    let functors = enumerate_functors(&c, &d);
    // Brute force over object maps; preorders have at most one morphism per
    // hom-set, so a functor is a monotone object map.
    let mut expected = 0;
    for a in 0..4 {
        for b in 0..4 {
            for e in 0..4 {
                let m = [a, b, e];
                let monotone = (0..3).all(|x| (0..3).all(|y| c.hom(x, y).is_empty() || !d.hom(m[x], m[y]).is_empty()));
                expected += monotone as usize;
            }
        }
    }
    assert_eq!(functors.len(), expected);
}

#[test]
fn product_of_z2_and_z3_is_z6() {
    let c = abelian_category(&[&[], &[2], &[3], &[4], &[2, 2], &[5], &[6]]);
    let z2 = c.object_index("Z2").unwrap();
    let z3 = c.object_index("Z3").unwrap();
    let cone = limit_of(&c, &pair_diagram(&c, z2, z3), false).unwrap();
    assert_eq!(c.objects[cone.apex], "Z6");
    assert!(is_limit_cone(&pair_diagram(&c, z2, z3), &cone));
    let co = limit_of(&c, &pair_diagram(&c, z2, z3), true).unwrap();
    assert_eq!(c.objects[co.apex], "Z6");
}

#[test]
fn limits_in_terminal_and_discrete() {
    let t = terminal_category();
    for d in [empty_diagram(&t), pair_diagram(&t, 0, 0), parallel_diagram(&t, 0, 0)] {
        assert_eq!(limit_of(&t, &d, false).unwrap().apex, 0);
        assert_eq!(limit_of(&t, &d, true).unwrap().apex, 0);
    }
    let d2 = discrete_category(2);
    assert!(limit_of(&d2, &pair_diagram(&d2, 0, 1), false).is_none());
    assert!(limit_of(&d2, &empty_diagram(&d2), false).is_none());
}

#[test]
fn meets_and_equalizers() {
    let b = boolean_lattice();
    let l = b.object_index("l").unwrap();
    let r = b.object_index("r").unwrap();
    assert_eq!(
        b.objects[limit_of(&b, &pair_diagram(&b, l, r), false).unwrap().apex],
        "bot"
    );
    assert_eq!(
        b.objects[limit_of(&b, &pair_diagram(&b, l, r), true).unwrap().apex],
        "top"
    );
    assert_eq!(b.objects[limit_of(&b, &empty_diagram(&b), false).unwrap().apex], "top");
    let v = vee_poset();
    assert!(limit_of(&v, &pair_diagram(&v, 0, 1), false).is_none());

    // Equalizer of the identity and the swap on a two-element set is empty.
    let s = finite_sets(&[0, 1, 2]);
    let s2 = s.object_index("S2").unwrap();
    let swap = s
        .hom(s2, s2)
        .iter()
        .copied()
        .find(|&f| !s.is_identity(f) && s.is_iso(f))
        .unwrap();
    let cone = limit_of(&s, &parallel_diagram(&s, s.id(s2), swap), false).unwrap();
    assert_eq!(s.objects[cone.apex], "S0");
}

fn small_diagrams(c: &FinCategory) -> Vec<Diagram> {
    let mut out = vec![empty_diagram(c)];
    for shape in [
        discrete_shape(1),
        discrete_shape(2),
        parallel_shape(),
        span_category(),
        vee_poset(),
    ] {
        out.extend(enumerate_functors(&shape, c).into_iter().map(Diagram::new));
    }
    out
}

#[test]
fn limits_are_unique_up_to_iso() {
    for (name, c) in category_corpus() {
        for d in small_diagrams(&c) {
            for colimit in [false, true] {
                let all = all_limits(&d, colimit);
                for x in &all {
                    for y in &all {
                        assert!(c.isomorphic(x.apex, y.apex), "{name}");
                    }
                }
                assert_eq!(all.first().map(|x| x.apex), limit_of(&c, &d, colimit).map(|x| x.apex));
            }
        }
    }
}

#[test]
fn skeleton_examples() {
    for c in [terminal_category(), boolean_lattice(), finite_sets(&[0, 1, 2])] {
        let (s, g) = skeleton(&c);
        assert_eq!(s, c);
        assert_eq!(g, Functor::identity(&c));
    }
    let (s, _) = skeleton(&codiscrete_category(2));
    assert_eq!((s.num_objects(), s.num_morphisms()), (1, 1));
    let (s, _) = skeleton(&set_category(&[("A", 2), ("B", 2)], |_| true));
    assert_eq!((s.num_objects(), s.num_morphisms()), (1, 4));
}

#[test]
fn skeleton_properties() {
    for (name, c) in category_corpus() {
        let data = skeleton_data(&c);
        let (s, g) = (&data.category, &data.functor);
        assert!(is_skeletal(s), "{name}");
        assert!(
            g.is_valid() && g.is_full() && g.is_faithful() && g.is_surjective_on_objects(),
            "{name}"
        );
        assert!(data.inclusion.is_valid());
        for (i, &r) in data.inclusion.objects.iter().enumerate() {
            assert_eq!(g.obj(r), i);
            for &f in c.hom(r, r) {
                assert_eq!(data.inclusion.mor(g.mor(f)), f);
            }
        }
        let (s2, g2) = skeleton(s);
        assert_eq!(&s2, s, "{name}");
        assert_eq!(g2, Functor::identity(s));
    }
}

#[test]
fn equivalence_is_reflexive_symmetric_and_witnessed() {
    let corpus = category_corpus();
    for (name, c) in &corpus {
        let (s, _) = skeleton(c);
        for (x, y) in [(c, c), (c, &s), (&s, c)] {
            let e = are_equivalent(x, y).unwrap_or_else(|| panic!("{name}"));
            assert!(e.forward.is_valid() && e.backward.is_valid());
            let hf = e.forward.then(&e.backward);
            let fh = e.backward.then(&e.forward);
            assert!(is_natural_iso(&Functor::identity(x), &hf, &e.unit), "{name}");
            assert!(is_natural_iso(&fh, &Functor::identity(y), &e.counit), "{name}");
        }
    }
    for (a, c) in &corpus {
        for (b, d) in &corpus {
            assert_eq!(
                are_equivalent(c, d).is_some(),
                are_equivalent(d, c).is_some(),
                "{a} {b}"
            );
        }
    }
}

#[test]
fn inequivalent_pairs() {
    assert!(are_equivalent(&terminal_category(), &discrete_category(2)).is_none());
    let z4 = group_category(&cyclic_group(4));
    let v4 = group_category(&abelian_group(&[2, 2]));
    assert!(are_equivalent(&z4, &v4).is_none());
    assert!(are_equivalent(&terminal_category(), &codiscrete_category(3)).is_some());
}

#[test]
fn generators_examples() {
    let sets = finite_sets(&[1, 2, 3]);
    let gens = find_generators(&sets);
    assert!(gens.contains(&sets.object_index("S1").unwrap()));
    let z3 = group_category(&cyclic_group(3));
    assert_eq!(find_generators(&z3), vec![0]);

    // With no parallel pairs every object separates vacuously.
    let d2 = discrete_category(2);
    assert_eq!(find_generators(&d2), vec![0, 1]);
    let families = find_generator_families(&d2);
    assert_eq!(families.len(), 2);
    assert!(is_generating_family(&d2, &[0, 1]));
    assert!(is_locally_unique(&d2, &[0, 1]));
    assert!(!is_locally_unique(&d2, &[0]));

    // S0 is initial and separates nothing in sets012.
    let s = finite_sets(&[0, 1, 2]);
    assert_eq!(
        find_generators(&s),
        vec![s.object_index("S1").unwrap(), s.object_index("S2").unwrap()]
    );
}

/// Generator check straight from the definition, on all pairs including
/// equal ones.
fn generator_oracle(c: &FinCategory, i: usize) -> bool {
    (0..c.num_morphisms()).all(|f| {
        (0..c.num_morphisms()).all(|g| {
            f == g
                || c.dom(f) != c.dom(g)
                || c.cod(f) != c.cod(g)
                || c.hom(i, c.dom(f)).iter().any(|&a| c.compose(f, a) != c.compose(g, a))
        })
    })
}

#[test]
fn generators_match_definition_and_hom_functor_is_faithful() {
    for (name, c) in category_corpus() {
        let gens = find_generators(&c);
        let expected: Vec<usize> = (0..c.num_objects()).filter(|&i| generator_oracle(&c, i)).collect();
        assert_eq!(gens, expected, "{name}");
        for &i in &gens {
            let (sets, maps) = hom_functor(&c, i);
            for a in 0..c.num_objects() {
                for b in 0..c.num_objects() {
                    let hom = c.hom(a, b);
                    for (x, &f) in hom.iter().enumerate() {
                        for &g in &hom[x + 1..] {
                            assert_ne!(maps[f], maps[g], "{name}: Hom(I,-) identifies {f} and {g}");
                        }
                    }
                    if a != b && !sets[a].is_empty() {
                        assert_ne!(sets[a], sets[b]);
                    }
                }
            }
        }
        for fam in find_generator_families(&c) {
            assert!(is_generating_family(&c, &fam.members), "{name}");
            for k in 0..fam.members.len() {
                let mut smaller = fam.members.clone();
                smaller.remove(k);
                assert!(smaller.is_empty() || !is_generating_family(&c, &smaller), "{name}");
            }
        }
    }
}

#[test]
fn equivalent_categories_share_limits() {
    for (name, c) in category_corpus() {
        let (s, g) = skeleton(&c);
        for d in small_diagrams(&c) {
            let moved = Diagram::new(d.functor.then(&g));
            for colimit in [false, true] {
                assert_eq!(
                    limit_of(&c, &d, colimit).is_some(),
                    limit_of(&s, &moved, colimit).is_some(),
                    "{name}"
                );
            }
        }
    }
}

fn random_preorder() -> impl Strategy<Value = FinCategory> {
    (1usize..5, prop::collection::vec(any::<bool>(), 16)).prop_map(|(n, bits)| {
        // Reflexive-transitive closure of a random relation.
        let mut r = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                r[a][b] = a == b || bits[a * 4 + b];
            }
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if r[a][k] && r[k][b] {
                        r[a][b] = true;
                    }
                }
            }
        }
        let names: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        preorder(&refs, |a, b| r[a][b])
    })
}

proptest! {
    #[test]
    fn random_preorders_behave(c in random_preorder()) {
        prop_assert!(validate_category(&c.to_raw()).is_valid());
        let (s, _) = skeleton(&c);
        prop_assert!(is_skeletal(&s));
        prop_assert_eq!(&skeleton(&s).0, &s);
        prop_assert!(are_equivalent(&c, &s).is_some());
        let op = c.opposite();
        prop_assert!(validate_category(&op.to_raw()).is_valid());
        prop_assert_eq!(&op.opposite(), &c);
    }
}
