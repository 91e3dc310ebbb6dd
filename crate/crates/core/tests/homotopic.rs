use catmod::config::Caps;
use catmod::fincat::*;
use catmod::fixtures::*;
use catmod::homotopic::*;
use catmod::logic::{eval_sentence, parse_formula, parse_homotopic, Env, SentenceSpace, Signature};
use catmod::Error;

fn small_corpus(max_morphisms: usize) -> Vec<(String, FinCategory)> {
    category_corpus()
        .into_iter()
        .filter(|(_, c)| c.num_morphisms() <= max_morphisms)
        .collect()
}

/// Every iso-graph of `c` when there are few, otherwise the default one.
fn isographs(c: &FinCategory) -> Vec<IsoGraph> {
    enumerate_isographs(c, &Caps::default()).unwrap_or_else(|_| vec![build_isograph(c)])
}

#[test]
fn built_and_enumerated_isographs_are_valid() {
    for (name, c) in category_corpus() {
        let i = build_isograph(&c);
        assert!(i.validate().is_empty(), "{name}: {}", i.validate());
        if is_skeletal(&c) {
            let ids: Vec<usize> = (0..c.num_objects()).map(|a| c.id(a)).collect();
            let mut ids = ids;
            ids.sort_unstable();
            assert_eq!(i.arrows(), ids, "{name}: skeletal iso-graph is discrete");
            assert_eq!(count_isographs(&c), 1);
        }
        if let Ok(all) = enumerate_isographs(&c, &Caps::default()) {
            assert_eq!(all.len() as u128, count_isographs(&c));
            for (k, j) in all.iter().enumerate() {
                assert!(j.validate().is_empty(), "{name} #{k}");
                assert!(
                    all[..k].iter().all(|earlier| earlier != j),
                    "{name}: duplicate iso-graph"
                );
            }
        }
        let back = IsoGraph::from_raw(&c, &i.to_raw()).unwrap();
        assert_eq!(back, i);
    }
}

#[test]
fn isograph_examples() {
    let pair = codiscrete_category(2);
    let all = enumerate_isographs(&pair, &Caps::default()).unwrap();
    assert_eq!(all.len(), 1);
    assert_eq!(all[0].arrows().len(), 4);
    assert_eq!(all[0].arrows().iter().filter(|&&f| !pair.is_identity(f)).count(), 2);

    let t = terminal_category();
    assert_eq!(build_isograph(&t).arrows(), vec![t.id(0)]);

    // three isomorphic copies of Z2: 2 choices for each of the two non-representatives
    let copies = category_corpus()
        .into_iter()
        .find(|(n, _)| n == "z2_groupoid")
        .unwrap()
        .1;
    let n = enumerate_isographs(&copies, &Caps::default()).unwrap().len();
    let oracle: usize = {
        let rep = skeleton_data(&copies).representative;
        (0..copies.num_objects())
            .filter(|&a| rep[a] != a)
            .map(|a| copies.isos(rep[a], a).len())
            .product()
    };
    assert_eq!(n, oracle);
}

#[test]
fn isograph_rejections() {
    let z2 = group_category(&cyclic_group(2));
    let g = (0..2).find(|&f| !z2.is_identity(f)).unwrap();
    let caps = Caps::default();
    assert!(!extends_to_isograph(&z2, &[g], &caps).unwrap());
    let mut raw = build_isograph(&z2).to_raw();
    raw.arrows
        .push(["*".into(), "*".into(), z2.morphisms[g].name.as_str().into()]);
    assert!(IsoGraph::from_raw(&z2, &raw).is_err());
    let too_many: Vec<usize> = vec![0; 9];
    assert!(matches!(
        extends_to_isograph(&z2, &too_many, &caps),
        Err(Error::BoundsExceeded(_))
    ));
}

/// Subsets of at most three isomorphisms, compared with a search through all
/// iso-graphs.
#[test]
fn extension_matches_isograph_search() {
    let caps = Caps::default();
    for (name, c) in category_corpus() {
        let Ok(all) = enumerate_isographs(&c, &caps) else {
            continue;
        };
        let ids: Vec<usize> = (0..c.num_objects()).map(|a| c.id(a)).collect();
        assert!(extends_to_isograph(&c, &ids, &caps).unwrap(), "{name}: identities");
        let isos: Vec<usize> = (0..c.num_morphisms()).filter(|&f| c.is_iso(f)).collect();
        let candidates: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)).collect();
        let mut subsets: Vec<Vec<usize>> = vec![vec![]];
        for &f in &candidates {
            let grown: Vec<Vec<usize>> = subsets
                .iter()
                .filter(|s| s.len() < 3)
                .map(|s| {
                    let mut t = s.clone();
                    t.push(f);
                    t
                })
                .collect();
            subsets.extend(grown);
            if subsets.len() > 2000 {
                break;
            }
        }
        for d in subsets {
            let expected = all.iter().any(|i| d.iter().all(|&f| i.contains(f)));
            let got = extend_to_isograph(&c, &d, &caps).unwrap();
            assert_eq!(got.is_some(), expected, "{name}: {d:?}");
            if let Some(i) = got {
                assert!(i.validate().is_empty());
                assert!(d.iter().all(|&f| i.contains(f) && isos.contains(&f)));
            }
        }
    }
}

#[test]
fn single_iso_between_two_objects_extends() {
    let pair = codiscrete_category(2);
    let f = (0..pair.num_morphisms()).find(|&f| pair.dom(f) != pair.cod(f)).unwrap();
    assert!(extends_to_isograph(&pair, &[f], &Caps::default()).unwrap());
    let arrow = arrow_category();
    let f = (0..3).find(|&f| !arrow.is_identity(f)).unwrap();
    assert!(!extends_to_isograph(&arrow, &[f], &Caps::default()).unwrap());
}

#[test]
fn qc_matches_composition_on_matching_triples() {
    for (name, c) in category_corpus() {
        for i in isographs(&c) {
            let n = c.num_morphisms();
            for f in 0..n {
                for g in (0..n).filter(|&g| c.dom(g) == c.cod(f)) {
                    for h in (0..n).filter(|&h| c.dom(h) == c.dom(f) && c.cod(h) == c.cod(g)) {
                        assert_eq!(i.qc(f, g, h), c.comp(g, f) == Some(h), "{name}: ({f},{g},{h})");
                    }
                }
            }
        }
    }
}

/// Direct reading of the quasi-composition square: search all arrows of
/// the iso-graph for the three vertical maps.
#[test]
fn qc_matches_diagram_search() {
    for (name, c) in small_corpus(16) {
        let i = build_isograph(&c);
        let arrows = i.arrows();
        let n = c.num_morphisms();
        for f in 0..n {
            for g in 0..n {
                for h in 0..n {
                    let found = arrows.iter().any(|&pa| {
                        c.dom(pa) == c.dom(h)
                            && c.cod(pa) == c.dom(f)
                            && arrows.iter().any(|&bc| {
                                c.dom(bc) == c.cod(f)
                                    && c.cod(bc) == c.dom(g)
                                    && arrows.iter().any(|&qd| {
                                        c.dom(qd) == c.cod(h)
                                            && c.cod(qd) == c.cod(g)
                                            && c.comp(qd, h)
                                                == c.comp(bc, f).and_then(|x| c.comp(x, pa)).and_then(|x| c.comp(g, x))
                                    })
                            })
                    });
                    assert_eq!(i.qc(f, g, h), found, "{name}: ({f},{g},{h})");
                }
            }
        }
    }
}

#[test]
fn i_morphism_formula_defines_the_isograph() {
    let phi = i_morphism("x");
    for (name, c) in small_corpus(20) {
        for i in isographs(&c) {
            let model = HomotopicModel::new(&i);
            let ev = model.evaluator(&phi).unwrap();
            for a in 0..c.num_morphisms() {
                let env = Env::from([("x".to_string(), a)]);
                assert_eq!(ev.eval(&env).unwrap(), i.contains(a), "{name}: {}", c.morphisms[a].name);
            }
        }
    }
}

#[test]
fn quasi_iso_collapses_on_parallel_morphisms() {
    for (name, c) in category_corpus() {
        for i in isographs(&c) {
            let n = c.num_morphisms();
            for p in 0..n {
                for q in 0..n {
                    if c.dom(p) == c.dom(q) && c.cod(p) == c.cod(q) {
                        assert_eq!(i.quasi_iso(p, q), p == q, "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn iso_atom_expands_to_quasi_iso() {
    let sig = l_homo_iso();
    let iso = catmod::logic::parse_formula_in(
        "Iso(p, q)",
        &sig,
        &[("p".to_string(), "m".to_string()), ("q".to_string(), "m".to_string())]
            .into_iter()
            .collect(),
    )
    .unwrap();
    for (name, c) in small_corpus(12) {
        for i in isographs(&c) {
            let model = HomotopicModel::new(&i);
            let ev = model.evaluator(&iso).unwrap();
            for p in 0..c.num_morphisms() {
                for q in 0..c.num_morphisms() {
                    let env = Env::from([("p".to_string(), p), ("q".to_string(), q)]);
                    assert_eq!(ev.eval(&env).unwrap(), i.quasi_iso(p, q), "{name}: ({p},{q})");
                }
            }
        }
    }
}

#[test]
fn evaluation_examples() {
    let t = terminal_category();
    let phi = parse_homotopic("forall x:m. QC(x,x,x)", &Signature::l_homo()).unwrap();
    assert!(eval_homotopic(&build_isograph(&t), &phi, &Env::new()).unwrap());

    let eq = parse_formula("forall x:m. exists y:m. x = y", &Signature::l_homo()).unwrap();
    assert!(matches!(
        eval_homotopic(&build_isograph(&t), &eq, &Env::new()),
        Err(Error::EqualityForbidden(_))
    ));

    // parallel distinct arrows of a skeletal category are not ≅
    let par = parallel_category();
    assert!(is_skeletal(&par));
    let model = HomotopicModel::new(&build_isograph(&par));
    let iso = parse_formula("exists p:m. exists q:m. QC(p,p,p) & Iso(p, q)", &l_homo_iso()).unwrap();
    assert!(model.eval(&iso, &Env::new()).is_ok());
    let arrows: Vec<&str> = par
        .morphisms
        .iter()
        .filter(|m| m.dom != m.cod)
        .map(|m| m.name.as_str())
        .collect();
    let phi = catmod::logic::parse_formula_in(
        "Iso(p, q)",
        &l_homo_iso(),
        &[("p".to_string(), "m".to_string()), ("q".to_string(), "m".to_string())]
            .into_iter()
            .collect(),
    )
    .unwrap();
    let env = model.env(&[("p", arrows[0]), ("q", arrows[1])]).unwrap();
    assert!(!model.eval(&phi, &env).unwrap());
    let env = model.env(&[("p", arrows[0]), ("q", arrows[0])]).unwrap();
    assert!(model.eval(&phi, &env).unwrap());
}

#[test]
fn collapse_to_skeleton_preserves_and_reflects_qc() {
    for (name, c) in category_corpus() {
        for i in isographs(&c) {
            let g = i.collapse();
            assert!(g.is_valid() && g.is_full() && g.is_faithful(), "{name}");
            assert!(i.arrows().iter().all(|&f| g.target.is_identity(g.mor(f))), "{name}");
            let j = build_isograph(&g.target);
            let n = c.num_morphisms();
            for f in 0..n {
                for gg in 0..n {
                    for h in 0..n {
                        assert_eq!(
                            i.qc(f, gg, h),
                            j.qc(g.mor(f), g.mor(gg), g.mor(h)),
                            "{name}: ({f},{gg},{h})"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn truth_does_not_depend_on_the_isograph() {
    for (name, c) in small_corpus(20) {
        let all = isographs(&c);
        if all.len() < 2 {
            continue;
        }
        for other in &all[1..] {
            let report = agreement_test_with(&all[0], other, 2, 7, usize::MAX, 0).unwrap();
            assert!(report.exhaustive && report.agree(), "{name}: {:?}", report.certificates);
        }
    }
}

fn diagrams(c: &FinCategory) -> Vec<Diagram> {
    let n = c.num_objects();
    let mut out = vec![empty_diagram(c)];
    for a in 0..n {
        for b in 0..n {
            out.push(pair_diagram(c, a, b));
        }
    }
    for f in 0..c.num_morphisms() {
        for g in 0..c.num_morphisms() {
            if c.dom(f) == c.dom(g) && c.cod(f) == c.cod(g) {
                out.push(parallel_diagram(c, f, g));
            }
        }
    }
    out
}

#[test]
fn qlim_matches_limit_existence() {
    let caps = Caps::default();
    for (name, c) in small_corpus(16) {
        let i = build_isograph(&c);
        let op = c.opposite();
        let iop = build_isograph(&op);
        for d in diagrams(&c) {
            assert_eq!(
                qlim_holds(&i, &d, &caps).unwrap(),
                limit_of(&c, &d, false).is_some(),
                "{name}: limit"
            );
            assert_eq!(
                qlim_holds(&iop, &d.opposite(), &caps).unwrap(),
                limit_of(&c, &d, true).is_some(),
                "{name}: colimit"
            );
        }
    }
}

#[test]
fn qlim_examples() {
    let caps = Caps::default();
    let lattice = boolean_lattice();
    let (l, r) = (lattice.object_index("l").unwrap(), lattice.object_index("r").unwrap());
    let i = build_isograph(&lattice);
    assert!(qlim_holds(&i, &pair_diagram(&lattice, l, r), &caps).unwrap());
    assert!(qlim_holds(&i, &empty_diagram(&lattice), &caps).unwrap());

    let d2 = discrete_category(2);
    assert!(!qlim_holds(&build_isograph(&d2), &pair_diagram(&d2, 0, 1), &caps).unwrap());
    assert!(!qlim_holds(&build_isograph(&d2), &empty_diagram(&d2), &caps).unwrap());

    let shape = discrete_shape(4);
    let big = Diagram::new(Functor::new(shape.clone(), terminal_category(), vec![0; 4], vec![0; 4]).unwrap());
    assert!(matches!(
        qlim_holds(&build_isograph(&terminal_category()), &big, &caps),
        Err(Error::BoundsExceeded(_))
    ));
}

#[test]
fn categories_agree_with_their_skeletons() {
    for (name, c) in small_corpus(20) {
        if is_skeletal(&c) {
            continue;
        }
        let (sk, _) = skeleton(&c);
        let report = agreement_test(&c, &sk, 2, 7, usize::MAX, 1).unwrap();
        assert!(report.exhaustive && report.agree(), "{name}: {:?}", report.certificates);
        let sampled = agreement_test(&c, &sk, 3, 9, 40, 1).unwrap();
        assert!(
            !sampled.exhaustive && sampled.agree(),
            "{name}: {:?}",
            sampled.certificates
        );
        assert_eq!(sampled.sampled, 40);
    }
    let c = codiscrete_category(3);
    assert!(agreement_test(&c, &c, 2, 7, usize::MAX, 0).unwrap().agree());
}

#[test]
fn inequivalent_categories_get_a_certificate() {
    let (a, b) = (terminal_category(), discrete_category(2));
    assert!(are_equivalent(&a, &b).is_none());
    let report = agreement_test(&a, &b, 2, 7, usize::MAX, 0).unwrap();
    assert_eq!(report.certificates.len(), 1);
    let cert = &report.certificates[0];
    assert_ne!(cert.value_c, cert.value_d);
    let phi = parse_homotopic(&cert.sentence, &Signature::l_homo()).unwrap();
    assert_eq!(
        eval_homotopic(&build_isograph(&a), &phi, &Env::new()).unwrap(),
        cert.value_c
    );
    assert_eq!(
        eval_homotopic(&build_isograph(&b), &phi, &Env::new()).unwrap(),
        cert.value_d
    );
    let json = serde_json::to_value(cert).unwrap();
    assert!(json.get("valueC").is_some() && json.get("isographs").is_some());
}

#[test]
fn translation_examples() {
    let sig = Signature::l_cat();
    let phi = parse_formula("forall X:o. Id(X) o Id(X) = Id(X)", &sig).unwrap();
    let t = translate_lcat(&phi).unwrap();
    assert!(t.to_string().contains("QC(X, X, X)"), "{t}");
    assert!(t.is_equality_free());

    let axiom = parse_formula(
        "forall f:m. forall g:m. rng(f) = dom(g) -> dom(g o f) = dom(f) & rng(g o f) = rng(g)",
        &sig,
    )
    .unwrap();
    let t = translate_lcat(&axiom).unwrap();
    for (name, c) in small_corpus(12).into_iter().filter(|(_, c)| is_skeletal(c)) {
        assert!(eval_sentence(&c.to_structure(), &axiom).unwrap());
        let v = eval_homotopic(&build_isograph(&c), &t, &Env::new()).unwrap();
        assert!(v, "{name}");
    }
}

#[test]
fn translation_preserves_truth_on_skeletal_categories() {
    let space = SentenceSpace::new(&Signature::l_cat(), 2, 5, false, &Caps::default()).unwrap();
    let sentences: Vec<_> = space.iter().collect();
    assert!(sentences.len() > 100);
    let translated: Vec<_> = sentences.iter().map(|s| translate_lcat(s).unwrap()).collect();
    for (name, c) in small_corpus(8).into_iter().filter(|(_, c)| is_skeletal(c)) {
        let lcat = c.to_structure();
        let model = HomotopicModel::new(&build_isograph(&c));
        for (phi, t) in sentences.iter().zip(&translated) {
            assert_eq!(
                eval_sentence(&lcat, phi).unwrap(),
                model.eval(t, &Env::new()).unwrap(),
                "{name}: {phi} vs {t}"
            );
        }
    }
}
