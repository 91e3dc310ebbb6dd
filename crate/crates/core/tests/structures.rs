use catmod::fixtures::*;
use catmod::logic::{bounded_agreement, Signature};
use catmod::structures::*;
use catmod::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_digraph(rng: &mut ChaCha8Rng, max: usize) -> FinStructure {
    let n = rng.gen_range(1..=max);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|_| rng.gen_bool(0.4))
        .collect();
    digraph(n, &edges)
}

#[test]
fn homomorphism_search_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let a = random_digraph(&mut rng, 4);
        let b = random_digraph(&mut rng, 4);
        for strong in [false, true] {
            let expected: Vec<Homomorphism> = all_maps(&a, &b)
                .into_iter()
                .filter(|h| {
                    if strong {
                        is_strong(&a, &b, h)
                    } else {
                        is_homomorphism(&a, &b, h)
                    }
                })
                .collect();
            assert_eq!(enumerate_homomorphisms(&a, &b, strong).unwrap(), expected);
        }
    }
    for (x, y) in [(2, 3), (3, 3), (4, 2), (2, 4), (4, 4)] {
        let (a, b) = (cyclic_group(x), cyclic_group(y));
        let expected = all_maps(&a, &b)
            .into_iter()
            .filter(|h| is_homomorphism(&a, &b, h))
            .count();
        assert_eq!(count_homomorphisms(&a, &b, false).unwrap(), expected);
    }
}

#[test]
fn group_hom_counts() {
    assert_eq!(
        count_homomorphisms(&cyclic_group(2), &cyclic_group(3), false).unwrap(),
        1
    );
    assert_eq!(
        count_homomorphisms(&cyclic_group(2), &cyclic_group(2), false).unwrap(),
        2
    );
    assert_eq!(count_homomorphisms(&bare_set(2), &bare_set(2), false).unwrap(), 4);
    assert_eq!(count_homomorphisms(&bare_set(3), &bare_set(3), false).unwrap(), 27);
}

#[test]
fn isomorphism_and_canonical_form() {
    let z4 = cyclic_group(4);
    let v4 = abelian_group(&[2, 2]);
    assert!(are_isomorphic(&z4, &v4).unwrap().is_none());
    let z6 = cyclic_group(6);
    let z2z3 = abelian_group(&[2, 3]);
    let iso = are_isomorphic(&z6, &z2z3).unwrap().unwrap();
    assert!(is_homomorphism(&z6, &z2z3, &iso) && iso.is_injective());
    assert_eq!(canonical_form(&z6).0, canonical_form(&z2z3).0);
    assert_ne!(canonical_form(&z4).0, canonical_form(&v4).0);
    let perm = vec![vec![2, 0, 3, 1]];
    assert_eq!(canonical_form(&relabel(&z4, &perm)).0, canonical_form(&z4).0);
}

#[test]
fn ef_games_on_sets() {
    assert!(ef_equivalent(&bare_set(5), &bare_set(7), 3).unwrap());
    assert!(!ef_equivalent(&bare_set(2), &bare_set(3), 3).unwrap());
    assert!(ef_equivalent(&bare_set(2), &bare_set(3), 2).unwrap());
    assert!(matches!(
        ef_equivalent(&bare_set(2), &bare_set(3), 6),
        Err(Error::BoundsExceeded(_))
    ));
}

#[test]
fn ef_matches_sentence_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..15 {
        let a = random_digraph(&mut rng, 3);
        let b = random_digraph(&mut rng, 3);
        for k in 0..=2 {
            let ef = ef_equivalent(&a, &b, k).unwrap();
            let agree = bounded_agreement(&a, &b, k, None, false).unwrap();
            assert_eq!(ef, agree.agree);
            if let Some(w) = agree.witness {
                assert!(w.depth() <= k);
            }
        }
    }
}

#[test]
fn term_algebras() {
    let (t, terms) = term_algebra(&Signature::new(&["s"]), 100).unwrap();
    assert_eq!(t.size(0), 1);
    assert_eq!(terms[0][0].to_string(), TERM_VARIABLE);
    let two = Signature::new(&["s"]).with_constant("a", "s").with_constant("b", "s");
    assert_eq!(term_algebra(&two, 100).unwrap().0.size(0), 3);
    assert!(matches!(
        term_algebra(&Signature::group(), 50),
        Err(Error::TermAlgebraInfinite { .. })
    ));
}

#[test]
fn term_algebra_represents_underlying_set() {
    // Hom(T, M) is in bijection with |M| through the image of x.
    let sig = Signature::new(&["s"]).with_constant("a", "s");
    let (t, _) = term_algebra(&sig, 100).unwrap();
    for n in 1..=3 {
        for c in 0..n {
            let mut m = FinStructure::blank(&sig, &[n]);
            m.consts.insert("a".into(), c);
            let homs = enumerate_homomorphisms(&t, &m, false).unwrap();
            assert_eq!(homs.len(), n);
        }
    }
}

#[test]
fn pullback_is_the_unique_strong_expansion() {
    let m = unary_predicate(3, &[0, 2]);
    let n = bare_set(2);
    for f in all_maps(&n, &m.function_reduct()) {
        let p = pullback_structure(&f, &m, &n).unwrap();
        assert!(is_strong(&p, &m, &f));
        let strong_expansions = (0..4u32)
            .map(|bits| unary_predicate(2, &(0..2).filter(|i| bits & (1 << i) != 0).collect::<Vec<_>>()))
            .filter(|e| is_strong(e, &m, &f))
            .count();
        assert_eq!(strong_expansions, 1);
    }
    let g = cyclic_group(2);
    let bad = Homomorphism { maps: vec![vec![1, 0]] };
    assert!(matches!(
        pullback_structure(&bad, &g, &g.function_reduct()),
        Err(Error::NotAReductHom(_))
    ));
}

#[test]
fn model_enumeration() {
    let groups = enumerate_models(&Theory::abelian_groups(), 4).unwrap();
    assert_eq!(groups.len(), 5);
    assert_eq!(enumerate_models(&Theory::exactly(2), 4).unwrap().len(), 1);
    let empty = Theory::parse(Signature::new(&["s"]), &["exists x:s. ~x = x"]).unwrap();
    assert!(enumerate_models(&empty, 3).unwrap().is_empty());
    // One model per isomorphism class: k members out of n for n <= 3.
    assert_eq!(
        enumerate_models(&Theory::unary_predicate(), 3).unwrap().len(),
        2 + 3 + 4
    );
}

#[test]
fn structure_validation() {
    let mut raw = cyclic_group(3).to_raw();
    raw.funcs.get_mut("+").unwrap().map[0][2] = "7".into();
    let report = validate_structure(&raw);
    assert_eq!(report.len(), 1);
    let back = FinStructure::from_raw(&cyclic_group(3).to_raw()).unwrap();
    assert_eq!(back, cyclic_group(3));
}
