use catmod::logic::*;
use catmod::structures::FinStructure;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sig() -> Signature {
    Signature::new(&["s"])
        .with_constant("c", "s")
        .with_function("f", &["s"], "s", true)
        .with_relation("P", &["s"])
        .with_relation("R", &["s", "s"])
}

fn random_term(rng: &mut ChaCha8Rng, scope: &[String], depth: usize) -> Term {
    let pick = rng.gen_range(0..4);
    if depth > 0 && pick == 0 {
        return Term::app("f", vec![random_term(rng, scope, depth - 1)]);
    }
    if scope.is_empty() || pick == 1 {
        Term::constant("c")
    } else {
        Term::var(&scope[rng.gen_range(0..scope.len())])
    }
}

fn random_formula(rng: &mut ChaCha8Rng, scope: &mut Vec<String>, depth: usize) -> Formula {
    let choice = if depth == 0 {
        rng.gen_range(0..3)
    } else {
        rng.gen_range(0..10)
    };
    match choice {
        0 => Formula::atom("P", vec![random_term(rng, scope, 1)]),
        1 => Formula::atom("R", vec![random_term(rng, scope, 1), random_term(rng, scope, 1)]),
        2 => Formula::eq(random_term(rng, scope, 1), random_term(rng, scope, 1)),
        3 => Formula::not(random_formula(rng, scope, depth - 1)),
        4 => Formula::and(
            random_formula(rng, scope, depth - 1),
            random_formula(rng, scope, depth - 1),
        ),
        5 => Formula::or(
            random_formula(rng, scope, depth - 1),
            random_formula(rng, scope, depth - 1),
        ),
        6 => Formula::implies(
            random_formula(rng, scope, depth - 1),
            random_formula(rng, scope, depth - 1),
        ),
        7 => Formula::iff(
            random_formula(rng, scope, depth - 1),
            random_formula(rng, scope, depth - 1),
        ),
        q => {
            let v = format!("v{}", scope.len());
            scope.push(v.clone());
            let body = random_formula(rng, scope, depth - 1);
            scope.pop();
            if q == 8 {
                Formula::forall(&v, "s", body)
            } else {
                Formula::exists(&v, "s", body)
            }
        }
    }
}

fn random_sentence(seed: u64) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_formula(&mut rng, &mut Vec::new(), 4)
}

fn random_structure(seed: u64) -> FinStructure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let mut m = FinStructure::blank(&sig(), &[n]);
    m.consts.insert("c".into(), rng.gen_range(0..n));
    for x in 0..n {
        let v = rng.gen_range(0..=n);
        m.funcs.get_mut("f").unwrap().set(&[x], (v < n).then_some(v));
        m.rels.get_mut("P").unwrap().set(&[x], rng.gen());
        for y in 0..n {
            m.rels.get_mut("R").unwrap().set(&[x, y], rng.gen());
        }
    }
    m
}

/// Adds an element for "undefined", a predicate `D` for the old carrier,
/// and makes `f` total.
fn totalize(m: &FinStructure) -> FinStructure {
    let n = m.size(0);
    let sig = Signature::new(&["s"])
        .with_constant("c", "s")
        .with_function("f", &["s"], "s", false)
        .with_relation("P", &["s"])
        .with_relation("R", &["s", "s"])
        .with_relation("D", &["s"]);
    let mut t = FinStructure::blank(&sig, &[n + 1]);
    t.consts.insert("c".into(), m.constant("c"));
    for x in 0..=n {
        let v = if x < n { m.apply("f", &[x]).unwrap_or(n) } else { n };
        t.funcs.get_mut("f").unwrap().set(&[x], Some(v));
        if x < n {
            t.rels.get_mut("D").unwrap().set(&[x], true);
            t.rels.get_mut("P").unwrap().set(&[x], m.holds("P", &[x]));
            for y in 0..n {
                t.rels.get_mut("R").unwrap().set(&[x, y], m.holds("R", &[x, y]));
            }
        }
    }
    t
}

/// Relativizes quantifiers to `D` and guards atoms with definedness.
fn guard(phi: &Formula) -> Formula {
    let defined = |ts: &[Term]| {
        ts.iter()
            .map(|t| Formula::atom("D", vec![t.clone()]))
            .collect::<Vec<_>>()
    };
    let guarded = |atom: Formula, ts: &[Term]| {
        let mut parts = defined(ts);
        parts.push(atom);
        Formula::conj(parts).unwrap()
    };
    match phi {
        Formula::Atom(_, ts) => guarded(phi.clone(), ts),
        Formula::Eq(a, b) => guarded(phi.clone(), &[a.clone(), b.clone()]),
        Formula::Not(a) => Formula::not(guard(a)),
        Formula::And(a, b) => Formula::and(guard(a), guard(b)),
        Formula::Or(a, b) => Formula::or(guard(a), guard(b)),
        Formula::Implies(a, b) => Formula::implies(guard(a), guard(b)),
        Formula::Iff(a, b) => Formula::iff(guard(a), guard(b)),
        Formula::Forall(v, s, a) => {
            Formula::forall(v, s, Formula::implies(Formula::atom("D", vec![Term::var(v)]), guard(a)))
        }
        Formula::Exists(v, s, a) => {
            Formula::exists(v, s, Formula::and(Formula::atom("D", vec![Term::var(v)]), guard(a)))
        }
    }
}

proptest! {
    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let phi = random_sentence(seed);
        let text = phi.to_string();
        let back = parse_formula(&text, &sig()).unwrap();
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn de_morgan(seed in any::<u64>(), mseed in any::<u64>()) {
        let a = random_sentence(seed);
        let b = random_sentence(seed.wrapping_add(1));
        let m = random_structure(mseed);
        let lhs = Formula::not(Formula::and(a.clone(), b.clone()));
        let rhs = Formula::or(Formula::not(a.clone()), Formula::not(b.clone()));
        prop_assert_eq!(eval_sentence(&m, &lhs).unwrap(), eval_sentence(&m, &rhs).unwrap());
        let lhs = Formula::not(Formula::forall("w", "s", Formula::atom("P", vec![Term::var("w")])));
        let rhs = Formula::exists("w", "s", Formula::not(Formula::atom("P", vec![Term::var("w")])));
        prop_assert_eq!(eval_sentence(&m, &lhs).unwrap(), eval_sentence(&m, &rhs).unwrap());
    }

    #[test]
    fn free_logic_matches_totalized_twin(seed in any::<u64>(), mseed in any::<u64>()) {
        let phi = random_sentence(seed);
        let m = random_structure(mseed);
        let t = totalize(&m);
        prop_assert_eq!(eval_sentence(&m, &phi).unwrap(), eval_sentence(&t, &guard(&phi)).unwrap());
    }

    #[test]
    fn enumeration_is_indexed_consistently(index in 0u128..5000) {
        let space = enumerate_sentences(&Signature::l_homo(), 2, 7, true).unwrap();
        let index = index % space.len();
        let phi = space.get(index).unwrap();
        prop_assert!(phi.is_sentence());
        prop_assert!(phi.is_equality_free());
        prop_assert!(phi.depth() <= 2 && phi.size() <= 7);
    }
}

#[test]
fn undefined_terms_are_false_in_atoms() {
    let mut m = FinStructure::blank(&sig(), &[2]);
    m.funcs.get_mut("f").unwrap().set(&[0], Some(1));
    let s = sig();
    assert!(!eval_sentence(&m, &parse_formula("f(f(c)) = f(f(c))", &s).unwrap()).unwrap());
    assert!(eval_sentence(&m, &parse_formula("~ f(f(c)) = f(f(c))", &s).unwrap()).unwrap());
    assert!(eval_sentence(&m, &parse_formula("f(c) = f(c)", &s).unwrap()).unwrap());
    assert!(eval_sentence(&m, &parse_formula("exists x:s. ~ f(x) = f(x)", &s).unwrap()).unwrap());
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_formula("forall x:s. P(x) &", &sig()).unwrap_err();
    assert!(matches!(err, catmod::Error::Syntax { .. }));
    assert!(matches!(
        parse_formula("P(y)", &sig()).unwrap_err(),
        catmod::Error::UnboundVariable(_)
    ));
    assert!(parse_homotopic("forall x:m. x = x", &Signature::l_homo()).is_err());
}
