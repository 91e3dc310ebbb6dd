use std::collections::BTreeSet;

use super::isograph::IsoGraph;
use crate::label::Label;
use crate::logic::{eval_formula, Env, Evaluator, Formula, Signature, Term, QC};
use crate::structures::FinStructure;
use crate::{Error, Result};

/// The `≅` atom accepted on input; it is expanded into `QC` before
/// evaluation.
pub const ISO: &str = "Iso";

/// `L_homo` together with the binary `Iso` predicate.
pub fn l_homo_iso() -> Signature {
    Signature::l_homo().with_relation(ISO, &["m", "m"])
}

impl IsoGraph {
    /// `QC(f, g, h)` for `f: A → B`, `g: C → D`, `h: P → Q`: the arrows
    /// `P ⇒ A`, `B ⇒ C` and `Q ⇒ D` exist and `(Q ⇒ D) h = g (B ⇒ C) f (P ⇒ A)`.
    pub fn qc(&self, f: usize, g: usize, h: usize) -> bool {
        let c = &self.host;
        let (Some(pa), Some(bc), Some(qd)) = (
            self.chosen(c.dom(h), c.dom(f)),
            self.chosen(c.cod(f), c.dom(g)),
            self.chosen(c.cod(h), c.cod(g)),
        ) else {
            return false;
        };
        let lower = c.compose(g, c.compose(bc, c.compose(f, pa)));
        c.compose(qd, h) == lower
    }

    /// `p ≅ q` for `p: A → B`, `q: C → D`: the square through `A ⇒ C` and
    /// `B ⇒ D` commutes.
    pub fn quasi_iso(&self, p: usize, q: usize) -> bool {
        let c = &self.host;
        match (self.chosen(c.dom(p), c.dom(q)), self.chosen(c.cod(p), c.cod(q))) {
            (Some(ac), Some(bd)) => c.compose(bd, p) == c.compose(q, ac),
            _ => false,
        }
    }

    /// The host as an `L_homo` structure on its morphisms.
    pub fn homo_structure(&self) -> FinStructure {
        let c = &self.host;
        let n = c.num_morphisms();
        let mut s = FinStructure::blank(&Signature::l_homo(), &[n]);
        s.names[0] = c.morphisms.iter().map(|m| Label::from(m.name.as_str())).collect();
        let table = s.rels.get_mut(QC).unwrap();
        for f in 0..n {
            for g in 0..n {
                for h in 0..n {
                    if self.qc(f, g, h) {
                        table.set(&[f, g, h], true);
                    }
                }
            }
        }
        s
    }
}

/// Supplies variable names unused by a given formula.
pub(crate) struct Fresh {
    taken: BTreeSet<String>,
    next: usize,
}

impl Fresh {
    pub(crate) fn for_formula(phi: &Formula) -> Fresh {
        let mut taken = BTreeSet::new();
        collect_names(phi, &mut taken);
        Fresh { taken, next: 0 }
    }

    pub(crate) fn var(&mut self, prefix: &str) -> String {
        loop {
            let name = format!("{prefix}{}", self.next);
            self.next += 1;
            if self.taken.insert(name.clone()) {
                return name;
            }
        }
    }
}

fn collect_names(phi: &Formula, out: &mut BTreeSet<String>) {
    match phi {
        Formula::Atom(_, args) => args.iter().for_each(|t| t.vars(out)),
        Formula::Eq(a, b) => {
            a.vars(out);
            b.vars(out);
        }
        Formula::Not(a) => collect_names(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            collect_names(a, out);
            collect_names(b, out);
        }
        Formula::Forall(v, _, body) | Formula::Exists(v, _, body) => {
            out.insert(v.clone());
            collect_names(body, out);
        }
    }
}

fn qc_atom(f: &Term, g: &Term, h: &Term) -> Formula {
    Formula::atom(QC, vec![f.clone(), g.clone(), h.clone()])
}

/// `∀p [(∃q QC(a, p, q)) → QC(a, p, p)]`, which holds exactly of the arrows
/// of the iso-graph.
pub(crate) fn i_morphism_formula(a: &Term, fresh: &mut Fresh) -> Formula {
    let p = fresh.var("p");
    let q = fresh.var("q");
    let (tp, tq) = (Term::var(&p), Term::var(&q));
    Formula::forall(
        &p,
        "m",
        Formula::implies(Formula::exists(&q, "m", qc_atom(a, &tp, &tq)), qc_atom(a, &tp, &tp)),
    )
}

/// `∃a [a is an iso-graph arrow ∧ QC(a, p, q)]`, which defines `p ≅ q`.
pub(crate) fn iso_formula(p: &Term, q: &Term, fresh: &mut Fresh) -> Formula {
    let a = fresh.var("a");
    let ta = Term::var(&a);
    Formula::exists(
        &a,
        "m",
        Formula::and(i_morphism_formula(&ta, fresh), qc_atom(&ta, p, q)),
    )
}

/// The formula `x` is an iso-graph arrow, over `L_homo`.
pub fn i_morphism(x: &str) -> Formula {
    let mut fresh = Fresh::for_formula(&Formula::atom(QC, vec![Term::var(x); 3]));
    i_morphism_formula(&Term::var(x), &mut fresh)
}

/// Replaces every `Iso(p, q)` atom by its `QC` definition.
pub fn expand_iso(phi: &Formula) -> Formula {
    fn go(phi: &Formula, fresh: &mut Fresh) -> Formula {
        match phi {
            Formula::Atom(r, args) if r == ISO && args.len() == 2 => iso_formula(&args[0], &args[1], fresh),
            Formula::Atom(..) | Formula::Eq(..) => phi.clone(),
            Formula::Not(a) => Formula::not(go(a, fresh)),
            Formula::And(a, b) => Formula::and(go(a, fresh), go(b, fresh)),
            Formula::Or(a, b) => Formula::or(go(a, fresh), go(b, fresh)),
            Formula::Implies(a, b) => Formula::implies(go(a, fresh), go(b, fresh)),
            Formula::Iff(a, b) => Formula::iff(go(a, fresh), go(b, fresh)),
            Formula::Forall(v, s, body) => Formula::forall(v, s, go(body, fresh)),
            Formula::Exists(v, s, body) => Formula::exists(v, s, go(body, fresh)),
        }
    }
    go(phi, &mut Fresh::for_formula(phi))
}

/// A category with a fixed iso-graph, viewed as an `L_homo` structure.
pub struct HomotopicModel {
    pub isograph: IsoGraph,
    pub structure: FinStructure,
}

impl HomotopicModel {
    pub fn new(isograph: &IsoGraph) -> HomotopicModel {
        HomotopicModel {
            structure: isograph.homo_structure(),
            isograph: isograph.clone(),
        }
    }

    /// Truth of an equality-free formula, possibly using `Iso`, with free
    /// variables bound to morphism indices by `env`.
    pub fn eval(&self, phi: &Formula, env: &Env) -> Result<bool> {
        eval_formula(&self.structure, &prepare(phi)?, env)
    }

    /// Compiles `phi` once for repeated evaluation.
    pub fn evaluator(&self, phi: &Formula) -> Result<Evaluator<'_>> {
        Evaluator::new(&self.structure, &prepare(phi)?)
    }

    /// Binds variables to morphisms given by name.
    pub fn env(&self, bindings: &[(&str, &str)]) -> Result<Env> {
        bindings
            .iter()
            .map(|&(v, m)| {
                let f = self
                    .isograph
                    .host
                    .morphism_index(m)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown morphism `{m}`")))?;
                Ok((v.to_string(), f))
            })
            .collect()
    }
}

fn prepare(phi: &Formula) -> Result<Formula> {
    if !phi.is_equality_free() {
        return Err(Error::EqualityForbidden(phi.to_string()));
    }
    Ok(expand_iso(phi))
}

/// Truth of a homotopic formula in the host of `i`.
pub fn eval_homotopic(i: &IsoGraph, phi: &Formula, env: &Env) -> Result<bool> {
    HomotopicModel::new(i).eval(phi, env)
}
