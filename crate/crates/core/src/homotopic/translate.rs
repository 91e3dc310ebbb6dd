use super::qc::{i_morphism_formula, Fresh, ISO};
use crate::logic::{Formula, Term, COMP, DOM, ID, QC, RNG};
use crate::{Error, Result};

/// Translates an `L_cat` formula into an equality-free formula over the
/// morphisms, valid in skeletal categories with their discrete iso-graph.
///
/// An object is represented by its identity, so object quantifiers range
/// over the iso-graph arrows. `dom f = a` becomes `QC(a, f, f)`,
/// `rng f = b` becomes `QC(f, b, f)`, `h = g o f` becomes `QC(f, g, h)` and
/// the remaining equalities become `Iso`. Nested terms are named by
/// existentially quantified variables, so an atom with an undefined term is
/// false as in the source semantics.
pub fn translate_lcat(phi: &Formula) -> Result<Formula> {
    let mut fresh = Fresh::for_formula(phi);
    tr(phi, &mut fresh)
}

fn qc(f: &str, g: &str, h: &str) -> Formula {
    Formula::atom(QC, vec![Term::var(f), Term::var(g), Term::var(h)])
}

/// Names a term by a variable: the variable, the conditions it must meet
/// and the auxiliary variables to quantify.
struct Named {
    var: String,
    conds: Vec<Formula>,
    aux: Vec<String>,
}

fn name_term(t: &Term, fresh: &mut Fresh) -> Result<Named> {
    match t {
        Term::Var(v) => Ok(Named {
            var: v.clone(),
            conds: Vec::new(),
            aux: Vec::new(),
        }),
        Term::Const(c) => Err(Error::Sort(format!("unexpected constant `{c}` in an L_cat formula"))),
        Term::App(f, args) if f == ID && args.len() == 1 => name_term(&args[0], fresh),
        Term::App(f, args) if (f == DOM || f == RNG) && args.len() == 1 => {
            let mut inner = name_term(&args[0], fresh)?;
            let v = fresh.var("o");
            inner.conds.push(i_morphism_formula(&Term::var(&v), fresh));
            inner.conds.push(if f == DOM {
                qc(&v, &inner.var, &inner.var)
            } else {
                qc(&inner.var, &v, &inner.var)
            });
            inner.aux.push(v.clone());
            inner.var = v;
            Ok(inner)
        }
        Term::App(f, args) if f == COMP && args.len() == 2 => {
            let g = name_term(&args[0], fresh)?;
            let h = name_term(&args[1], fresh)?;
            let v = fresh.var("c");
            let mut conds = h.conds;
            conds.extend(g.conds);
            conds.push(qc(&h.var, &g.var, &v));
            let mut aux = h.aux;
            aux.extend(g.aux);
            aux.push(v.clone());
            Ok(Named { var: v, conds, aux })
        }
        Term::App(f, _) => Err(Error::Sort(format!("`{f}` is not an L_cat function symbol"))),
    }
}

/// Closes `conds ∧ last` under `∃` for the auxiliary variables.
fn close(aux: Vec<String>, mut conds: Vec<Formula>, last: Option<Formula>) -> Formula {
    conds.extend(last);
    let body = Formula::conj(conds).expect("at least one condition");
    aux.iter().rev().fold(body, |acc, v| Formula::exists(v, "m", acc))
}

/// Substitutes `by` for the free occurrences of `v`. The bound variables of
/// the conditions are fresh, so nothing is captured.
fn rename(phi: &Formula, v: &str, by: &str) -> Formula {
    let sub = |t: &Term| match t {
        Term::Var(x) if x == v => Term::var(by),
        _ => t.clone(),
    };
    match phi {
        Formula::Atom(r, args) => Formula::atom(r, args.iter().map(sub).collect()),
        Formula::Eq(a, b) => Formula::eq(sub(a), sub(b)),
        Formula::Not(a) => Formula::not(rename(a, v, by)),
        Formula::And(a, b) => Formula::and(rename(a, v, by), rename(b, v, by)),
        Formula::Or(a, b) => Formula::or(rename(a, v, by), rename(b, v, by)),
        Formula::Implies(a, b) => Formula::implies(rename(a, v, by), rename(b, v, by)),
        Formula::Iff(a, b) => Formula::iff(rename(a, v, by), rename(b, v, by)),
        Formula::Forall(x, _, _) | Formula::Exists(x, _, _) if x == v => phi.clone(),
        Formula::Forall(x, s, body) => Formula::forall(x, s, rename(body, v, by)),
        Formula::Exists(x, s, body) => Formula::exists(x, s, rename(body, v, by)),
    }
}

fn tr(phi: &Formula, fresh: &mut Fresh) -> Result<Formula> {
    Ok(match phi {
        Formula::Atom(r, _) => return Err(Error::Sort(format!("`{r}` is not an L_cat relation"))),
        Formula::Eq(a, b) => {
            let (na, nb) = (name_term(a, fresh)?, name_term(b, fresh)?);
            match (na.aux.is_empty(), nb.aux.is_empty()) {
                (true, true) => Formula::atom(ISO, vec![Term::var(&na.var), Term::var(&nb.var)]),
                // `x = t`: let `x` itself name the outermost step of `t`
                (true, false) | (false, true) => {
                    let (x, mut t) = if na.aux.is_empty() { (na.var, nb) } else { (nb.var, na) };
                    let top = t.aux.pop().unwrap();
                    let conds = t.conds.iter().map(|c| rename(c, &top, &x)).collect();
                    close(t.aux, conds, None)
                }
                (false, false) => {
                    let mut aux = na.aux;
                    aux.extend(nb.aux);
                    let mut conds = na.conds;
                    conds.extend(nb.conds);
                    let iso = Formula::atom(ISO, vec![Term::var(&na.var), Term::var(&nb.var)]);
                    close(aux, conds, Some(iso))
                }
            }
        }
        Formula::Not(a) => Formula::not(tr(a, fresh)?),
        Formula::And(a, b) => Formula::and(tr(a, fresh)?, tr(b, fresh)?),
        Formula::Or(a, b) => Formula::or(tr(a, fresh)?, tr(b, fresh)?),
        Formula::Implies(a, b) => Formula::implies(tr(a, fresh)?, tr(b, fresh)?),
        Formula::Iff(a, b) => Formula::iff(tr(a, fresh)?, tr(b, fresh)?),
        Formula::Forall(v, s, body) if s == "o" => Formula::forall(
            v,
            "m",
            Formula::implies(i_morphism_formula(&Term::var(v), fresh), tr(body, fresh)?),
        ),
        Formula::Exists(v, s, body) if s == "o" => Formula::exists(
            v,
            "m",
            Formula::and(i_morphism_formula(&Term::var(v), fresh), tr(body, fresh)?),
        ),
        Formula::Forall(v, _, body) => Formula::forall(v, "m", tr(body, fresh)?),
        Formula::Exists(v, _, body) => Formula::exists(v, "m", tr(body, fresh)?),
    })
}
