//! Evaluation over finite structures with negative free logic: an atom that
//! mentions an undefined term is false.
//!
//! Formulas are compiled to a slot-addressed form first. The same evaluator
//! runs in Kleene three-valued mode over partially filled tables, which the
//! model enumerator uses for pruning.

use std::collections::BTreeMap;

use super::signature::{Signature, SortId};
use super::syntax::{Formula, Term};
use crate::structures::{FinStructure, FuncTable, RelTable};
use crate::{Error, Result};

/// Assignment of free variables to element indices.
pub type Env = BTreeMap<String, usize>;

const MAX_ARITY: usize = 8;

/// Value of a term: not yet known, undefined, or an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Val {
    Unknown,
    Undef,
    El(usize),
}

/// Read access to an interpretation, possibly incomplete. Symbols are
/// addressed by their position among the signature's sorted names.
pub(crate) trait Interp {
    fn sort_size(&self, sort: SortId) -> usize;
    fn constant(&self, c: usize) -> Val;
    fn apply(&self, f: usize, args: &[usize]) -> Val;
    fn holds(&self, r: usize, args: &[usize]) -> Option<bool>;
}

#[derive(Clone, Debug)]
enum CTerm {
    Slot(usize),
    Const(usize),
    App(usize, Vec<CTerm>),
}

#[derive(Clone, Debug)]
enum CForm {
    Rel(usize, Vec<CTerm>),
    Eq(CTerm, CTerm),
    Not(Box<CForm>),
    And(Box<CForm>, Box<CForm>),
    Or(Box<CForm>, Box<CForm>),
    Implies(Box<CForm>, Box<CForm>),
    Iff(Box<CForm>, Box<CForm>),
    Forall(usize, SortId, Box<CForm>),
    Exists(usize, SortId, Box<CForm>),
}

/// A well-sorted formula compiled against a signature.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    root: CForm,
    pub(crate) slots: usize,
    /// Free variables with their slots and sorts.
    pub(crate) free: Vec<(String, usize, SortId)>,
}

/// Sorts of the free variables of `phi`, read off from argument positions.
/// A variable that only ever meets other unsorted variables in equations
/// gets sort 0.
pub(crate) fn infer_free_sorts(phi: &Formula, sig: &Signature) -> BTreeMap<String, SortId> {
    fn term(t: &Term, want: Option<SortId>, sig: &Signature, bound: &[String], out: &mut BTreeMap<String, SortId>) {
        match t {
            Term::Var(v) => {
                if let Some(s) = want {
                    if !bound.contains(v) {
                        out.entry(v.clone()).or_insert(s);
                    }
                }
            }
            Term::Const(_) => {}
            Term::App(f, args) => {
                let profile = sig.function_profile(f).map(|p| p.0).unwrap_or_default();
                for (i, a) in args.iter().enumerate() {
                    term(a, profile.get(i).copied(), sig, bound, out);
                }
            }
        }
    }
    fn walk(
        phi: &Formula,
        sig: &Signature,
        bound: &mut Vec<String>,
        bsorts: &mut Vec<SortId>,
        out: &mut BTreeMap<String, SortId>,
    ) {
        match phi {
            Formula::Atom(r, args) => {
                let profile = sig.relation_profile(r).unwrap_or_default();
                for (i, a) in args.iter().enumerate() {
                    term(a, profile.get(i).copied(), sig, bound, out);
                }
            }
            Formula::Eq(a, b) => {
                let mut ctx: BTreeMap<String, SortId> = out.clone();
                for (v, s) in bound.iter().zip(bsorts.iter()) {
                    ctx.insert(v.clone(), *s);
                }
                let sa = a.sort(sig, &ctx).ok();
                let sb = b.sort(sig, &ctx).ok();
                term(a, sa.or(sb), sig, bound, out);
                term(b, sb.or(sa), sig, bound, out);
            }
            Formula::Not(a) => walk(a, sig, bound, bsorts, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                walk(a, sig, bound, bsorts, out);
                walk(b, sig, bound, bsorts, out);
            }
            Formula::Forall(v, s, body) | Formula::Exists(v, s, body) => {
                bound.push(v.clone());
                bsorts.push(sig.sort_id(s).unwrap_or(0));
                walk(body, sig, bound, bsorts, out);
                bound.pop();
                bsorts.pop();
            }
        }
    }
    let mut out = BTreeMap::new();
    for _ in 0..2 {
        walk(phi, sig, &mut Vec::new(), &mut Vec::new(), &mut out);
    }
    for v in phi.free_vars() {
        out.entry(v).or_insert(0);
    }
    out
}

struct Compiler<'a> {
    sig: &'a Signature,
    scope: Vec<(String, usize)>,
    slots: usize,
}

impl Compiler<'_> {
    fn index<V>(map: &BTreeMap<String, V>, name: &str) -> usize {
        map.keys().position(|k| k == name).expect("checked formula")
    }

    fn slot(&self, v: &str) -> usize {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == v)
            .expect("checked formula")
            .1
    }

    fn term(&self, t: &Term) -> CTerm {
        match t {
            Term::Var(v) => CTerm::Slot(self.slot(v)),
            Term::Const(c) => CTerm::Const(Self::index(&self.sig.constants, c)),
            Term::App(f, args) => CTerm::App(
                Self::index(&self.sig.functions, f),
                args.iter().map(|a| self.term(a)).collect(),
            ),
        }
    }

    fn formula(&mut self, phi: &Formula) -> CForm {
        match phi {
            Formula::Atom(r, args) => CForm::Rel(
                Self::index(&self.sig.relations, r),
                args.iter().map(|a| self.term(a)).collect(),
            ),
            Formula::Eq(a, b) => CForm::Eq(self.term(a), self.term(b)),
            Formula::Not(a) => CForm::Not(Box::new(self.formula(a))),
            Formula::And(a, b) => CForm::And(Box::new(self.formula(a)), Box::new(self.formula(b))),
            Formula::Or(a, b) => CForm::Or(Box::new(self.formula(a)), Box::new(self.formula(b))),
            Formula::Implies(a, b) => CForm::Implies(Box::new(self.formula(a)), Box::new(self.formula(b))),
            Formula::Iff(a, b) => CForm::Iff(Box::new(self.formula(a)), Box::new(self.formula(b))),
            Formula::Forall(v, s, body) | Formula::Exists(v, s, body) => {
                let sort = self.sig.sort_id(s).expect("checked formula");
                let slot = self.slots;
                self.slots += 1;
                self.scope.push((v.clone(), slot));
                let body = Box::new(self.formula(body));
                self.scope.pop();
                if matches!(phi, Formula::Forall(..)) {
                    CForm::Forall(slot, sort, body)
                } else {
                    CForm::Exists(slot, sort, body)
                }
            }
        }
    }
}

impl Compiled {
    /// Checks `phi` against `sig` and compiles it. Any sort or symbol
    /// problem is reported as a signature mismatch.
    pub(crate) fn new(phi: &Formula, sig: &Signature) -> Result<Self> {
        let free_sorts = infer_free_sorts(phi, sig);
        let fail = |e: Error| match e {
            Error::UnboundVariable(v) => Error::UnboundVariable(v),
            other => Error::SignatureMismatch(other.to_string()),
        };
        phi.check(sig, &free_sorts, false).map_err(fail)?;
        for (name, map_len) in [
            ("function", sig.functions.values().map(|f| f.args.len()).max()),
            ("relation", sig.relations.values().map(Vec::len).max()),
        ] {
            if map_len.unwrap_or(0) > MAX_ARITY {
                return Err(Error::BoundsExceeded(format!("{name} arity above {MAX_ARITY}")));
            }
        }
        let mut c = Compiler {
            sig,
            scope: Vec::new(),
            slots: 0,
        };
        let mut free = Vec::new();
        for (v, s) in &free_sorts {
            free.push((v.clone(), c.slots, *s));
            c.scope.push((v.clone(), c.slots));
            c.slots += 1;
        }
        let root = c.formula(phi);
        Ok(Compiled {
            root,
            slots: c.slots,
            free,
        })
    }

    /// Three-valued truth under the slot assignment `asg`.
    pub(crate) fn eval<I: Interp>(&self, interp: &I, asg: &mut [usize]) -> Option<bool> {
        form(&self.root, interp, asg)
    }

    /// Builds the slot vector for `env`, checking coverage and ranges.
    pub(crate) fn assignment<I: Interp>(&self, interp: &I, env: &Env) -> Result<Vec<usize>> {
        let mut asg = vec![0; self.slots];
        for (v, slot, sort) in &self.free {
            let e = *env.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            if e >= interp.sort_size(*sort) {
                return Err(Error::InvalidInput(format!(
                    "variable `{v}` assigned element {e} outside its carrier"
                )));
            }
            asg[*slot] = e;
        }
        Ok(asg)
    }
}

fn term<I: Interp>(t: &CTerm, interp: &I, asg: &[usize]) -> Val {
    match t {
        CTerm::Slot(s) => Val::El(asg[*s]),
        CTerm::Const(c) => interp.constant(*c),
        CTerm::App(f, args) => {
            let mut buf = [0usize; MAX_ARITY];
            let mut unknown = false;
            for (i, a) in args.iter().enumerate() {
                match term(a, interp, asg) {
                    Val::El(e) => buf[i] = e,
                    Val::Undef => return Val::Undef,
                    Val::Unknown => unknown = true,
                }
            }
            if unknown {
                Val::Unknown
            } else {
                interp.apply(*f, &buf[..args.len()])
            }
        }
    }
}

fn form<I: Interp>(f: &CForm, interp: &I, asg: &mut [usize]) -> Option<bool> {
    match f {
        CForm::Rel(r, args) => {
            let mut buf = [0usize; MAX_ARITY];
            let mut unknown = false;
            for (i, a) in args.iter().enumerate() {
                match term(a, interp, asg) {
                    Val::El(e) => buf[i] = e,
                    Val::Undef => return Some(false),
                    Val::Unknown => unknown = true,
                }
            }
            if unknown {
                None
            } else {
                interp.holds(*r, &buf[..args.len()])
            }
        }
        CForm::Eq(a, b) => match (term(a, interp, asg), term(b, interp, asg)) {
            (Val::Undef, _) | (_, Val::Undef) => Some(false),
            (Val::El(x), Val::El(y)) => Some(x == y),
            _ => None,
        },
        CForm::Not(a) => form(a, interp, asg).map(|v| !v),
        CForm::And(a, b) => match form(a, interp, asg) {
            Some(false) => Some(false),
            Some(true) => form(b, interp, asg),
            None => match form(b, interp, asg) {
                Some(false) => Some(false),
                _ => None,
            },
        },
        CForm::Or(a, b) => match form(a, interp, asg) {
            Some(true) => Some(true),
            Some(false) => form(b, interp, asg),
            None => match form(b, interp, asg) {
                Some(true) => Some(true),
                _ => None,
            },
        },
        CForm::Implies(a, b) => match form(a, interp, asg) {
            Some(false) => Some(true),
            Some(true) => form(b, interp, asg),
            None => match form(b, interp, asg) {
                Some(true) => Some(true),
                _ => None,
            },
        },
        CForm::Iff(a, b) => {
            let x = form(a, interp, asg)?;
            form(b, interp, asg).map(|y| x == y)
        }
        CForm::Forall(slot, sort, body) => {
            let mut result = Some(true);
            for e in 0..interp.sort_size(*sort) {
                asg[*slot] = e;
                match form(body, interp, asg) {
                    Some(false) => return Some(false),
                    None => result = None,
                    Some(true) => {}
                }
            }
            result
        }
        CForm::Exists(slot, sort, body) => {
            let mut result = Some(false);
            for e in 0..interp.sort_size(*sort) {
                asg[*slot] = e;
                match form(body, interp, asg) {
                    Some(true) => return Some(true),
                    None => result = None,
                    Some(false) => {}
                }
            }
            result
        }
    }
}

/// A complete structure seen through the [`Interp`] interface.
pub(crate) struct Bound<'a> {
    sizes: Vec<usize>,
    consts: Vec<usize>,
    funcs: Vec<&'a FuncTable>,
    rels: Vec<&'a RelTable>,
}

impl<'a> Bound<'a> {
    pub(crate) fn new(m: &'a FinStructure) -> Self {
        Bound {
            sizes: m.sizes(),
            consts: m.sig.constants.keys().map(|c| m.consts[c]).collect(),
            funcs: m.sig.functions.keys().map(|f| &m.funcs[f]).collect(),
            rels: m.sig.relations.keys().map(|r| &m.rels[r]).collect(),
        }
    }
}

impl Interp for Bound<'_> {
    fn sort_size(&self, sort: SortId) -> usize {
        self.sizes[sort]
    }

    fn constant(&self, c: usize) -> Val {
        Val::El(self.consts[c])
    }

    fn apply(&self, f: usize, args: &[usize]) -> Val {
        match self.funcs[f].get(args) {
            Some(v) => Val::El(v),
            None => Val::Undef,
        }
    }

    fn holds(&self, r: usize, args: &[usize]) -> Option<bool> {
        Some(self.rels[r].get(args))
    }
}

/// Truth of `phi` in `m` under `env`, which must cover the free variables.
pub fn eval_formula(m: &FinStructure, phi: &Formula, env: &Env) -> Result<bool> {
    let compiled = Compiled::new(phi, &m.sig)?;
    let bound = Bound::new(m);
    let mut asg = compiled.assignment(&bound, env)?;
    Ok(compiled.eval(&bound, &mut asg).expect("complete structure"))
}

pub fn eval_sentence(m: &FinStructure, phi: &Formula) -> Result<bool> {
    eval_formula(m, phi, &Env::new())
}

/// Evaluates one compiled formula repeatedly against one structure.
pub struct Evaluator<'a> {
    compiled: Compiled,
    bound: Bound<'a>,
}

impl<'a> Evaluator<'a> {
    pub fn new(m: &'a FinStructure, phi: &Formula) -> Result<Self> {
        Ok(Evaluator {
            compiled: Compiled::new(phi, &m.sig)?,
            bound: Bound::new(m),
        })
    }

    pub fn eval(&self, env: &Env) -> Result<bool> {
        let mut asg = self.compiled.assignment(&self.bound, env)?;
        Ok(self.compiled.eval(&self.bound, &mut asg).expect("complete structure"))
    }
}
