use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::signature::{Signature, SortId, COMP};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, String, Box<Formula>),
    Exists(String, String, Box<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.into())
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.into(), args)
    }

    pub fn comp(g: Term, f: Term) -> Term {
        Term::App(COMP.into(), vec![g, f])
    }

    /// Number of function-application nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.vars(out)),
        }
    }

    /// Sort of the term; free variables are looked up in `ctx`.
    pub fn sort(&self, sig: &Signature, ctx: &BTreeMap<String, SortId>) -> Result<SortId> {
        match self {
            Term::Var(v) => ctx.get(v).copied().ok_or_else(|| Error::UnboundVariable(v.clone())),
            Term::Const(c) => sig
                .constant_sort(c)
                .ok_or_else(|| Error::Sort(format!("unknown constant `{c}`"))),
            Term::App(f, args) => {
                let (arg_sorts, result) = sig
                    .function_profile(f)
                    .ok_or_else(|| Error::Sort(format!("unknown function `{f}`")))?;
                if arg_sorts.len() != args.len() {
                    return Err(Error::Sort(format!(
                        "function `{f}` expects {} arguments, got {}",
                        arg_sorts.len(),
                        args.len()
                    )));
                }
                for (i, (a, want)) in args.iter().zip(&arg_sorts).enumerate() {
                    let got = a.sort(sig, ctx)?;
                    if got != *want {
                        return Err(Error::Sort(format!(
                            "argument {} of `{f}` has sort `{}`, expected `{}`",
                            i + 1,
                            sig.sorts[got],
                            sig.sorts[*want]
                        )));
                    }
                }
                Ok(result)
            }
        }
    }

    fn is_infix(&self) -> bool {
        matches!(self, Term::App(f, args) if args.len() == 2 && (f == COMP || f == "+"))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::App(name, args) if args.len() == 2 && (name == COMP || name == "+") => {
                let op = if name == COMP { "o" } else { "+" };
                write!(f, "{} {op} ", args[0])?;
                if args[1].is_infix() {
                    write!(f, "({})", args[1])
                } else {
                    write!(f, "{}", args[1])
                }
            }
            Term::App(name, args) if args.len() == 1 && name == "-" => {
                if args[0].is_infix() {
                    write!(f, "-({})", args[0])
                } else {
                    write!(f, "-{}", args[0])
                }
            }
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Formula {
    pub fn atom(rel: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(rel.into(), args)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(var: &str, sort: &str, body: Formula) -> Formula {
        Formula::Forall(var.into(), sort.into(), Box::new(body))
    }

    pub fn exists(var: &str, sort: &str, body: Formula) -> Formula {
        Formula::Exists(var.into(), sort.into(), Box::new(body))
    }

    /// Conjunction of a non-empty list, associated to the left.
    pub fn conj(items: Vec<Formula>) -> Option<Formula> {
        items.into_iter().reduce(Formula::and)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => {
                let mut vs = BTreeSet::new();
                args.iter().for_each(|t| t.vars(&mut vs));
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Eq(a, b) => {
                let mut vs = BTreeSet::new();
                a.vars(&mut vs);
                b.vars(&mut vs);
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, _, body) | Formula::Exists(v, _, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Quantifier depth.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => 0,
            Formula::Not(a) => a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.depth().max(b.depth())
            }
            Formula::Forall(_, _, body) | Formula::Exists(_, _, body) => 1 + body.depth(),
        }
    }

    /// Node count: connectives, quantifiers and atoms count one each, and
    /// every function application inside a term counts one more. Variables
    /// and constants are leaf labels and do not count.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Formula::Eq(a, b) => 1 + a.size() + b.size(),
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Forall(_, _, body) | Formula::Exists(_, _, body) => 1 + body.size(),
        }
    }

    pub fn is_equality_free(&self) -> bool {
        match self {
            Formula::Atom(..) => true,
            Formula::Eq(..) => false,
            Formula::Not(a) => a.is_equality_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.is_equality_free() && b.is_equality_free()
            }
            Formula::Forall(_, _, body) | Formula::Exists(_, _, body) => body.is_equality_free(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.depth() == 0
    }

    /// Checks well-sortedness against `sig`; `ctx` gives the sorts of free
    /// variables. With `homotopic` set, equality atoms are rejected.
    pub fn check(&self, sig: &Signature, ctx: &BTreeMap<String, SortId>, homotopic: bool) -> Result<()> {
        match self {
            Formula::Atom(r, args) => {
                let profile = sig
                    .relation_profile(r)
                    .ok_or_else(|| Error::Sort(format!("unknown relation `{r}`")))?;
                if profile.len() != args.len() {
                    return Err(Error::Sort(format!(
                        "relation `{r}` has arity {}, applied to {} arguments",
                        profile.len(),
                        args.len()
                    )));
                }
                for (i, (t, want)) in args.iter().zip(&profile).enumerate() {
                    let got = t.sort(sig, ctx)?;
                    if got != *want {
                        return Err(Error::Sort(format!(
                            "argument {} of `{r}` has sort `{}`, expected `{}`",
                            i + 1,
                            sig.sorts[got],
                            sig.sorts[*want]
                        )));
                    }
                }
                Ok(())
            }
            Formula::Eq(a, b) => {
                if homotopic {
                    return Err(Error::EqualityForbidden(self.to_string()));
                }
                let (sa, sb) = (a.sort(sig, ctx)?, b.sort(sig, ctx)?);
                if sa != sb {
                    return Err(Error::Sort(format!(
                        "equation `{self}` compares sorts `{}` and `{}`",
                        sig.sorts[sa], sig.sorts[sb]
                    )));
                }
                Ok(())
            }
            Formula::Not(a) => a.check(sig, ctx, homotopic),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.check(sig, ctx, homotopic)?;
                b.check(sig, ctx, homotopic)
            }
            Formula::Forall(v, s, body) | Formula::Exists(v, s, body) => {
                let sort = sig.sort_of(s)?;
                let mut inner = ctx.clone();
                inner.insert(v.clone(), sort);
                body.check(sig, &inner, homotopic)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Forall(..) | Formula::Exists(..) => 0,
            _ => 5,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, op: &str, a: &Formula, b: &Formula, right_assoc: bool| {
            let p = self.precedence();
            let (pa, pb) = (a.precedence(), b.precedence());
            let left_parens = pa == 0 || pa < p || (pa == p && right_assoc);
            let right_parens = pb == 0 || pb < p || (pb == p && !right_assoc);
            a.write_child(f, left_parens)?;
            write!(f, " {op} ")?;
            b.write_child(f, right_parens)
        };
        match self {
            Formula::Atom(r, args) if args.is_empty() => f.write_str(r),
            Formula::Atom(r, args) => {
                write!(f, "{r}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(a) => {
                f.write_str("~")?;
                a.write_child(f, a.precedence() < 5)
            }
            Formula::And(a, b) => binary(f, "&", a, b, false),
            Formula::Or(a, b) => binary(f, "|", a, b, false),
            Formula::Implies(a, b) => binary(f, "->", a, b, true),
            Formula::Iff(a, b) => binary(f, "<->", a, b, false),
            Formula::Forall(v, s, body) => write!(f, "forall {v}:{s}. {body}"),
            Formula::Exists(v, s, body) => write!(f, "exists {v}:{s}. {body}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_and_size() {
        let qc = |a: &str, b: &str, c: &str| Formula::atom("QC", vec![Term::var(a), Term::var(b), Term::var(c)]);
        let phi = Formula::forall("x", "m", Formula::exists("y", "m", qc("x", "y", "x")));
        assert_eq!(phi.depth(), 2);
        assert_eq!(phi.size(), 3);
        assert!(phi.is_sentence());
        let psi = Formula::eq(
            Term::app("+", vec![Term::var("x"), Term::var("x")]),
            Term::constant("0"),
        );
        assert_eq!(psi.size(), 2);
        assert_eq!(psi.free_vars().into_iter().collect::<Vec<_>>(), vec!["x"]);
        assert!(!psi.is_equality_free());
    }

    #[test]
    fn printer_parenthesizes() {
        let p = Formula::atom("P", vec![]);
        let q = Formula::atom("Q", vec![]);
        let f = Formula::and(Formula::or(p.clone(), q.clone()), p.clone());
        assert_eq!(f.to_string(), "(P | Q) & P");
        let g = Formula::implies(Formula::implies(p.clone(), q.clone()), p.clone());
        assert_eq!(g.to_string(), "(P -> Q) -> P");
        let h = Formula::not(Formula::forall("x", "s", p.clone()));
        assert_eq!(h.to_string(), "~(forall x:s. P)");
        let t = Term::comp(Term::comp(Term::var("h"), Term::var("g")), Term::var("f"));
        assert_eq!(t.to_string(), "h o g o f");
        let t = Term::comp(Term::var("h"), Term::comp(Term::var("g"), Term::var("f")));
        assert_eq!(t.to_string(), "h o (g o f)");
    }
}
