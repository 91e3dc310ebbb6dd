//! Counting, unranking and sampling of sentences within size and depth bounds.
//!
//! Bound variables are named `x0, x1, ...` after their binder depth, so
//! α-equivalent sentences coincide. The enumeration order is by size, then
//! atoms, `~`, `&`, `|`, `->`, `<->` (each binary connective over every split
//! of the size) and finally quantifiers, `forall` before `exists`, per sort.

use std::cell::RefCell;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::signature::{Signature, SortId};
use super::syntax::{Formula, Term};
use crate::config::Caps;
use crate::{Error, Result};

type Ctx = Vec<SortId>;

pub(crate) fn var_name(k: usize) -> String {
    format!("x{k}")
}

/// The sentences of `sig` with at most `max_depth` nested quantifiers and at
/// most `max_size` nodes, addressable by index.
pub struct SentenceSpace {
    sig: Signature,
    max_depth: usize,
    max_size: usize,
    homotopic: bool,
    consts: Vec<(String, SortId)>,
    funcs: Vec<(String, Vec<SortId>, SortId)>,
    rels: Vec<(String, Vec<SortId>)>,
    terms: RefCell<HashMap<(Ctx, SortId, usize), u128>>,
    formulas: RefCell<HashMap<(Ctx, usize, usize), u128>>,
    by_size: Vec<u128>,
}

impl SentenceSpace {
    pub fn new(sig: &Signature, max_depth: usize, max_size: usize, homotopic: bool, caps: &Caps) -> Result<Self> {
        if max_depth > caps.max_sentence_depth || max_size > caps.max_sentence_size {
            return Err(Error::BoundsExceeded(format!(
                "depth {max_depth} / size {max_size} exceeds the caps {} / {}",
                caps.max_sentence_depth, caps.max_sentence_size
            )));
        }
        sig.validate()?;
        let consts = sig
            .constants
            .keys()
            .map(|c| (c.clone(), sig.constant_sort(c).unwrap()))
            .collect();
        let funcs = sig
            .functions
            .keys()
            .map(|f| {
                let (a, r) = sig.function_profile(f).unwrap();
                (f.clone(), a, r)
            })
            .collect();
        let rels = sig
            .relations
            .keys()
            .map(|r| (r.clone(), sig.relation_profile(r).unwrap()))
            .collect();
        let mut space = SentenceSpace {
            sig: sig.clone(),
            max_depth,
            max_size,
            homotopic,
            consts,
            funcs,
            rels,
            terms: RefCell::default(),
            formulas: RefCell::default(),
            by_size: Vec::new(),
        };
        space.by_size = (0..=max_size)
            .map(|s| {
                if s == 0 {
                    0
                } else {
                    space.count(&Vec::new(), s, max_depth)
                }
            })
            .collect();
        Ok(space)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Total number of sentences in the space.
    pub fn len(&self) -> u128 {
        self.by_size.iter().fold(0u128, |a, b| a.saturating_add(*b))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of sentences of exactly `size` nodes.
    pub fn count_of_size(&self, size: usize) -> u128 {
        self.by_size.get(size).copied().unwrap_or(0)
    }

    /// The sentence at position `index` of the enumeration order.
    pub fn get(&self, mut index: u128) -> Option<Formula> {
        for size in 1..=self.max_size {
            let n = self.by_size[size];
            if index < n {
                return Some(self.unrank(&mut Vec::new(), size, self.max_depth, index));
            }
            index -= n;
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = Formula> + '_ {
        let total = self.len();
        let mut i = 0u128;
        std::iter::from_fn(move || {
            if i >= total {
                return None;
            }
            i += 1;
            self.get(i - 1)
        })
    }

    /// `count` uniform draws from a ChaCha8 stream seeded with `seed`.
    pub fn sample_seeded(&self, count: usize, seed: u64) -> Vec<Formula> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map_while(|_| self.sample(&mut rng)).collect()
    }

    /// Uniform draw over the whole space.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Option<Formula> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        self.get(rng.gen_range(0..n))
    }

    fn term_count(&self, ctx: &Ctx, sort: SortId, apps: usize) -> u128 {
        let key = (ctx.clone(), sort, apps);
        if let Some(&n) = self.terms.borrow().get(&key) {
            return n;
        }
        let n = if apps == 0 {
            (ctx.iter().filter(|&&s| s == sort).count() + self.consts.iter().filter(|(_, s)| *s == sort).count())
                as u128
        } else {
            self.funcs
                .iter()
                .filter(|(_, _, r)| *r == sort)
                .map(|(_, args, _)| self.tuple_count(ctx, args, apps - 1))
                .fold(0u128, |a, b| a.saturating_add(b))
        };
        self.terms.borrow_mut().insert(key, n);
        n
    }

    /// Number of argument tuples of the given sorts with `apps` applications
    /// in total.
    fn tuple_count(&self, ctx: &Ctx, sorts: &[SortId], apps: usize) -> u128 {
        match sorts {
            [] => u128::from(apps == 0),
            [s] => self.term_count(ctx, *s, apps),
            [s, rest @ ..] => (0..=apps)
                .map(|i| {
                    let head = self.term_count(ctx, *s, i);
                    if head == 0 {
                        0
                    } else {
                        head.saturating_mul(self.tuple_count(ctx, rest, apps - i))
                    }
                })
                .fold(0u128, |a, b| a.saturating_add(b)),
        }
    }

    fn unrank_tuple(&self, ctx: &Ctx, sorts: &[SortId], apps: usize, mut index: u128) -> Vec<Term> {
        match sorts {
            [] => Vec::new(),
            [s] => vec![self.unrank_term(ctx, *s, apps, index)],
            [s, rest @ ..] => {
                for i in 0..=apps {
                    let head = self.term_count(ctx, *s, i);
                    let tail = self.tuple_count(ctx, rest, apps - i);
                    let block = head.saturating_mul(tail);
                    if index < block {
                        let mut out = vec![self.unrank_term(ctx, *s, i, index / tail)];
                        out.extend(self.unrank_tuple(ctx, rest, apps - i, index % tail));
                        return out;
                    }
                    index -= block;
                }
                unreachable!("tuple index out of range")
            }
        }
    }

    fn unrank_term(&self, ctx: &Ctx, sort: SortId, apps: usize, mut index: u128) -> Term {
        if apps == 0 {
            for (k, &s) in ctx.iter().enumerate() {
                if s == sort {
                    if index == 0 {
                        return Term::Var(var_name(k));
                    }
                    index -= 1;
                }
            }
            for (c, s) in &self.consts {
                if *s == sort {
                    if index == 0 {
                        return Term::Const(c.clone());
                    }
                    index -= 1;
                }
            }
            unreachable!("term index out of range")
        }
        for (f, args, r) in &self.funcs {
            if *r != sort {
                continue;
            }
            let n = self.tuple_count(ctx, args, apps - 1);
            if index < n {
                return Term::App(f.clone(), self.unrank_tuple(ctx, args, apps - 1, index));
            }
            index -= n;
        }
        unreachable!("term index out of range")
    }

    pub(crate) fn atom_count(&self, ctx: &Ctx, size: usize) -> u128 {
        let apps = size - 1;
        let mut n = 0u128;
        for (_, args) in &self.rels {
            n = n.saturating_add(self.tuple_count(ctx, args, apps));
        }
        if !self.homotopic {
            for s in 0..self.sig.sorts.len() {
                n = n.saturating_add(self.tuple_count(ctx, &[s, s], apps));
            }
        }
        n
    }

    pub(crate) fn unrank_atom(&self, ctx: &Ctx, size: usize, mut index: u128) -> Formula {
        let apps = size - 1;
        for (r, args) in &self.rels {
            let n = self.tuple_count(ctx, args, apps);
            if index < n {
                return Formula::Atom(r.clone(), self.unrank_tuple(ctx, args, apps, index));
            }
            index -= n;
        }
        for s in 0..self.sig.sorts.len() {
            let n = self.tuple_count(ctx, &[s, s], apps);
            if index < n {
                let mut pair = self.unrank_tuple(ctx, &[s, s], apps, index);
                let b = pair.pop().unwrap();
                let a = pair.pop().unwrap();
                return Formula::Eq(a, b);
            }
            index -= n;
        }
        unreachable!("atom index out of range")
    }

    /// Number of formulas in context `ctx` with exactly `size` nodes and at
    /// most `depth` nested quantifiers.
    pub(crate) fn count(&self, ctx: &Ctx, size: usize, depth: usize) -> u128 {
        if size == 0 {
            return 0;
        }
        let key = (ctx.clone(), size, depth);
        if let Some(&n) = self.formulas.borrow().get(&key) {
            return n;
        }
        let mut n = self.atom_count(ctx, size);
        if size >= 2 {
            n = n.saturating_add(self.count(ctx, size - 1, depth));
        }
        if size >= 3 {
            let mut bin = 0u128;
            for i in 1..size - 1 {
                let l = self.count(ctx, i, depth);
                if l > 0 {
                    bin = bin.saturating_add(l.saturating_mul(self.count(ctx, size - 1 - i, depth)));
                }
            }
            n = n.saturating_add(bin.saturating_mul(4));
        }
        if size >= 2 && depth >= 1 {
            for s in 0..self.sig.sorts.len() {
                let mut inner = ctx.clone();
                inner.push(s);
                n = n.saturating_add(self.count(&inner, size - 1, depth - 1).saturating_mul(2));
            }
        }
        self.formulas.borrow_mut().insert(key, n);
        n
    }

    fn unrank(&self, ctx: &mut Ctx, size: usize, depth: usize, mut index: u128) -> Formula {
        let atoms = self.atom_count(ctx, size);
        if index < atoms {
            return self.unrank_atom(ctx, size, index);
        }
        index -= atoms;
        if size >= 2 {
            let n = self.count(ctx, size - 1, depth);
            if index < n {
                return Formula::not(self.unrank(ctx, size - 1, depth, index));
            }
            index -= n;
        }
        if size >= 3 {
            for op in 0..4 {
                for i in 1..size - 1 {
                    let l = self.count(ctx, i, depth);
                    let r = self.count(ctx, size - 1 - i, depth);
                    let block = l.saturating_mul(r);
                    if index < block {
                        let a = self.unrank(ctx, i, depth, index / r);
                        let b = self.unrank(ctx, size - 1 - i, depth, index % r);
                        return match op {
                            0 => Formula::and(a, b),
                            1 => Formula::or(a, b),
                            2 => Formula::implies(a, b),
                            _ => Formula::iff(a, b),
                        };
                    }
                    index -= block;
                }
            }
        }
        if size >= 2 && depth >= 1 {
            for s in 0..self.sig.sorts.len() {
                ctx.push(s);
                let n = self.count(ctx, size - 1, depth - 1);
                for universal in [true, false] {
                    if index < n {
                        let body = self.unrank(ctx, size - 1, depth - 1, index);
                        ctx.pop();
                        let v = var_name(ctx.len());
                        let sort = &self.sig.sorts[s];
                        return if universal {
                            Formula::forall(&v, sort, body)
                        } else {
                            Formula::exists(&v, sort, body)
                        };
                    }
                    index -= n;
                }
                ctx.pop();
            }
        }
        unreachable!("formula index out of range")
    }
}

/// All sentences within the bounds, in enumeration order, under the default
/// caps.
pub fn enumerate_sentences(
    sig: &Signature,
    max_depth: usize,
    max_size: usize,
    homotopic: bool,
) -> Result<SentenceSpace> {
    SentenceSpace::new(sig, max_depth, max_size, homotopic, &Caps::default())
}

pub fn enumerate_sentences_with(
    sig: &Signature,
    max_depth: usize,
    max_size: usize,
    homotopic: bool,
    caps: &Caps,
) -> Result<SentenceSpace> {
    SentenceSpace::new(sig, max_depth, max_size, homotopic, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use std::collections::HashSet;

    #[test]
    fn closed_atoms_only_at_depth_zero() {
        let space = enumerate_sentences(&Signature::l_homo(), 0, 3, true).unwrap();
        assert_eq!(space.len(), 0);
        let sig = Signature::new(&[]).with_relation("P", &[]);
        let all: Vec<String> = enumerate_sentences(&sig, 0, 2, false)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(all, vec!["P", "~P"]);
    }

    #[test]
    fn contains_forall_exists_qc() {
        let sig = Signature::l_homo();
        let space = enumerate_sentences(&sig, 3, 8, true).unwrap();
        let target = parse_formula("forall x0:m. exists x1:m. QC(x0, x1, x0)", &sig).unwrap();
        let size = target.size();
        let offset: u128 = (1..size).map(|s| space.count_of_size(s)).sum();
        let found = (0..space.count_of_size(size)).any(|i| space.get(offset + i).unwrap() == target);
        assert!(found);
    }

    #[test]
    fn bounds_are_enforced() {
        let sig = Signature::l_homo();
        assert!(matches!(
            enumerate_sentences(&sig, 5, 4, true),
            Err(Error::BoundsExceeded(_))
        ));
        assert!(matches!(
            enumerate_sentences(&sig, 2, 13, true),
            Err(Error::BoundsExceeded(_))
        ));
    }

    #[test]
    fn enumeration_is_duplicate_free_and_sized() {
        let sig = Signature::new(&["s"]).with_relation("R", &["s", "s"]);
        let space = enumerate_sentences(&sig, 2, 6, false).unwrap();
        let mut seen = HashSet::new();
        for phi in space.iter() {
            assert!(phi.is_sentence());
            assert!(phi.depth() <= 2 && phi.size() <= 6);
            assert!(seen.insert(phi.to_string()));
        }
        assert_eq!(seen.len() as u128, space.len());
    }

    /// Independent count by brute-force generation of all formulas.
    #[test]
    fn count_matches_naive_generation() {
        fn gen(vars: usize, size: usize, depth: usize) -> Vec<String> {
            let mut out = Vec::new();
            if size == 1 {
                for a in 0..vars {
                    for b in 0..vars {
                        out.push(format!("R{a}{b}"));
                        out.push(format!("E{a}{b}"));
                    }
                }
                return out;
            }
            for f in gen(vars, size - 1, depth) {
                out.push(format!("~{f}"));
            }
            for op in ["&", "|", ">", "="] {
                for i in 1..size - 1 {
                    for a in gen(vars, i, depth) {
                        for b in gen(vars, size - 1 - i, depth) {
                            out.push(format!("({a}{op}{b})"));
                        }
                    }
                }
            }
            if depth > 0 {
                for q in ["A", "E"] {
                    for f in gen(vars + 1, size - 1, depth - 1) {
                        out.push(format!("{q}{f}"));
                    }
                }
            }
            out
        }
        let sig = Signature::new(&["s"]).with_relation("R", &["s", "s"]);
        let space = enumerate_sentences(&sig, 2, 5, false).unwrap();
        for size in 1..=5 {
            assert_eq!(space.count_of_size(size), gen(0, size, 2).len() as u128, "size {size}");
        }
    }
}
