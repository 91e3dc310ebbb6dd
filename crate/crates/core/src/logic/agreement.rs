//! Exhaustive comparison of two structures on all sentences within a
//! quantifier-depth bound, without listing the sentences one by one.
//!
//! In a context of bound variables `x0..xk`, a formula is represented by its
//! truth table over the assignments of both structures. Formulas with equal
//! tables are interchangeable inside any larger sentence, so only one
//! representative per table is kept.
//!
//! With a size bound, tables are grown by increasing size exactly as the
//! sentences of [`SentenceSpace`] are built, so the result covers that space.
//! Without one, each context keeps the partition of its assignments induced
//! by the definable sets; the definable sets one level up are generated by
//! the atoms and by `exists` applied to the blocks of that partition.

use std::collections::{HashMap, HashSet};

use super::enumerate::{var_name, SentenceSpace};
use super::eval::{Bound, Compiled};
use super::signature::SortId;
use super::syntax::Formula;
use crate::config::Caps;
use crate::structures::FinStructure;
use crate::{Error, Result};

/// Outcome of a bounded comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agreement {
    pub agree: bool,
    /// A sentence with different truth values, when one exists.
    pub witness: Option<Formula>,
    pub value_a: Option<bool>,
    pub value_b: Option<bool>,
    /// Number of distinct truth tables met on the way.
    pub classes: usize,
}

/// Compares `a` and `b` on every sentence of quantifier depth at most
/// `max_depth` and, when given, at most `max_size` nodes.
pub fn bounded_agreement(
    a: &FinStructure,
    b: &FinStructure,
    max_depth: usize,
    max_size: Option<usize>,
    homotopic: bool,
) -> Result<Agreement> {
    a.check_same_signature(b)?;
    match max_size {
        Some(size) => {
            let space = SentenceSpace::new(&a.sig, max_depth, size, homotopic, &Caps::default())?;
            SizedEngine::new(a, b, &space).run(max_depth, size)
        }
        None => {
            if max_depth > Caps::default().max_sentence_depth {
                return Err(Error::BoundsExceeded(format!("depth {max_depth}")));
            }
            if !a.sig.functions.is_empty() {
                return Err(Error::InvalidInput(
                    "size-unbounded agreement needs a signature without function symbols".into(),
                ));
            }
            let space = SentenceSpace::new(&a.sig, max_depth, 1, homotopic, &Caps::default())?;
            BlockEngine::new(a, b, &space).run(max_depth)
        }
    }
}

/// Assignment counts of a context in both structures.
#[derive(Clone, Debug)]
struct Shape {
    ctx: Vec<SortId>,
    na: usize,
    nb: usize,
    words: usize,
}

impl Shape {
    fn new(ctx: &[SortId], a: &FinStructure, b: &FinStructure) -> Self {
        let na = ctx.iter().map(|&s| a.size(s)).product();
        let nb = ctx.iter().map(|&s| b.size(s)).product();
        Shape {
            ctx: ctx.to_vec(),
            na,
            nb,
            words: (na + nb).div_ceil(64).max(1),
        }
    }

    fn bits(&self) -> usize {
        self.na + self.nb
    }

    fn mask_last(&self, t: &mut [u64]) {
        let r = self.bits() % 64;
        if r != 0 {
            t[self.words - 1] &= (1u64 << r) - 1;
        }
        if self.bits() == 0 {
            t[0] = 0;
        }
    }
}

fn get_bit(t: &[u64], i: usize) -> bool {
    t[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(t: &mut [u64], i: usize) {
    t[i / 64] |= 1 << (i % 64);
}

/// `len` bits starting at `start`, for `len <= 64`.
fn get_bits(t: &[u64], start: usize, len: usize) -> u64 {
    if len == 0 {
        return 0;
    }
    let (w, o) = (start / 64, start % 64);
    let mut v = t[w] >> o;
    if o + len > 64 {
        v |= t[w + 1] << (64 - o);
    }
    if len == 64 {
        v
    } else {
        v & ((1u64 << len) - 1)
    }
}

/// Projects a table of `child` (whose last variable has sort `sort`) onto
/// `parent` with `forall` or `exists`.
fn project(table: &[u64], child: &Shape, parent: &Shape, ka: usize, kb: usize, universal: bool) -> Vec<u64> {
    let mut out = vec![0u64; parent.words];
    let chunk = |start: usize, k: usize| -> bool {
        if k <= 64 {
            let v = get_bits(table, start, k);
            if universal {
                k == 64 && v == u64::MAX || k < 64 && v == (1u64 << k) - 1
            } else {
                v != 0
            }
        } else if universal {
            (start..start + k).all(|i| get_bit(table, i))
        } else {
            (start..start + k).any(|i| get_bit(table, i))
        }
    };
    for p in 0..parent.na {
        if chunk(p * ka, ka) {
            set_bit(&mut out, p);
        }
    }
    for p in 0..parent.nb {
        if chunk(child.na + p * kb, kb) {
            set_bit(&mut out, parent.na + p);
        }
    }
    out
}

/// Truth table of an atom over all assignments of a context.
fn atom_table(atom: &Formula, shape: &Shape, a: &FinStructure, b: &FinStructure) -> Result<Vec<u64>> {
    let compiled = Compiled::new(atom, &a.sig)?;
    let mut table = vec![0u64; shape.words];
    let slot_of: Vec<(usize, usize)> = compiled
        .free
        .iter()
        .map(|(name, slot, _)| {
            let k = (0..shape.ctx.len())
                .find(|&k| var_name(k) == *name)
                .expect("context variable");
            (*slot, k)
        })
        .collect();
    let mut offset = 0;
    for m in [a, b] {
        let bound = Bound::new(m);
        let dims: Vec<usize> = shape.ctx.iter().map(|&s| m.size(s)).collect();
        let total: usize = dims.iter().product();
        let mut tuple = vec![0usize; dims.len()];
        let mut asg = vec![0usize; compiled.slots];
        for i in 0..total {
            crate::structures::unflatten(&dims, i, &mut tuple);
            for &(slot, k) in &slot_of {
                asg[slot] = tuple[k];
            }
            if compiled.eval(&bound, &mut asg) == Some(true) {
                set_bit(&mut table, offset + i);
            }
        }
        offset += total;
    }
    Ok(table)
}

fn hash_words(t: &[u64]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &w in t {
        h = (h.rotate_left(5) ^ w).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
    h
}

#[derive(Clone, Copy, Debug)]
enum Deriv {
    Atom(u32),
    Not(u32),
    Bin(u8, u32, u32),
    /// Quantifier over the last variable of a class of a child context.
    Quant(bool, u32, u32),
}

/// Derivations of the classes of one context, for witness reconstruction.
#[derive(Default)]
struct Store {
    ctx: Vec<SortId>,
    atoms: Vec<Formula>,
    derivs: Vec<Deriv>,
}

fn rebuild(stores: &[Store], sorts: &[String], store: usize, class: u32) -> Formula {
    let s = &stores[store];
    match s.derivs[class as usize] {
        Deriv::Atom(i) => s.atoms[i as usize].clone(),
        Deriv::Not(c) => Formula::not(rebuild(stores, sorts, store, c)),
        Deriv::Bin(op, x, y) => {
            let x = rebuild(stores, sorts, store, x);
            let y = rebuild(stores, sorts, store, y);
            match op {
                0 => Formula::and(x, y),
                1 => Formula::or(x, y),
                2 => Formula::implies(x, y),
                _ => Formula::iff(x, y),
            }
        }
        Deriv::Quant(universal, child, c) => {
            let body = rebuild(stores, sorts, child as usize, c);
            let cs = &stores[child as usize];
            let v = var_name(cs.ctx.len() - 1);
            let sort = &sorts[*cs.ctx.last().unwrap()];
            if universal {
                Formula::forall(&v, sort, body)
            } else {
                Formula::exists(&v, sort, body)
            }
        }
    }
}

/// Flat table storage with exact deduplication.
struct Classes {
    words: usize,
    data: Vec<u64>,
    index: HashMap<u64, u32>,
    next: Vec<u32>,
}

const NIL: u32 = u32::MAX;

impl Classes {
    fn new(words: usize) -> Self {
        Classes {
            words,
            data: Vec::new(),
            index: HashMap::new(),
            next: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.next.len()
    }

    fn get(&self, id: u32) -> &[u64] {
        let i = id as usize * self.words;
        &self.data[i..i + self.words]
    }

    fn contains(&self, t: &[u64]) -> bool {
        let mut id = self.index.get(&hash_words(t)).copied().unwrap_or(NIL);
        while id != NIL {
            if self.get(id) == t {
                return true;
            }
            id = self.next[id as usize];
        }
        false
    }

    /// Inserts `t` unless present; returns whether it was new.
    fn insert(&mut self, t: &[u64]) -> bool {
        if self.contains(t) {
            return false;
        }
        let h = hash_words(t);
        let id = self.next.len() as u32;
        let head = self.index.insert(h, id).unwrap_or(NIL);
        self.next.push(head);
        self.data.extend_from_slice(t);
        true
    }
}

type Projections = Vec<Vec<(Vec<u64>, Deriv)>>;

struct SizedEngine<'a> {
    a: &'a FinStructure,
    b: &'a FinStructure,
    space: &'a SentenceSpace,
    stores: Vec<Store>,
    classes: usize,
    witness: Option<(usize, u32, bool, bool)>,
}

impl<'a> SizedEngine<'a> {
    fn new(a: &'a FinStructure, b: &'a FinStructure, space: &'a SentenceSpace) -> Self {
        SizedEngine {
            a,
            b,
            space,
            stores: Vec::new(),
            classes: 0,
            witness: None,
        }
    }

    fn run(mut self, max_depth: usize, max_size: usize) -> Result<Agreement> {
        self.solve(&[], max_size, max_depth)?;
        let sorts = &self.a.sig.sorts;
        Ok(match self.witness {
            Some((store, class, va, vb)) => Agreement {
                agree: false,
                witness: Some(rebuild(&self.stores, sorts, store, class)),
                value_a: Some(va),
                value_b: Some(vb),
                classes: self.classes,
            },
            None => Agreement {
                agree: true,
                witness: None,
                value_a: None,
                value_b: None,
                classes: self.classes,
            },
        })
    }

    /// Grows the classes of context `ctx` up to `limit` nodes and returns
    /// their quantifier projections onto the parent context, indexed by the
    /// size of the projected formula.
    fn solve(&mut self, ctx: &[SortId], limit: usize, rem: usize) -> Result<Projections> {
        let shape = Shape::new(ctx, self.a, self.b);
        let parent = (!ctx.is_empty()).then(|| Shape::new(&ctx[..ctx.len() - 1], self.a, self.b));
        let (ka, kb) = match ctx.last() {
            Some(&s) => (self.a.size(s), self.b.size(s)),
            None => (0, 0),
        };
        let mut quantified: Projections = vec![Vec::new(); limit + 1];
        if rem > 0 && limit >= 2 {
            for s in 0..self.a.sig.sorts.len() {
                let mut child = ctx.to_vec();
                child.push(s);
                let proj = self.solve(&child, limit - 1, rem - 1)?;
                if self.witness.is_some() {
                    return Ok(Vec::new());
                }
                for (size, items) in proj.into_iter().enumerate() {
                    if size <= limit {
                        quantified[size].extend(items);
                    }
                }
            }
        }
        let store_id = self.stores.len();
        self.stores.push(Store {
            ctx: ctx.to_vec(),
            ..Store::default()
        });
        let mut out: Projections = vec![Vec::new(); limit + 2];
        let mut classes = Classes::new(shape.words);
        let mut level_start = vec![0u32; limit + 2];
        let mut emitted: HashSet<Vec<u64>> = HashSet::new();
        let ctx_vec = ctx.to_vec();

        for size in 1..=limit {
            level_start[size] = classes.len() as u32;
            let mut candidates: Vec<(Vec<u64>, Deriv)> = Vec::new();
            let n_atoms = self.space.atom_count(&ctx_vec, size);
            for i in 0..n_atoms {
                let atom = self.space.unrank_atom(&ctx_vec, size, i);
                let t = atom_table(&atom, &shape, self.a, self.b)?;
                let store = &mut self.stores[store_id];
                store.atoms.push(atom);
                candidates.push((t, Deriv::Atom(store.atoms.len() as u32 - 1)));
            }
            candidates.append(&mut quantified[size]);

            let mut accept = |this: &mut Self, classes: &mut Classes, t: &[u64], d: Deriv| -> bool {
                if classes.contains(t) {
                    return false;
                }
                let stored = size < limit;
                if stored {
                    classes.insert(t);
                }
                let derivs = &mut this.stores[store_id].derivs;
                let id = derivs.len() as u32;
                match &parent {
                    None => {
                        derivs.push(d);
                        this.classes += 1;
                        let (va, vb) = (get_bit(t, 0), get_bit(t, 1));
                        if va != vb {
                            this.witness = Some((store_id, id, va, vb));
                            return true;
                        }
                    }
                    Some(p) => {
                        let mut used = stored;
                        for universal in [true, false] {
                            let proj = project(t, &shape, p, ka, kb, universal);
                            if emitted.insert(proj.clone()) {
                                out[size + 1].push((proj, Deriv::Quant(universal, store_id as u32, id)));
                                used = true;
                            }
                        }
                        if used {
                            derivs.push(d);
                            this.classes += 1;
                        }
                    }
                }
                false
            };

            // Class ids in `classes` and in the derivation list coincide for
            // every stored class: both grow in the same order below `limit`.
            for (t, d) in candidates {
                if accept(self, &mut classes, &t, d) {
                    return Ok(Vec::new());
                }
            }
            if size >= 2 {
                for id in level_start[size - 1]..level_start[size] {
                    let mut t = classes.get(id).to_vec();
                    t.iter_mut().for_each(|w| *w = !*w);
                    shape.mask_last(&mut t);
                    if accept(self, &mut classes, &t, Deriv::Not(id)) {
                        return Ok(Vec::new());
                    }
                }
            }
            if size >= 3 {
                let mut t = vec![0u64; shape.words];
                for op in 0u8..4 {
                    for i in 1..size - 1 {
                        let j = size - 1 - i;
                        if op != 2 && i > j {
                            continue;
                        }
                        for x in level_start[i]..level_start[i + 1] {
                            let ys = if op != 2 && i == j {
                                x..level_start[j + 1]
                            } else {
                                level_start[j]..level_start[j + 1]
                            };
                            for y in ys {
                                let (tx, ty) = (classes.get(x), classes.get(y));
                                for w in 0..shape.words {
                                    t[w] = match op {
                                        0 => tx[w] & ty[w],
                                        1 => tx[w] | ty[w],
                                        2 => !tx[w] | ty[w],
                                        _ => !(tx[w] ^ ty[w]),
                                    };
                                }
                                shape.mask_last(&mut t);
                                if accept(self, &mut classes, &t, Deriv::Bin(op, x, y)) {
                                    return Ok(Vec::new());
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

enum Generator {
    Atom(Formula),
    /// `exists` over the last variable of a block of a child context.
    Exists(usize, usize),
}

struct BlockStore {
    ctx: Vec<SortId>,
    gens: Vec<(Vec<u64>, Generator)>,
    /// Each block with its generator signature.
    blocks: Vec<(Vec<u64>, Vec<bool>)>,
}

struct BlockEngine<'a> {
    a: &'a FinStructure,
    b: &'a FinStructure,
    space: &'a SentenceSpace,
    stores: Vec<BlockStore>,
}

impl<'a> BlockEngine<'a> {
    fn new(a: &'a FinStructure, b: &'a FinStructure, space: &'a SentenceSpace) -> Self {
        BlockEngine {
            a,
            b,
            space,
            stores: Vec::new(),
        }
    }

    fn run(mut self, max_depth: usize) -> Result<Agreement> {
        let root = self.solve(&[], max_depth)?;
        let store = &self.stores[root];
        let classes = self.stores.iter().map(|s| s.blocks.len()).sum();
        let split = store.gens.iter().position(|(t, _)| get_bit(t, 0) != get_bit(t, 1));
        Ok(match split {
            None => Agreement {
                agree: true,
                witness: None,
                value_a: None,
                value_b: None,
                classes,
            },
            Some(g) => {
                let t = &store.gens[g].0;
                Agreement {
                    agree: false,
                    witness: Some(self.generator_formula(root, g)),
                    value_a: Some(get_bit(t, 0)),
                    value_b: Some(get_bit(t, 1)),
                    classes,
                }
            }
        })
    }

    fn solve(&mut self, ctx: &[SortId], rem: usize) -> Result<usize> {
        let shape = Shape::new(ctx, self.a, self.b);
        let mut gens: Vec<(Vec<u64>, Generator)> = Vec::new();
        let ctx_vec = ctx.to_vec();
        for i in 0..self.space.atom_count(&ctx_vec, 1) {
            let atom = self.space.unrank_atom(&ctx_vec, 1, i);
            gens.push((atom_table(&atom, &shape, self.a, self.b)?, Generator::Atom(atom)));
        }
        if rem > 0 {
            for s in 0..self.a.sig.sorts.len() {
                let mut child = ctx_vec.clone();
                child.push(s);
                let cid = self.solve(&child, rem - 1)?;
                let cshape = Shape::new(&child, self.a, self.b);
                let (ka, kb) = (self.a.size(s), self.b.size(s));
                for (bi, (t, _)) in self.stores[cid].blocks.iter().enumerate() {
                    let proj = project(t, &cshape, &shape, ka, kb, false);
                    gens.push((proj, Generator::Exists(cid, bi)));
                }
            }
        }
        let mut by_signature: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut blocks: Vec<(Vec<u64>, Vec<bool>)> = Vec::new();
        for pos in 0..shape.bits() {
            let sig: Vec<bool> = gens.iter().map(|(t, _)| get_bit(t, pos)).collect();
            let bi = *by_signature.entry(sig.clone()).or_insert_with(|| {
                blocks.push((vec![0u64; shape.words], sig));
                blocks.len() - 1
            });
            set_bit(&mut blocks[bi].0, pos);
        }
        self.stores.push(BlockStore {
            ctx: ctx_vec,
            gens,
            blocks,
        });
        Ok(self.stores.len() - 1)
    }

    fn generator_formula(&self, store: usize, g: usize) -> Formula {
        match &self.stores[store].gens[g].1 {
            Generator::Atom(f) => f.clone(),
            Generator::Exists(child, block) => {
                let cs = &self.stores[*child];
                let v = var_name(cs.ctx.len() - 1);
                let sort = &self.a.sig.sorts[*cs.ctx.last().unwrap()];
                Formula::exists(&v, sort, self.block_formula(*child, *block))
            }
        }
    }

    /// A conjunction of generator literals true exactly on the block, chosen
    /// greedily to rule out the other blocks.
    fn block_formula(&self, store: usize, block: usize) -> Formula {
        let s = &self.stores[store];
        let target = &s.blocks[block].1;
        let mut alive: Vec<usize> = (0..s.blocks.len()).filter(|&b| b != block).collect();
        let mut literals = Vec::new();
        while !alive.is_empty() {
            let g = (0..s.gens.len())
                .max_by_key(|&g| alive.iter().filter(|&&b| s.blocks[b].1[g] != target[g]).count())
                .expect("blocks are separated by some generator");
            let f = self.generator_formula(store, g);
            literals.push(if target[g] { f } else { Formula::not(f) });
            alive.retain(|&b| s.blocks[b].1[g] == target[g]);
        }
        Formula::conj(literals).unwrap_or_else(|| {
            // A single block covers every assignment: any tautology will do.
            match s.gens.first() {
                Some(_) => {
                    let f = self.generator_formula(store, 0);
                    Formula::or(f.clone(), Formula::not(f))
                }
                None => {
                    let v = var_name(s.ctx.len().saturating_sub(1));
                    let t = crate::logic::Term::Var(v);
                    Formula::eq(t.clone(), t)
                }
            }
        })
    }
}
