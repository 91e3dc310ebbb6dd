use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::iso::canonical_form;
use super::structure::FinStructure;
use crate::config::Caps;
use crate::logic::{parse_formula, Compiled, Formula, Interp, Signature, SortId, Val};
use crate::{Error, Result};

/// A signature with a list of closed axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub sig: Signature,
    pub sentences: Vec<Formula>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawTheory {
    pub sig: Signature,
    pub sentences: Vec<String>,
}

impl Theory {
    pub fn new(sig: Signature, sentences: Vec<Formula>) -> Result<Self> {
        sig.validate()?;
        for phi in &sentences {
            if !phi.is_sentence() {
                return Err(Error::UnboundVariable(
                    phi.free_vars().into_iter().next().unwrap_or_default(),
                ));
            }
            phi.check(&sig, &Default::default(), false)?;
        }
        Ok(Theory { sig, sentences })
    }

    /// Parses each sentence in the formula grammar.
    pub fn parse(sig: Signature, sentences: &[&str]) -> Result<Self> {
        let parsed = sentences
            .iter()
            .map(|s| parse_formula(s, &sig))
            .collect::<Result<Vec<_>>>()?;
        Theory::new(sig, parsed)
    }

    pub fn from_raw(raw: &RawTheory) -> Result<Self> {
        let refs: Vec<&str> = raw.sentences.iter().map(String::as_str).collect();
        Theory::parse(raw.sig.clone(), &refs)
    }

    pub fn to_raw(&self) -> RawTheory {
        RawTheory {
            sig: self.sig.clone(),
            sentences: self.sentences.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn abelian_groups() -> Self {
        Theory::parse(
            Signature::group(),
            &[
                "forall x:s. forall y:s. forall z:s. (x + y) + z = x + (y + z)",
                "forall x:s. forall y:s. x + y = y + x",
                "forall x:s. x + 0 = x",
                "forall x:s. x + -x = 0",
            ],
        )
        .expect("well-formed axioms")
    }

    /// Sets with exactly `n` elements over the empty signature on one sort.
    pub fn exactly(n: usize) -> Self {
        let sig = Signature::new(&["s"]);
        let xs: Vec<String> = (0..n).map(|i| format!("y{i}")).collect();
        let mut text = String::new();
        for x in &xs {
            text.push_str(&format!("exists {x}:s. "));
        }
        let mut parts = Vec::new();
        for i in 0..n {
            for j in 0..i {
                parts.push(format!("~{} = {}", xs[i], xs[j]));
            }
        }
        let cover = if n == 0 {
            "~z = z".to_string()
        } else {
            xs.iter().map(|x| format!("z = {x}")).collect::<Vec<_>>().join(" | ")
        };
        parts.push(format!("(forall z:s. {cover})"));
        text.push_str(&parts.join(" & "));
        Theory::parse(sig, &[&text]).expect("well-formed axiom")
    }

    /// One sort with a unary predicate `P` and no axioms.
    pub fn unary_predicate() -> Self {
        Theory::new(Signature::new(&["s"]).with_relation("P", &["s"]), Vec::new()).unwrap()
    }
}

/// Sentences whose truth can only decrease as tables are filled in, judged
/// by polarity: quantifiers are universal in positive position and
/// existential in negative position.
fn is_universal(phi: &Formula, positive: bool) -> bool {
    match phi {
        Formula::Atom(..) | Formula::Eq(..) => true,
        Formula::Not(a) => is_universal(a, !positive),
        Formula::And(a, b) | Formula::Or(a, b) => is_universal(a, positive) && is_universal(b, positive),
        Formula::Implies(a, b) => is_universal(a, !positive) && is_universal(b, positive),
        Formula::Iff(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
        Formula::Forall(_, _, body) => positive && is_universal(body, positive),
        Formula::Exists(_, _, body) => !positive && is_universal(body, positive),
    }
}

/// Dimensions and cells of a table, `None` for an open cell.
type OpenTable<T> = (Vec<usize>, Vec<Option<T>>);

/// Interpretation tables under construction: `None` marks an open cell.
struct Partial {
    sizes: Vec<usize>,
    consts: Vec<Option<usize>>,
    funcs: Vec<OpenTable<Option<usize>>>,
    rels: Vec<OpenTable<bool>>,
}

fn flat(dims: &[usize], args: &[usize]) -> usize {
    dims.iter().zip(args).fold(0, |i, (d, a)| i * d + a)
}

impl Interp for Partial {
    fn sort_size(&self, sort: SortId) -> usize {
        self.sizes[sort]
    }

    fn constant(&self, c: usize) -> Val {
        self.consts[c].map_or(Val::Unknown, Val::El)
    }

    fn apply(&self, f: usize, args: &[usize]) -> Val {
        let (dims, cells) = &self.funcs[f];
        match cells[flat(dims, args)] {
            None => Val::Unknown,
            Some(None) => Val::Undef,
            Some(Some(v)) => Val::El(v),
        }
    }

    fn holds(&self, r: usize, args: &[usize]) -> Option<bool> {
        let (dims, cells) = &self.rels[r];
        cells[flat(dims, args)]
    }
}

#[derive(Clone, Copy)]
enum Cell {
    Const(usize),
    Func(usize, usize),
    Rel(usize, usize),
}

/// One representative per isomorphism class of models of `t` whose carriers
/// all have between 1 and `max_size` elements. Representatives are the
/// canonical forms, ordered by carrier sizes and then by encoding.
pub fn enumerate_models(t: &Theory, max_size: usize) -> Result<Vec<FinStructure>> {
    enumerate_models_with(t, max_size, &Caps::default())
}

pub fn enumerate_models_with(t: &Theory, max_size: usize, caps: &Caps) -> Result<Vec<FinStructure>> {
    if max_size > caps.max_model_size {
        return Err(Error::BoundsExceeded(format!(
            "model size {max_size} exceeds the cap of {}",
            caps.max_model_size
        )));
    }
    let sig = &t.sig;
    let compiled: Vec<(Compiled, bool)> = t
        .sentences
        .iter()
        .map(|phi| Ok((Compiled::new(phi, sig)?, is_universal(phi, true))))
        .collect::<Result<_>>()?;
    let nsorts = sig.sorts.len();
    let mut out = Vec::new();
    let mut size_vectors: Vec<Vec<usize>> = crate::structures::tuples(&vec![max_size; nsorts])
        .map(|v| v.into_iter().map(|x| x + 1).collect())
        .collect();
    size_vectors.sort_by_key(|v: &Vec<usize>| (v.iter().sum::<usize>(), v.clone()));
    for sizes in size_vectors {
        let mut found: BTreeMap<Vec<u32>, FinStructure> = BTreeMap::new();
        search_models(sig, &sizes, &compiled, |m| {
            let (code, canon) = canonical_form(&m);
            found.entry(code).or_insert(canon);
        });
        out.extend(found.into_values());
    }
    Ok(out)
}

fn search_models<F: FnMut(FinStructure)>(
    sig: &Signature,
    sizes: &[usize],
    sentences: &[(Compiled, bool)],
    mut emit: F,
) {
    let mut partial = Partial {
        sizes: sizes.to_vec(),
        consts: vec![None; sig.constants.len()],
        funcs: sig
            .functions
            .keys()
            .map(|f| {
                let (args, _) = sig.function_profile(f).unwrap();
                let dims: Vec<usize> = args.iter().map(|&s| sizes[s]).collect();
                let n = dims.iter().product();
                (dims, vec![None; n])
            })
            .collect(),
        rels: sig
            .relations
            .keys()
            .map(|r| {
                let dims: Vec<usize> = sig.relation_profile(r).unwrap().iter().map(|&s| sizes[s]).collect();
                let n = dims.iter().product();
                (dims, vec![None; n])
            })
            .collect(),
    };
    let const_sorts: Vec<SortId> = sig.constants.keys().map(|c| sig.constant_sort(c).unwrap()).collect();
    let func_info: Vec<(SortId, bool)> = sig
        .functions
        .iter()
        .map(|(f, d)| (sig.function_profile(f).unwrap().1, d.partial))
        .collect();
    let mut cells = Vec::new();
    for c in 0..partial.consts.len() {
        cells.push(Cell::Const(c));
    }
    for (f, (_, v)) in partial.funcs.iter().enumerate() {
        for i in 0..v.len() {
            cells.push(Cell::Func(f, i));
        }
    }
    for (r, (_, v)) in partial.rels.iter().enumerate() {
        for i in 0..v.len() {
            cells.push(Cell::Rel(r, i));
        }
    }
    // Candidate values per cell, as indices into its choice list.
    let choices = |cell: Cell| -> usize {
        match cell {
            Cell::Const(c) => sizes[const_sorts[c]],
            Cell::Func(f, _) => sizes[func_info[f].0] + usize::from(func_info[f].1),
            Cell::Rel(..) => 2,
        }
    };
    let set = |p: &mut Partial, cell: Cell, choice: Option<usize>| match cell {
        Cell::Const(c) => p.consts[c] = choice,
        Cell::Func(f, i) => p.funcs[f].1[i] = choice.map(|k| if func_info[f].1 { k.checked_sub(1) } else { Some(k) }),
        Cell::Rel(r, i) => p.rels[r].1[i] = choice.map(|k| k == 1),
    };
    let universal: Vec<&Compiled> = sentences.iter().filter(|(_, u)| *u).map(|(c, _)| c).collect();
    let mut asg = vec![0usize; sentences.iter().map(|(c, _)| c.slots).max().unwrap_or(0)];
    let consistent = |p: &Partial, asg: &mut Vec<usize>| universal.iter().all(|c| c.eval(p, asg) != Some(false));

    let n = cells.len();
    let mut next = vec![0usize; n + 1];
    let mut depth = 0usize;
    loop {
        if depth == n {
            if sentences.iter().all(|(c, _)| c.eval(&partial, &mut asg) == Some(true)) {
                emit(to_structure(sig, &partial));
            }
            if n == 0 {
                return;
            }
            depth -= 1;
            continue;
        }
        let cell = cells[depth];
        let mut placed = false;
        while next[depth] < choices(cell) {
            let k = next[depth];
            next[depth] += 1;
            set(&mut partial, cell, Some(k));
            if consistent(&partial, &mut asg) {
                placed = true;
                break;
            }
        }
        if placed {
            depth += 1;
            next[depth] = 0;
        } else {
            set(&mut partial, cell, None);
            if depth == 0 {
                return;
            }
            depth -= 1;
        }
    }
}

fn to_structure(sig: &Signature, p: &Partial) -> FinStructure {
    let mut m = FinStructure::blank(sig, &p.sizes);
    for (i, c) in sig.constants.keys().enumerate() {
        m.consts.insert(c.clone(), p.consts[i].unwrap());
    }
    for (i, f) in sig.functions.keys().enumerate() {
        m.funcs.get_mut(f).unwrap().values = p.funcs[i].1.iter().map(|c| c.unwrap()).collect();
    }
    for (i, r) in sig.relations.keys().enumerate() {
        m.rels.get_mut(r).unwrap().bits = p.rels[i].1.iter().map(|c| c.unwrap()).collect();
    }
    m
}
