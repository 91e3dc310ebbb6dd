use std::collections::HashMap;

use super::structure::{tuples, FinStructure};
use crate::label::Label;
use crate::logic::{Signature, Term};
use crate::{Error, Result};

/// Name of the single variable of the term algebra; it has the first sort.
pub const TERM_VARIABLE: &str = "x";

/// The term algebra in one variable `x` of the first sort: every function
/// symbol is interpreted freely and every relation is empty. Fails once more
/// than `cap` terms have been generated.
pub fn term_algebra(sig: &Signature, cap: usize) -> Result<(FinStructure, Vec<Vec<Term>>)> {
    sig.validate()?;
    if sig.sorts.is_empty() {
        return Err(Error::InvalidInput("term algebra needs at least one sort".into()));
    }
    let nsorts = sig.sorts.len();
    // Terms are hash-consed: a term is a symbol applied to term ids.
    type Node = (Option<String>, Vec<usize>);
    let mut nodes: Vec<Vec<Node>> = vec![Vec::new(); nsorts];
    let mut index: Vec<HashMap<Node, usize>> = vec![HashMap::new(); nsorts];
    let mut total = 0usize;
    let mut add = |nodes: &mut Vec<Vec<Node>>, s: usize, n: Node| -> Result<()> {
        if index[s].contains_key(&n) {
            return Ok(());
        }
        total += 1;
        if total > cap {
            return Err(Error::TermAlgebraInfinite { cap });
        }
        index[s].insert(n.clone(), nodes[s].len());
        nodes[s].push(n);
        Ok(())
    };
    add(&mut nodes, 0, (None, Vec::new()))?;
    let consts: Vec<(String, usize)> = sig
        .constants
        .keys()
        .map(|c| (c.clone(), sig.constant_sort(c).unwrap()))
        .collect();
    for (c, s) in &consts {
        add(&mut nodes, *s, (Some(c.clone()), Vec::new()))?;
    }
    // Breadth-first closure: each round applies every symbol to the tuples
    // that use at least one term found in the previous round.
    let mut old = vec![0; nsorts];
    loop {
        let snapshot: Vec<usize> = nodes.iter().map(Vec::len).collect();
        if snapshot == old {
            break;
        }
        for f in sig.functions.keys() {
            let (args, res) = sig.function_profile(f).unwrap();
            let dims: Vec<usize> = args.iter().map(|&s| snapshot[s]).collect();
            for tuple in tuples(&dims) {
                if args.iter().zip(&tuple).all(|(&s, &i)| i < old[s]) {
                    continue;
                }
                add(&mut nodes, res, (Some(f.clone()), tuple))?;
            }
        }
        old = snapshot;
    }
    let mut terms: Vec<Vec<Term>> = vec![Vec::new(); nsorts];
    let mut built = 0;
    while built < total {
        for s in 0..nsorts {
            while terms[s].len() < nodes[s].len() {
                let (sym, args) = &nodes[s][terms[s].len()];
                let t = match sym {
                    None => Term::var(TERM_VARIABLE),
                    Some(c) if args.is_empty() && sig.constants.contains_key(c) => Term::constant(c),
                    Some(f) => {
                        let (arg_sorts, _) = sig.function_profile(f).unwrap();
                        if arg_sorts.iter().zip(args).any(|(&a, &i)| i >= terms[a].len()) {
                            break;
                        }
                        Term::App(
                            f.clone(),
                            arg_sorts.iter().zip(args).map(|(&a, &i)| terms[a][i].clone()).collect(),
                        )
                    }
                };
                terms[s].push(t);
                built += 1;
            }
        }
    }
    let sizes: Vec<usize> = terms.iter().map(Vec::len).collect();
    let mut m = FinStructure::blank(sig, &sizes);
    m.names = terms
        .iter()
        .map(|ts| ts.iter().map(|t| Label(t.to_string())).collect())
        .collect();
    for (c, s) in &consts {
        m.consts.insert(c.clone(), index[*s][&(Some(c.clone()), Vec::new())]);
    }
    for f in sig.functions.keys() {
        let (_, res) = sig.function_profile(f).unwrap();
        let table = m.funcs.get_mut(f).unwrap();
        for tuple in tuples(&table.dims.clone()) {
            let id = index[res][&(Some(f.clone()), tuple.clone())];
            table.set(&tuple, Some(id));
        }
    }
    Ok((m, terms))
}

/// Value of a one-variable term in `m` with `x` sent to `x_value`; `None`
/// when a partial function is undefined along the way.
pub fn eval_term_at(m: &FinStructure, t: &Term, x_value: usize) -> Option<usize> {
    match t {
        Term::Var(_) => Some(x_value),
        Term::Const(c) => Some(m.consts[c]),
        Term::App(f, args) => {
            let vals = args
                .iter()
                .map(|a| eval_term_at(m, a, x_value))
                .collect::<Option<Vec<_>>>()?;
            m.apply(f, &vals)
        }
    }
}
