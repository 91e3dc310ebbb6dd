//! Ehrenfeucht–Fraïssé games on finite relational structures.

use std::collections::HashMap;

use super::structure::{tuples, FinStructure, RelTable};
use crate::config::Caps;
use crate::logic::graph_name;
use crate::{Error, Result};

impl FinStructure {
    /// Replaces every function by its graph relation `f_graph`.
    pub fn relationalize(&self) -> FinStructure {
        let sig = self.sig.relationalize();
        let mut out = FinStructure::blank(&sig, &self.sizes());
        out.names = self.names.clone();
        out.consts = self.consts.clone();
        for (r, t) in &self.rels {
            out.rels.insert(r.clone(), t.clone());
        }
        for (f, t) in &self.funcs {
            let (_, res) = self.sig.function_profile(f).unwrap();
            let mut dims = t.dims.clone();
            dims.push(self.size(res));
            let mut g = RelTable::new(dims);
            for tuple in tuples(&t.dims) {
                if let Some(v) = t.get(&tuple) {
                    let mut row = tuple.clone();
                    row.push(v);
                    g.set(&row, true);
                }
            }
            out.rels.insert(graph_name(f), g);
        }
        out
    }
}

/// A pebbled pair: sort, element of `a`, element of `b`.
type Pebble = (usize, usize, usize);

struct Game<'a> {
    a: &'a FinStructure,
    b: &'a FinStructure,
    /// Constant interpretations prepended to every position.
    base: Vec<Pebble>,
    memo: HashMap<(usize, Vec<Pebble>), bool>,
}

impl Game<'_> {
    /// Whether the pebbled elements (sort, a-element, b-element) together
    /// with the constants form a partial isomorphism.
    fn partial_iso(&self, pebbles: &[Pebble]) -> bool {
        let all: Vec<Pebble> = self.base.iter().chain(pebbles).copied().collect();
        for (i, x) in all.iter().enumerate() {
            for y in &all[..i] {
                if x.0 == y.0 && ((x.1 == y.1) != (x.2 == y.2)) {
                    return false;
                }
            }
        }
        let sig = &self.a.sig;
        for (r, ta) in &self.a.rels {
            let profile = sig.relation_profile(r).unwrap();
            let tb = &self.b.rels[r];
            let candidates: Vec<Vec<usize>> = profile
                .iter()
                .map(|&s| (0..all.len()).filter(|&k| all[k].0 == s).collect())
                .collect();
            let dims: Vec<usize> = candidates.iter().map(Vec::len).collect();
            for pick in tuples(&dims) {
                let ea: Vec<usize> = pick.iter().enumerate().map(|(k, &i)| all[candidates[k][i]].1).collect();
                let eb: Vec<usize> = pick.iter().enumerate().map(|(k, &i)| all[candidates[k][i]].2).collect();
                if ta.get(&ea) != tb.get(&eb) {
                    return false;
                }
            }
        }
        true
    }

    fn duplicator_wins(&mut self, rounds: usize, pebbles: &mut Vec<Pebble>) -> bool {
        if !self.partial_iso(pebbles) {
            return false;
        }
        if rounds == 0 {
            return true;
        }
        let mut key = pebbles.clone();
        key.sort_unstable();
        if let Some(&v) = self.memo.get(&(rounds, key.clone())) {
            return v;
        }
        let mut result = true;
        'spoiler: for s in 0..self.a.sig.sorts.len() {
            let (na, nb) = (self.a.size(s), self.b.size(s));
            for x in 0..na {
                let mut answered = false;
                for y in 0..nb {
                    pebbles.push((s, x, y));
                    let ok = self.duplicator_wins(rounds - 1, pebbles);
                    pebbles.pop();
                    if ok {
                        answered = true;
                        break;
                    }
                }
                if !answered {
                    result = false;
                    break 'spoiler;
                }
            }
            for y in 0..nb {
                let mut answered = false;
                for x in 0..na {
                    pebbles.push((s, x, y));
                    let ok = self.duplicator_wins(rounds - 1, pebbles);
                    pebbles.pop();
                    if ok {
                        answered = true;
                        break;
                    }
                }
                if !answered {
                    result = false;
                    break 'spoiler;
                }
            }
        }
        self.memo.insert((rounds, key), result);
        result
    }
}

/// Whether Duplicator wins the `k`-round game on `a` and `b`. Function
/// symbols are replaced by their graphs first.
pub fn ef_equivalent(a: &FinStructure, b: &FinStructure, k: usize) -> Result<bool> {
    ef_equivalent_with(a, b, k, &Caps::default())
}

pub fn ef_equivalent_with(a: &FinStructure, b: &FinStructure, k: usize, caps: &Caps) -> Result<bool> {
    if k > caps.max_ef_rounds {
        return Err(Error::BoundsExceeded(format!(
            "{k} rounds exceeds the cap of {}",
            caps.max_ef_rounds
        )));
    }
    a.check_same_signature(b)?;
    let (a, b) = (a.relationalize(), b.relationalize());
    let base = a
        .consts
        .iter()
        .map(|(c, &e)| (a.sig.constant_sort(c).unwrap(), e, b.consts[c]))
        .collect();
    let mut game = Game {
        a: &a,
        b: &b,
        base,
        memo: HashMap::new(),
    };
    Ok(game.duplicator_wins(k, &mut Vec::new()))
}
