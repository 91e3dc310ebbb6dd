use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::label::Label;
use crate::logic::{Signature, SortId};
use crate::report::Report;
use crate::{Error, Result};

/// Dense table of a (possibly partial) function, indexed in mixed radix with
/// the first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FuncTable {
    pub dims: Vec<usize>,
    pub values: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelTable {
    pub dims: Vec<usize>,
    pub bits: Vec<bool>,
}

fn flat_index(dims: &[usize], args: &[usize]) -> usize {
    let mut i = 0;
    for (d, a) in dims.iter().zip(args) {
        i = i * d + a;
    }
    i
}

/// Decodes a flat index back into an argument tuple.
pub(crate) fn unflatten(dims: &[usize], mut i: usize, out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = i % dims[k];
        i /= dims[k];
    }
}

/// All tuples over the given carrier sizes, in lexicographic order.
pub(crate) fn tuples(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |i| {
        let mut t = vec![0; dims.len()];
        unflatten(dims, i, &mut t);
        t
    })
}

impl FuncTable {
    pub fn new(dims: Vec<usize>) -> Self {
        let n = dims.iter().product();
        FuncTable {
            dims,
            values: vec![None; n],
        }
    }

    pub fn get(&self, args: &[usize]) -> Option<usize> {
        self.values[flat_index(&self.dims, args)]
    }

    pub fn set(&mut self, args: &[usize], value: Option<usize>) {
        let i = flat_index(&self.dims, args);
        self.values[i] = value;
    }
}

impl RelTable {
    pub fn new(dims: Vec<usize>) -> Self {
        let n = dims.iter().product();
        RelTable {
            dims,
            bits: vec![false; n],
        }
    }

    pub fn get(&self, args: &[usize]) -> bool {
        self.bits[flat_index(&self.dims, args)]
    }

    pub fn set(&mut self, args: &[usize], value: bool) {
        let i = flat_index(&self.dims, args);
        self.bits[i] = value;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }
}

/// A finite multi-sorted structure. Elements of sort `s` are `0..size(s)`;
/// `names` keeps the external labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinStructure {
    pub sig: Signature,
    pub names: Vec<Vec<Label>>,
    pub consts: BTreeMap<String, usize>,
    pub funcs: BTreeMap<String, FuncTable>,
    pub rels: BTreeMap<String, RelTable>,
}

impl FinStructure {
    /// Structure with carriers `0..sizes[s]`, every function undefined,
    /// every relation empty and every constant at element 0.
    pub fn blank(sig: &Signature, sizes: &[usize]) -> Self {
        let names = sizes.iter().map(|&n| (0..n).map(Label::from).collect()).collect();
        let consts = sig.constants.keys().map(|c| (c.clone(), 0)).collect();
        let funcs = sig
            .functions
            .keys()
            .map(|f| {
                let (args, _) = sig.function_profile(f).expect("validated signature");
                (f.clone(), FuncTable::new(args.iter().map(|&s| sizes[s]).collect()))
            })
            .collect();
        let rels = sig
            .relations
            .keys()
            .map(|r| {
                let args = sig.relation_profile(r).expect("validated signature");
                (r.clone(), RelTable::new(args.iter().map(|&s| sizes[s]).collect()))
            })
            .collect();
        FinStructure {
            sig: sig.clone(),
            names,
            consts,
            funcs,
            rels,
        }
    }

    pub fn size(&self, sort: SortId) -> usize {
        self.names[sort].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn total_size(&self) -> usize {
        self.names.iter().map(Vec::len).sum()
    }

    pub fn constant(&self, name: &str) -> usize {
        self.consts[name]
    }

    pub fn apply(&self, f: &str, args: &[usize]) -> Option<usize> {
        self.funcs[f].get(args)
    }

    pub fn holds(&self, r: &str, args: &[usize]) -> bool {
        self.rels[r].get(args)
    }

    pub fn element(&self, sort: SortId, label: &Label) -> Option<usize> {
        self.names[sort].iter().position(|l| l == label)
    }

    pub fn label(&self, sort: SortId, e: usize) -> &Label {
        &self.names[sort][e]
    }

    /// Replaces labels by `0..n` in every sort.
    pub fn with_index_names(mut self) -> Self {
        for carrier in &mut self.names {
            let n = carrier.len();
            *carrier = (0..n).map(Label::from).collect();
        }
        self
    }

    /// Structures are compatible when they have the same signature.
    pub fn check_same_signature(&self, other: &FinStructure) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(
                "structures interpret different signatures".into(),
            ));
        }
        Ok(())
    }

    pub fn from_raw(raw: &RawStructure) -> Result<Self> {
        let report = validate_structure(raw);
        if !report.is_valid() {
            return Err(Error::InvalidStructure(report));
        }
        let sig = &raw.sig;
        let names: Vec<Vec<Label>> = sig.sorts.iter().map(|s| raw.carriers[s].clone()).collect();
        let sizes: Vec<usize> = names.iter().map(Vec::len).collect();
        let mut m = FinStructure::blank(sig, &sizes);
        m.names = names;
        let lookup = |sort: SortId, l: &Label| m.element(sort, l).expect("validated");
        let mut consts = BTreeMap::new();
        for (c, l) in &raw.consts {
            consts.insert(c.clone(), lookup(sig.constant_sort(c).unwrap(), l));
        }
        let mut funcs = m.funcs.clone();
        for (f, table) in &raw.funcs {
            let (args, res) = sig.function_profile(f).unwrap();
            let t = funcs.get_mut(f).unwrap();
            for row in &table.map {
                let tuple: Vec<usize> = args.iter().zip(row).map(|(&s, l)| lookup(s, l)).collect();
                t.set(&tuple, Some(lookup(res, &row[args.len()])));
            }
        }
        let mut rels = m.rels.clone();
        for (r, rows) in &raw.rels {
            let args = sig.relation_profile(r).unwrap();
            let t = rels.get_mut(r).unwrap();
            for row in rows {
                let tuple: Vec<usize> = args.iter().zip(row).map(|(&s, l)| lookup(s, l)).collect();
                t.set(&tuple, true);
            }
        }
        m.consts = consts;
        m.funcs = funcs;
        m.rels = rels;
        Ok(m)
    }

    pub fn to_raw(&self) -> RawStructure {
        let sig = &self.sig;
        let carriers = sig
            .sorts
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), self.names[i].clone()))
            .collect();
        let consts = self
            .consts
            .iter()
            .map(|(c, &e)| {
                let s = sig.constant_sort(c).unwrap();
                (c.clone(), self.names[s][e].clone())
            })
            .collect();
        let mut funcs = BTreeMap::new();
        for (f, t) in &self.funcs {
            let (args, res) = sig.function_profile(f).unwrap();
            let mut map = Vec::new();
            for tuple in tuples(&t.dims) {
                if let Some(v) = t.get(&tuple) {
                    let mut row: Vec<Label> = args
                        .iter()
                        .zip(&tuple)
                        .map(|(&s, &e)| self.names[s][e].clone())
                        .collect();
                    row.push(self.names[res][v].clone());
                    map.push(row);
                }
            }
            funcs.insert(f.clone(), RawFunction { map });
        }
        let mut rels = BTreeMap::new();
        for (r, t) in &self.rels {
            let args = sig.relation_profile(r).unwrap();
            let rows = tuples(&t.dims)
                .filter(|tuple| t.get(tuple))
                .map(|tuple| {
                    args.iter()
                        .zip(&tuple)
                        .map(|(&s, &e)| self.names[s][e].clone())
                        .collect()
                })
                .collect();
            rels.insert(r.clone(), rows);
        }
        RawStructure {
            sig: sig.clone(),
            carriers,
            consts,
            funcs,
            rels,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunction {
    pub map: Vec<Vec<Label>>,
}

/// The JSON form of a structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawStructure {
    pub sig: Signature,
    pub carriers: BTreeMap<String, Vec<Label>>,
    #[serde(default)]
    pub consts: BTreeMap<String, Label>,
    #[serde(default)]
    pub funcs: BTreeMap<String, RawFunction>,
    #[serde(default)]
    pub rels: BTreeMap<String, Vec<Vec<Label>>>,
}

impl Serialize for FinStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinStructure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawStructure::deserialize(d)?;
        FinStructure::from_raw(&raw).map_err(serde::de::Error::custom)
    }
}

/// Lists every violated closure condition of `raw`.
pub fn validate_structure(raw: &RawStructure) -> Report {
    let mut report = Report::new();
    let sig = &raw.sig;
    if let Err(e) = sig.validate() {
        report.push(e.to_string());
        return report;
    }
    for s in &sig.sorts {
        match raw.carriers.get(s) {
            None => report.push(format!("no carrier for sort `{s}`")),
            Some(c) => {
                let mut seen = std::collections::BTreeSet::new();
                for l in c {
                    if !seen.insert(l) {
                        report.push(format!("element `{l}` listed twice in sort `{s}`"));
                    }
                }
            }
        }
    }
    for s in raw.carriers.keys() {
        if sig.sort_id(s).is_none() {
            report.push(format!("carrier given for undeclared sort `{s}`"));
        }
    }
    if !report.is_valid() {
        return report;
    }
    let carrier = |s: SortId| &raw.carriers[&sig.sorts[s]];
    let contains = |s: SortId, l: &Label| carrier(s).contains(l);

    for (c, sort) in &sig.constants {
        match raw.consts.get(c) {
            None => report.push(format!("constant `{c}` is not interpreted")),
            Some(l) if !contains(sig.sort_id(sort).unwrap(), l) => {
                report.push(format!("constant `{c}` = `{l}` lies outside sort `{sort}`"))
            }
            _ => {}
        }
    }
    for c in raw.consts.keys() {
        if !sig.constants.contains_key(c) {
            report.push(format!("`{c}` is not a constant of the signature"));
        }
    }

    for (f, decl) in &sig.functions {
        let (args, res) = sig.function_profile(f).unwrap();
        let rows = raw.funcs.get(f).map(|t| t.map.as_slice()).unwrap_or(&[]);
        let mut defined: BTreeMap<Vec<&Label>, &Label> = BTreeMap::new();
        let mut bad_rows = Vec::new();
        for row in rows {
            if row.len() != args.len() + 1 {
                report.push(format!(
                    "function `{f}`: row of length {} where {} was expected",
                    row.len(),
                    args.len() + 1
                ));
                continue;
            }
            let args_ok = args.iter().zip(row).all(|(&s, l)| contains(s, l));
            let val_ok = contains(res, &row[args.len()]);
            if !args_ok || !val_ok {
                bad_rows.push(format_row(row));
                if args_ok {
                    // The tuple is covered; only its value is wrong.
                    defined.insert(row[..args.len()].iter().collect(), &row[args.len()]);
                }
                continue;
            }
            let key: Vec<&Label> = row[..args.len()].iter().collect();
            if let Some(prev) = defined.insert(key, &row[args.len()]) {
                if prev != &row[args.len()] {
                    report.push(format!(
                        "function `{f}` has two values on ({})",
                        row[..args.len()]
                            .iter()
                            .map(|l| l.0.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                }
            }
        }
        if !bad_rows.is_empty() {
            report.violations.push(crate::report::Violation {
                axiom: None,
                message: format!("function `{f}` has entries outside the carriers"),
                witnesses: bad_rows,
            });
        }
        if !decl.partial {
            let dims: Vec<usize> = args.iter().map(|&s| carrier(s).len()).collect();
            let missing: Vec<String> = tuples(&dims)
                .filter_map(|t| {
                    let key: Vec<&Label> = args.iter().zip(&t).map(|(&s, &e)| &carrier(s)[e]).collect();
                    if defined.contains_key(&key) {
                        None
                    } else {
                        Some(format!(
                            "({})",
                            key.iter().map(|l| l.0.as_str()).collect::<Vec<_>>().join(", ")
                        ))
                    }
                })
                .collect();
            if !missing.is_empty() {
                report.violations.push(crate::report::Violation {
                    axiom: None,
                    message: format!("total function `{f}` is undefined on some tuples"),
                    witnesses: missing,
                });
            }
        }
    }
    for f in raw.funcs.keys() {
        if !sig.functions.contains_key(f) {
            report.push(format!("`{f}` is not a function of the signature"));
        }
    }

    for (r, rows) in &raw.rels {
        let Some(args) = sig.relation_profile(r) else {
            report.push(format!("`{r}` is not a relation of the signature"));
            continue;
        };
        let bad: Vec<String> = rows
            .iter()
            .filter(|row| row.len() != args.len() || !args.iter().zip(*row).all(|(&s, l)| contains(s, l)))
            .map(|row| format_row(row))
            .collect();
        if !bad.is_empty() {
            report.violations.push(crate::report::Violation {
                axiom: None,
                message: format!("relation `{r}` has tuples outside the carriers"),
                witnesses: bad,
            });
        }
    }
    report
}

fn format_row(row: &[Label]) -> String {
    format!("[{}]", row.iter().map(|l| l.0.as_str()).collect::<Vec<_>>().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn z2_raw() -> serde_json::Value {
        json!({
            "sig": Signature::group(),
            "carriers": {"s": [0, 1]},
            "consts": {"0": 0},
            "funcs": {
                "+": {"map": [[0,0,0],[0,1,1],[1,0,1],[1,1,0]]},
                "-": {"map": [[0,0],[1,1]]}
            },
            "rels": {}
        })
    }

    #[test]
    fn valid_z2() {
        let raw: RawStructure = serde_json::from_value(z2_raw()).unwrap();
        assert!(validate_structure(&raw).is_valid());
        let m = FinStructure::from_raw(&raw).unwrap();
        assert_eq!(m.apply("+", &[1, 1]), Some(0));
        assert_eq!(m.to_raw(), raw);
    }

    #[test]
    fn value_outside_carrier() {
        let mut v = z2_raw();
        v["funcs"]["-"]["map"][1] = json!([1, 2]);
        let raw: RawStructure = serde_json::from_value(v).unwrap();
        assert_eq!(validate_structure(&raw).len(), 1);
    }

    #[test]
    fn missing_tuple_of_total_function() {
        let mut v = z2_raw();
        v["funcs"]["-"]["map"] = json!([[0, 0]]);
        let raw: RawStructure = serde_json::from_value(v).unwrap();
        let report = validate_structure(&raw);
        assert_eq!(report.len(), 1, "{report}");
    }
}
