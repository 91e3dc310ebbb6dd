use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type SortId = usize;

/// Name of the binary composition symbol of `L_cat`; printed infix as `g o f`.
pub const COMP: &str = "comp";
pub const DOM: &str = "dom";
pub const RNG: &str = "rng";
pub const ID: &str = "Id";
/// The ternary quasi-composition predicate of `L_homo`.
pub const QC: &str = "QC";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionSymbol {
    pub args: Vec<String>,
    pub result: String,
    #[serde(default)]
    pub partial: bool,
}

/// A multi-sorted signature with (possibly partial) function symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub sorts: Vec<String>,
    #[serde(default)]
    pub constants: BTreeMap<String, String>,
    #[serde(default)]
    pub functions: BTreeMap<String, FunctionSymbol>,
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<String>>,
}

impl Signature {
    pub fn new(sorts: &[&str]) -> Self {
        Signature {
            sorts: sorts.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn with_constant(mut self, name: &str, sort: &str) -> Self {
        self.constants.insert(name.into(), sort.into());
        self
    }

    pub fn with_function(mut self, name: &str, args: &[&str], result: &str, partial: bool) -> Self {
        self.functions.insert(
            name.into(),
            FunctionSymbol {
                args: args.iter().map(|s| s.to_string()).collect(),
                result: result.into(),
                partial,
            },
        );
        self
    }

    pub fn with_relation(mut self, name: &str, args: &[&str]) -> Self {
        self.relations
            .insert(name.into(), args.iter().map(|s| s.to_string()).collect());
        self
    }

    /// The two-sorted language of categories: objects `o`, morphisms `m`,
    /// partial composition, `dom`, `rng` and `Id`.
    pub fn l_cat() -> Self {
        Signature::new(&["o", "m"])
            .with_function(COMP, &["m", "m"], "m", true)
            .with_function(DOM, &["m"], "o", false)
            .with_function(RNG, &["m"], "o", false)
            .with_function(ID, &["o"], "m", false)
    }

    /// The homotopic language: one sort of morphisms and the ternary `QC`.
    pub fn l_homo() -> Self {
        Signature::new(&["m"]).with_relation(QC, &["m", "m", "m"])
    }

    /// Abelian groups in the language `(+, -, 0)` over the single sort `s`.
    pub fn group() -> Self {
        Signature::new(&["s"])
            .with_constant("0", "s")
            .with_function("+", &["s", "s"], "s", false)
            .with_function("-", &["s"], "s", false)
    }

    /// Restriction obtained by dropping every relation symbol.
    pub fn fct(&self) -> Self {
        Signature {
            relations: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn sort_id(&self, name: &str) -> Option<SortId> {
        self.sorts.iter().position(|s| s == name)
    }

    pub(crate) fn sort_of(&self, name: &str) -> Result<SortId> {
        self.sort_id(name)
            .ok_or_else(|| Error::Sort(format!("undeclared sort `{name}`")))
    }

    pub fn constant_sort(&self, name: &str) -> Option<SortId> {
        self.constants.get(name).and_then(|s| self.sort_id(s))
    }

    /// Argument and result sorts of a function symbol.
    pub fn function_profile(&self, name: &str) -> Option<(Vec<SortId>, SortId)> {
        let f = self.functions.get(name)?;
        let args = f.args.iter().map(|a| self.sort_id(a)).collect::<Option<Vec<_>>>()?;
        Some((args, self.sort_id(&f.result)?))
    }

    pub fn relation_profile(&self, name: &str) -> Option<Vec<SortId>> {
        self.relations.get(name)?.iter().map(|a| self.sort_id(a)).collect()
    }

    pub fn is_symbol(&self, name: &str) -> bool {
        self.constants.contains_key(name) || self.functions.contains_key(name) || self.relations.contains_key(name)
    }

    pub fn has_infix_comp(&self) -> bool {
        self.functions.get(COMP).is_some_and(|f| f.args.len() == 2)
    }

    pub fn is_relational(&self) -> bool {
        self.functions.is_empty()
    }

    /// Checks unique names and declared sorts.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for s in &self.sorts {
            if !seen.insert(s.as_str()) {
                return Err(Error::Sort(format!("duplicate sort `{s}`")));
            }
        }
        let mut names = BTreeSet::new();
        let all = self
            .constants
            .keys()
            .chain(self.functions.keys())
            .chain(self.relations.keys());
        for n in all {
            if !names.insert(n.as_str()) {
                return Err(Error::Sort(format!("symbol `{n}` declared twice")));
            }
        }
        for (c, s) in &self.constants {
            self.sort_of(s)
                .map_err(|_| Error::Sort(format!("constant `{c}` has undeclared sort `{s}`")))?;
        }
        for (name, f) in &self.functions {
            for s in f.args.iter().chain(std::iter::once(&f.result)) {
                self.sort_of(s)
                    .map_err(|_| Error::Sort(format!("function `{name}` mentions undeclared sort `{s}`")))?;
            }
        }
        for (name, args) in &self.relations {
            for s in args {
                self.sort_of(s)
                    .map_err(|_| Error::Sort(format!("relation `{name}` mentions undeclared sort `{s}`")))?;
            }
        }
        Ok(())
    }

    /// Replaces every function symbol `f` by its graph relation `f_graph`
    /// (argument sorts followed by the result sort).
    pub fn relationalize(&self) -> Self {
        let mut out = Signature {
            sorts: self.sorts.clone(),
            constants: self.constants.clone(),
            functions: BTreeMap::new(),
            relations: self.relations.clone(),
        };
        for (name, f) in &self.functions {
            let mut args = f.args.clone();
            args.push(f.result.clone());
            out.relations.insert(graph_name(name), args);
        }
        out
    }
}

pub(crate) fn graph_name(function: &str) -> String {
    format!("{function}_graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_signatures_validate() {
        Signature::l_cat().validate().unwrap();
        Signature::l_homo().validate().unwrap();
        Signature::group().validate().unwrap();
    }

    #[test]
    fn duplicate_names_rejected() {
        let sig = Signature::new(&["s"])
            .with_constant("c", "s")
            .with_relation("c", &["s"]);
        assert!(matches!(sig.validate(), Err(Error::Sort(_))));
        let sig = Signature::new(&["s"]).with_relation("R", &["t"]);
        assert!(sig.validate().is_err());
    }

    #[test]
    fn json_shape() {
        let sig = Signature::l_cat();
        let v = serde_json::to_value(&sig).unwrap();
        assert_eq!(v["functions"]["comp"]["partial"], true);
        assert_eq!(v["sorts"], serde_json::json!(["o", "m"]));
        let back: Signature = serde_json::from_value(v).unwrap();
        assert_eq!(back, sig);
    }
}
