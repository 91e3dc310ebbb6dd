use std::fs;
use std::path::{Path, PathBuf};

use catmod::config::{Caps, Config};
use catmod::fincat::{empty_diagram, pair_diagram, parallel_diagram, Diagram, FinCategory, RawCategory, RawDiagram};
use catmod::fixtures::category_corpus;
use catmod::homotopic::l_homo_iso;
use catmod::label::Label;
use catmod::logic::Signature;
use catmod::structures::{FinStructure, Homomorphism, RawStructure, RawTheory, Theory};
use catmod::ultra::{FilterOnX, RawFilter};
use catmod::Error;
use clap::Args;
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::output::{usage, Failure};

/// Environment variable naming the JSON config file.
pub const CONFIG_VAR: &str = "CATMOD_CONFIG";

/// Prefix selecting a built-in category instead of a file.
const FIXTURE_PREFIX: &str = "fixture:";

pub struct Context {
    pub config: Config,
}

impl Context {
    pub fn load() -> Result<Context, Failure> {
        let config = match std::env::var_os(CONFIG_VAR) {
            Some(path) => {
                let path = PathBuf::from(path);
                let text = read_text(&path)?;
                Config::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
            }
            None => Config::default(),
        };
        Ok(Context { config })
    }

    pub fn caps(&self) -> &Caps {
        &self.config.caps
    }

    pub fn seed(&self, flag: Option<u64>) -> u64 {
        flag.unwrap_or(self.config.seed)
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    fs::write(path, text + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn fixture(name: &str) -> Result<FinCategory, Failure> {
    category_corpus()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, c)| c)
        .ok_or_else(|| usage(format!("unknown fixture `{name}`")))
}

/// A category file, a bundle directory (its `category.json`) or
/// `fixture:<name>`, without checking the axioms.
pub fn raw_category(spec: &str) -> Result<RawCategory, Failure> {
    if let Some(name) = spec.strip_prefix(FIXTURE_PREFIX) {
        return Ok(fixture(name)?.to_raw());
    }
    let path = Path::new(spec);
    if path.is_dir() {
        read_json(&path.join(crate::bundle::CATEGORY_FILE))
    } else {
        read_json(path)
    }
}

pub fn category(spec: &str) -> Result<FinCategory, Failure> {
    if let Some(name) = spec.strip_prefix(FIXTURE_PREFIX) {
        return fixture(name);
    }
    Ok(FinCategory::from_raw(&raw_category(spec)?)?)
}

pub fn structure(path: &Path) -> Result<FinStructure, Failure> {
    let raw: RawStructure = read_json(path)?;
    FinStructure::from_raw(&raw).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn structures(paths: &[PathBuf]) -> Result<Vec<FinStructure>, Failure> {
    paths.iter().map(|p| structure(p)).collect()
}

/// A built-in signature (`lcat`, `lhomo`, `lhomo-iso`, `group`, `set`) or a
/// JSON file holding a signature or anything with a `sig` field.
pub fn signature(spec: &str) -> Result<Signature, Failure> {
    let sig = match spec {
        "lcat" => Signature::l_cat(),
        "lhomo" => Signature::l_homo(),
        "lhomo-iso" => l_homo_iso(),
        "group" => Signature::group(),
        "set" => Signature::new(&["s"]),
        _ => {
            let path = Path::new(spec);
            let v: Value = read_json(path)?;
            let v = match v.get("sig") {
                Some(inner) => inner.clone(),
                None => v,
            };
            serde_json::from_value(v).map_err(|e| usage(format!("{spec}: {e}")))?
        }
    };
    sig.validate()?;
    Ok(sig)
}

/// A built-in theory (`abelian-groups`, `unary-predicate`, `exactly:<n>`)
/// or a JSON theory file `{"sig": ..., "sentences": [...]}`.
pub fn theory(spec: &str) -> Result<Theory, Failure> {
    if let Some(n) = spec.strip_prefix("exactly:") {
        let n: usize = n.parse().map_err(|_| usage(format!("bad size in `{spec}`")))?;
        return Ok(Theory::exactly(n));
    }
    match spec {
        "abelian-groups" => Ok(Theory::abelian_groups()),
        "unary-predicate" => Ok(Theory::unary_predicate()),
        _ => {
            let raw: RawTheory = read_json(Path::new(spec))?;
            Ok(Theory::from_raw(&raw)?)
        }
    }
}

/// A homomorphism `a → b` given as `{sort: {source label: target label}}`,
/// inline or in a file.
pub fn homomorphism(spec: &str, a: &FinStructure, b: &FinStructure) -> Result<Homomorphism, Failure> {
    let v: Value = if spec.trim_start().starts_with('{') {
        serde_json::from_str(spec).map_err(|e| usage(format!("homomorphism: {e}")))?
    } else {
        read_json(Path::new(spec))?
    };
    let mut maps = Vec::with_capacity(a.sig.sorts.len());
    for (s, sort) in a.sig.sorts.iter().enumerate() {
        let table = v.get(sort);
        let mut map = Vec::with_capacity(a.size(s));
        for x in &a.names[s] {
            let target = table
                .and_then(|t| t.get(x.as_str()))
                .ok_or_else(|| usage(format!("homomorphism has no image for `{x}` of sort `{sort}`")))?;
            let label: Label = serde_json::from_value(target.clone()).map_err(|e| usage(e.to_string()))?;
            let y = b
                .element(s, &label)
                .ok_or_else(|| usage(format!("`{label}` is not an element of sort `{sort}` of the target")))?;
            map.push(y);
        }
        maps.push(map);
    }
    Ok(Homomorphism { maps })
}

pub fn object(c: &FinCategory, name: &str) -> Result<usize, Failure> {
    c.object_index(name)
        .ok_or_else(|| usage(format!("unknown object `{name}`")))
}

pub fn morphism(c: &FinCategory, name: &str) -> Result<usize, Failure> {
    c.morphism_index(name)
        .ok_or_else(|| usage(format!("unknown morphism `{name}`")))
}

/// Parses `name=value`.
pub fn binding(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))
}

/// One of the three small shapes or a diagram file.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct DiagramArgs {
    /// Discrete diagram on two objects.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub pair: Option<Vec<String>>,
    /// Parallel pair of morphisms.
    #[arg(long, num_args = 2, value_names = ["F", "G"])]
    pub parallel: Option<Vec<String>>,
    /// The empty diagram.
    #[arg(long)]
    pub empty: bool,
    /// Diagram file `{"shape": <category>, "objects": {..}, "morphisms": {..}}`.
    #[arg(long)]
    pub diagram: Option<PathBuf>,
}

impl DiagramArgs {
    pub fn resolve(&self, c: &FinCategory) -> Result<Diagram, Failure> {
        if let Some(p) = &self.pair {
            return Ok(pair_diagram(c, object(c, &p[0])?, object(c, &p[1])?));
        }
        if let Some(p) = &self.parallel {
            let (f, g) = (morphism(c, &p[0])?, morphism(c, &p[1])?);
            if c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g) {
                return Err(usage(format!("`{}` and `{}` are not parallel", p[0], p[1])));
            }
            return Ok(parallel_diagram(c, f, g));
        }
        if let Some(path) = &self.diagram {
            let raw: RawDiagram = read_json(path)?;
            return Ok(Diagram::from_raw(c, &raw)?);
        }
        Ok(empty_diagram(c))
    }
}

/// An ultrafilter given by file or as principal at a point.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct FilterArgs {
    /// Filter file `{"X": [...], "members": [[...], ...]}`.
    #[arg(long)]
    pub filter: Option<PathBuf>,
    /// Principal ultrafilter at the given index.
    #[arg(long = "ultra-at", value_name = "X")]
    pub ultra_at: Option<usize>,
}

impl FilterArgs {
    pub fn resolve(&self, n: usize) -> Result<FilterOnX, Failure> {
        let f = match (&self.filter, self.ultra_at) {
            (Some(path), _) => {
                let raw: RawFilter = read_json(path)?;
                FilterOnX::from_raw(&raw)?
            }
            (None, Some(at)) => {
                if at >= n {
                    return Err(usage(format!("--ultra-at {at} is outside an index set of size {n}")));
                }
                FilterOnX::principal(n, at)?
            }
            (None, None) => unreachable!("clap requires one of the two"),
        };
        if f.size() != n {
            return Err(usage(format!("the filter lives on {} points, expected {n}", f.size())));
        }
        Ok(f)
    }
}
