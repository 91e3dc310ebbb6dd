use serde::{Deserialize, Serialize};

use super::isograph::{build_isograph, IsoGraph};
use super::qc::HomotopicModel;
use crate::config::Caps;
use crate::fincat::FinCategory;
use crate::logic::{bounded_agreement, Env, SentenceSpace, Signature};
use crate::{Error, Result};

/// A sentence on which the two categories disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub sentence: String,
    #[serde(rename = "valueC")]
    pub value_c: bool,
    #[serde(rename = "valueD")]
    pub value_d: bool,
    /// Non-identity arrows of the iso-graphs used on each side.
    pub isographs: [Vec<String>; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub depth: usize,
    pub max_size: usize,
    /// Whether the whole sentence space was covered.
    pub exhaustive: bool,
    /// Size of the sentence space.
    pub space: u128,
    /// Sentences evaluated one by one (zero in exhaustive mode).
    pub sampled: usize,
    pub seed: u64,
    pub certificates: Vec<Certificate>,
}

impl AgreementReport {
    pub fn agree(&self) -> bool {
        self.certificates.is_empty()
    }
}

/// Compares `c` and `d` on homotopic sentences of quantifier depth at most
/// `depth` and at most `max_size` nodes, using the default iso-graphs.
///
/// When the space holds at most `budget` sentences it is covered in full;
/// otherwise `budget` sentences are drawn uniformly with the given seed.
pub fn agreement_test(
    c: &FinCategory,
    d: &FinCategory,
    depth: usize,
    max_size: usize,
    budget: usize,
    seed: u64,
) -> Result<AgreementReport> {
    agreement_test_with(&build_isograph(c), &build_isograph(d), depth, max_size, budget, seed)
}

/// [`agreement_test`] with explicit iso-graphs.
pub fn agreement_test_with(
    ic: &IsoGraph,
    id: &IsoGraph,
    depth: usize,
    max_size: usize,
    budget: usize,
    seed: u64,
) -> Result<AgreementReport> {
    let caps = Caps::default();
    for i in [ic, id] {
        if i.host.num_morphisms() > caps.max_morphisms {
            return Err(Error::BoundsExceeded(format!(
                "{} morphisms exceed the cap of {}",
                i.host.num_morphisms(),
                caps.max_morphisms
            )));
        }
    }
    let space = SentenceSpace::new(&Signature::l_homo(), depth, max_size, true, &caps)?;
    let (mc, md) = (HomotopicModel::new(ic), HomotopicModel::new(id));
    let isographs = [ic.arrow_names(), id.arrow_names()];
    let mut report = AgreementReport {
        depth,
        max_size,
        exhaustive: space.len() <= budget as u128,
        space: space.len(),
        sampled: 0,
        seed,
        certificates: Vec::new(),
    };
    if report.exhaustive {
        let outcome = bounded_agreement(&mc.structure, &md.structure, depth, Some(max_size), true)?;
        if let Some(phi) = outcome.witness {
            report.certificates.push(Certificate {
                sentence: phi.to_string(),
                value_c: outcome.value_a.unwrap_or_default(),
                value_d: outcome.value_b.unwrap_or_default(),
                isographs,
            });
        }
        return Ok(report);
    }
    let env = Env::new();
    for phi in space.sample_seeded(budget, seed) {
        let value_c = mc.evaluator(&phi)?.eval(&env)?;
        let value_d = md.evaluator(&phi)?.eval(&env)?;
        report.sampled += 1;
        if value_c != value_d {
            report.certificates.push(Certificate {
                sentence: phi.to_string(),
                value_c,
                value_d,
                isographs: isographs.clone(),
            });
        }
    }
    Ok(report)
}
