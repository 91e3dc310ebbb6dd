use crate::config::Caps;
use crate::logic::Signature;
use crate::structures::{term_algebra, tuples, FinStructure};
use crate::{Error, Result};

/// Largest number of relation cells expanded over the term algebra.
const MAX_THETA_BITS: usize = 16;

pub fn theta_family(sig: &Signature) -> Result<Vec<FinStructure>> {
    theta_family_with(sig, &Caps::default())
}

/// Every expansion of the one-variable term algebra of the function part
/// of `sig` by relations, in binary order of the relation cells.
pub fn theta_family_with(sig: &Signature, caps: &Caps) -> Result<Vec<FinStructure>> {
    let (t, _) = term_algebra(&sig.fct(), caps.term_algebra_cap)?;
    let base = t.expand_empty(sig);
    let mut cells: Vec<(String, Vec<usize>)> = Vec::new();
    for (r, table) in &base.rels {
        for tuple in tuples(&table.dims) {
            cells.push((r.clone(), tuple));
        }
    }
    if cells.len() > MAX_THETA_BITS {
        return Err(Error::BoundsExceeded(format!(
            "{} relation cells over the term algebra (at most {MAX_THETA_BITS})",
            cells.len()
        )));
    }
    let mut out = Vec::with_capacity(1 << cells.len());
    for bits in 0u32..(1 << cells.len()) {
        let mut m = base.clone();
        for (i, (r, tuple)) in cells.iter().enumerate() {
            if bits & (1 << i) != 0 {
                m.rels.get_mut(r).unwrap().set(tuple, true);
            }
        }
        out.push(m);
    }
    Ok(out)
}
