use super::hom::{is_homomorphism, Homomorphism};
use super::structure::{tuples, FinStructure};
use crate::{Error, Result};

impl FinStructure {
    /// The reduct forgetting every relation symbol.
    pub fn function_reduct(&self) -> FinStructure {
        FinStructure {
            sig: self.sig.fct(),
            names: self.names.clone(),
            consts: self.consts.clone(),
            funcs: self.funcs.clone(),
            rels: Default::default(),
        }
    }

    /// Same carriers and operations with the relations of `sig` empty.
    pub fn expand_empty(&self, sig: &crate::logic::Signature) -> FinStructure {
        let mut out = FinStructure::blank(sig, &self.sizes());
        out.names = self.names.clone();
        out.consts = self.consts.clone();
        out.funcs = self.funcs.clone();
        out
    }
}

/// The unique expansion of `n` (a structure for the function/constant part
/// of `m`'s signature) making `f: n → m` a strong homomorphism: each
/// relation is the preimage of its interpretation in `m`.
pub fn pullback_structure(f: &Homomorphism, m: &FinStructure, n: &FinStructure) -> Result<FinStructure> {
    let fct = m.function_reduct();
    if n.sig != fct.sig {
        return Err(Error::SignatureMismatch(
            "the pulled-back carrier must interpret exactly the function symbols of the target".into(),
        ));
    }
    if !is_homomorphism(n, &fct, f) {
        return Err(Error::NotAReductHom(
            "the map does not preserve the function and constant symbols".into(),
        ));
    }
    let mut out = n.expand_empty(&m.sig);
    for (r, t) in &m.rels {
        let args = m.sig.relation_profile(r).unwrap();
        let target = out.rels.get_mut(r).unwrap();
        for tuple in tuples(&target.dims.clone()) {
            let image: Vec<usize> = args.iter().zip(&tuple).map(|(&s, &e)| f.maps[s][e]).collect();
            target.set(&tuple, t.get(&image));
        }
    }
    Ok(out)
}
