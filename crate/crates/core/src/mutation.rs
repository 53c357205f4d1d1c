//! Left mutations and the Serre functor check.
//!
//! `L_E X = T^{-1} C(ev)` where `ev: sum_p (T^{-p} E)^{dim Hom(E, T^p X)} -> X`
//! is assembled from Hom basis representatives. When every `Hom(E, T^p X)`
//! vanishes the evaluation map has zero source and the step returns
//! `T^{-1} X`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::collection::ShiftedHoms;
use crate::hom::hom_basis;
use crate::iso::{iso_equivalent, IsoVerdict};
use crate::mf::GradedMF;
use crate::morphism::MFMorphism;
use crate::params::DeformationParams;
use crate::polymat::PolyMatrix;
use crate::subset::SubsetIndex;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct MutationStep {
    /// Reduced `T^{-1} C(ev)`.
    pub result: GradedMF,
    /// `p -> dim Hom(E, T^p X)`, nonzero only.
    pub support: BTreeMap<i64, usize>,
    pub stripped: usize,
}

/// The evaluation map `sum_p (T^{-p} E)^{dim} -> X`.
pub fn evaluation(e: &GradedMF, x: &GradedMF) -> Result<(MFMorphism, BTreeMap<i64, usize>)> {
    let support = ShiftedHoms::compute_sparse(e, x)?;
    let h = e.h;
    let tx = x.translate();
    let mut source = GradedMF::zero(h, e.f.clone());
    let mut phi0 = Vec::new();
    let mut phi1 = Vec::new();
    for &p in support.keys() {
        let k = p.div_euclid(2);
        let maps: Vec<MFMorphism> = if p.rem_euclid(2) == 0 {
            hom_basis(e, x, k * h)?
        } else {
            // E -> tau^{kh} T X, moved to T^{-1} E -> tau^{kh} X
            hom_basis(e, &tx, k * h)?
                .iter()
                .map(MFMorphism::translate_inv)
                .collect()
        };
        for m in maps {
            let m = m.untwisted_source();
            debug_assert_eq!(m.source, e.shift_power(-p));
            debug_assert_eq!(&m.target, x);
            source = source.direct_sum(&m.source)?;
            phi0.push(m.phi0);
            phi1.push(m.phi1);
        }
    }
    let ev = MFMorphism::new(
        source,
        x.clone(),
        0,
        PolyMatrix::hcat(&phi0, x.rank()),
        PolyMatrix::hcat(&phi1, x.rank()),
    )?;
    Ok((ev, support))
}

pub fn left_mutation_step(e: &GradedMF, x: &GradedMF) -> Result<MutationStep> {
    let (ev, support) = evaluation(e, x)?;
    let cone = GradedMF::cone(&ev)?;
    let (result, stripped) = cone.translate_inv().reduce();
    Ok(MutationStep {
        result,
        support,
        stripped,
    })
}

/// One intermediate object `L^k(E_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainEntry {
    pub k: usize,
    /// Index of the object mutated across.
    pub across: i64,
    pub rank: usize,
    /// `(I, base)` when the object is rank one and recognized.
    pub normal_form: Option<(SubsetIndex, i64)>,
    /// `p -> dim Hom(E, T^p L^{k-1})`.
    pub support: BTreeMap<i64, usize>,
    #[serde(skip)]
    pub object: GradedMF,
}

#[derive(Clone, Debug, Serialize)]
pub struct SerreReport {
    pub i: usize,
    pub length: usize,
    pub chain: Vec<ChainEntry>,
    /// `"iso"`, `"no"` or `"unknown"` for `T^{l-1} L^{l-1}(E_i)` against
    /// `tau^{mu-1} E_i`.
    pub verdict: String,
    pub method: Option<String>,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.verdict == "iso"
    }
}

/// The helix `E_j`, extended to `j <= 0` by `E_j = L^{l-1}(E_{j+l})` across
/// `E_{j+l-1}, ..., E_{j+1}`.
pub struct Helix {
    base: Vec<GradedMF>,
    cache: BTreeMap<i64, GradedMF>,
}

impl Helix {
    pub fn new(objects: Vec<GradedMF>) -> Self {
        Helix {
            base: objects,
            cache: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn get(&mut self, j: i64) -> Result<GradedMF> {
        let l = self.base.len() as i64;
        if j > l {
            return Err(Error::OutOfRange(format!("helix index {j} above {l}")));
        }
        if j >= 1 {
            return Ok(self.base[(j - 1) as usize].clone());
        }
        if let Some(o) = self.cache.get(&j) {
            return Ok(o.clone());
        }
        let mut x = self.get(j + l)?;
        for k in 1..l {
            let e = self.get(j + l - k)?;
            x = left_mutation_step(&e, &x)?.result;
        }
        self.cache.insert(j, x.clone());
        Ok(x)
    }
}

/// Checks `T^{l-1} L^{l-1}(E_i) = tau^{mu-1} E_i` for a full collection of
/// length `l`, mutating across `E_{i-1}, ..., E_{i-l+1}`.
pub fn serre_check(
    objects: &[GradedMF],
    i: usize,
    p: &DeformationParams,
    seed: u64,
) -> Result<SerreReport> {
    let l = objects.len();
    if i == 0 || i > l {
        return Err(Error::OutOfRange(format!("index {i} outside 1..={l}")));
    }
    let mut helix = Helix::new(objects.to_vec());
    let ei = objects[i - 1].clone();
    let mut x = ei.clone();
    let mut chain = Vec::new();
    for k in 1..l {
        let across = i as i64 - k as i64;
        let e = helix.get(across)?;
        let step = left_mutation_step(&e, &x)?;
        x = step.result;
        chain.push(ChainEntry {
            k,
            across,
            rank: x.rank(),
            normal_form: x.rank1_normal_form(p).ok(),
            support: step.support,
            object: x.clone(),
        });
    }
    let lhs = x.shift_power(l as i64 - 1);
    let rhs = ei.tau_shift(p.mu() as i64 - 1);
    let verdict = iso_equivalent(&lhs, &rhs, Some(p), seed)?;
    let method = match &verdict {
        IsoVerdict::Iso { method, .. } | IsoVerdict::No { method, .. } => {
            Some(format!("{method:?}").to_lowercase())
        }
        IsoVerdict::Unknown { .. } => None,
    };
    Ok(SerreReport {
        i,
        length: l,
        chain,
        verdict: verdict.label().to_string(),
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::exceptional_collection;
    use crate::mf::build_f_i;

    fn set(v: &[usize]) -> SubsetIndex {
        SubsetIndex::new(v.to_vec(), 3).unwrap()
    }

    #[test]
    fn mutation_across_itself_is_zero() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let f = build_f_i(&p, &set(&[2]), 0).unwrap();
        assert!(left_mutation_step(&f, &f).unwrap().result.is_zero_object());
    }

    #[test]
    fn empty_hom_gives_inverse_shift() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let e = build_f_i(&p, &set(&[1]), 0).unwrap();
        let x = build_f_i(&p, &set(&[2]), 0).unwrap();
        let step = left_mutation_step(&e, &x).unwrap();
        assert!(step.support.is_empty());
        assert_eq!(step.result, x.translate_inv());
    }

    #[test]
    fn serre_mu_two_chain() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let objs = exceptional_collection(&p, &[1, 2]).unwrap();
        let rep = serre_check(&objs, 4, &p, 0).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.chain[0].normal_form, Some((set(&[1, 3]), 0)));
        // stall: L^2 = T^{-1} L^1
        assert_eq!(rep.chain[1].object, rep.chain[0].object.translate_inv());
        // L^3 = T^{-1} tau^{-1} F_{1,2} = tau^{-2} F_{3}
        assert_eq!(rep.chain[2].normal_form, Some((set(&[3]), -2)));
    }
}
