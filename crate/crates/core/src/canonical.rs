//! The canonical morphisms between rank one objects.

use crate::mf::build_f_i;
use crate::morphism::MFMorphism;
use crate::params::DeformationParams;
use crate::poly::Poly;
use crate::polymat::PolyMatrix;
use crate::subset::SubsetIndex;
use crate::{Error, Result};

/// `Phi_I^J = (1, prod_{J \ I})`: `F_I -> F_J` for `I` a proper subset of `J`.
pub fn build_phi(p: &DeformationParams, i: &SubsetIndex, j: &SubsetIndex) -> Result<MFMorphism> {
    if !(i.is_subset(j) && i != j) {
        return Err(Error::SubsetRelation(format!("{i} is not a proper subset of {j}")));
    }
    let src = build_f_i(p, i, 0)?;
    let tgt = build_f_i(p, j, 0)?;
    MFMorphism::new(
        src,
        tgt,
        0,
        PolyMatrix::identity(1),
        PolyMatrix::scalar(&p.product(&j.difference(i)), 1),
    )
}

/// `Phibar_I^J = (prod_{I \ J}, 1)`: `F_I -> tau^{|I|-|J|} F_J` for `I` a
/// proper superset of `J`.
pub fn build_phibar(p: &DeformationParams, i: &SubsetIndex, j: &SubsetIndex) -> Result<MFMorphism> {
    if !(j.is_subset(i) && i != j) {
        return Err(Error::SubsetRelation(format!("{i} is not a proper superset of {j}")));
    }
    let src = build_f_i(p, i, 0)?;
    let tgt = build_f_i(p, j, 0)?;
    MFMorphism::new(
        src,
        tgt,
        (i.len() - j.len()) as i64,
        PolyMatrix::scalar(&p.product(&i.difference(j)), 1),
        PolyMatrix::identity(1),
    )
}

/// Multiplication by `q` as a map `F_{{k}} -> tau F_{{k}}`.
pub fn build_q_map(p: &DeformationParams, k: usize) -> Result<MFMorphism> {
    let f = build_f_i(p, &SubsetIndex::new(vec![k], p.h() as usize)?, 0)?;
    let q = PolyMatrix::scalar(&Poly::q(), 1);
    MFMorphism::new(f.clone(), f, 1, q.clone(), q)
}
