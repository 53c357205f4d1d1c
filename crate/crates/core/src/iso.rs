//! Deciding isomorphism in the homotopy category.
//!
//! Three tiers, tried in order:
//!
//! 1. after reduction, rank at most one on both sides: compare zero-ness and
//!    rank one normal forms;
//! 2. Hom-dimension obstruction on the four spaces `Hom(A, B)` at twist 0;
//! 3. a randomized certificate: a random `phi` in `Hom(F, G)`, a linear solve
//!    for `psi` with `psi phi ~ id`, then a check that `phi psi ~ id`.
//!
//! Only tiers 1 and 2 can answer "no"; tier 3 either certifies or gives up.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hom::{hom_basis, hom_dim, HomSystem};
use crate::linalg::Matrix;
use crate::mf::GradedMF;
use crate::morphism::MFMorphism;
use crate::params::DeformationParams;
use crate::{Rational, Result};

const ATTEMPTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoMethod {
    Zero,
    NormalForm,
    HomDimensions,
    Certificate,
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    /// For [`IsoMethod::Certificate`] the maps are between the reduced forms
    /// and satisfy `psi phi ~ id`, `phi psi ~ id`.
    Iso {
        method: IsoMethod,
        maps: Option<Box<(MFMorphism, MFMorphism)>>,
    },
    No { method: IsoMethod, reason: String },
    Unknown { reason: String },
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, IsoVerdict::Unknown { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Iso { .. } => "iso",
            IsoVerdict::No { .. } => "no",
            IsoVerdict::Unknown { .. } => "unknown",
        }
    }
}

pub fn iso_equivalent(
    f: &GradedMF,
    g: &GradedMF,
    p: Option<&DeformationParams>,
    seed: u64,
) -> Result<IsoVerdict> {
    if f.f != g.f || f.h != g.h {
        return Err(crate::Error::MismatchedPotential);
    }
    let (f, _) = f.reduce();
    let (g, _) = g.reduce();

    match (f.is_zero_object(), g.is_zero_object()) {
        (true, true) => {
            return Ok(IsoVerdict::Iso {
                method: IsoMethod::Zero,
                maps: None,
            })
        }
        (true, false) | (false, true) => {
            // a reduced nonzero object has a nonzero identity class
            let nonzero = if f.is_zero_object() { &g } else { &f };
            let d = hom_dim(nonzero, nonzero, 0)?;
            if d > 0 {
                return Ok(IsoVerdict::No {
                    method: IsoMethod::Zero,
                    reason: format!("one side is zero, the other has End of dimension {d}"),
                });
            }
        }
        (false, false) => {}
    }

    if let Some(p) = p {
        if f.rank() == 1 && g.rank() == 1 {
            if let (Ok(a), Ok(b)) = (f.rank1_normal_form(p), g.rank1_normal_form(p)) {
                return Ok(if a == b {
                    IsoVerdict::Iso {
                        method: IsoMethod::NormalForm,
                        maps: None,
                    }
                } else {
                    IsoVerdict::No {
                        method: IsoMethod::NormalForm,
                        reason: format!(
                            "normal forms tau^{} F_{} and tau^{} F_{} differ",
                            a.1, a.0, b.1, b.0
                        ),
                    }
                });
            }
        }
    }

    let dims = [
        hom_dim(&f, &f, 0)?,
        hom_dim(&g, &f, 0)?,
        hom_dim(&f, &g, 0)?,
        hom_dim(&g, &g, 0)?,
    ];
    if dims.iter().any(|d| *d != dims[0]) || dims[0] == 0 {
        return Ok(IsoVerdict::No {
            method: IsoMethod::HomDimensions,
            reason: format!("Hom dimensions (FF, GF, FG, GG) = {dims:?}"),
        });
    }

    certificate(&f, &g, seed)
}

fn certificate(f: &GradedMF, g: &GradedMF, seed: u64) -> Result<IsoVerdict> {
    let forward = hom_basis(f, g, 0)?;
    let backward = hom_basis(g, f, 0)?;
    let sys_ff = HomSystem::new(f, f, 0)?;
    let sys_gg = HomSystem::new(g, g, 0)?;
    let id_f = sys_ff.coords(&MFMorphism::identity(f))?;
    let id_g = MFMorphism::identity(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..ATTEMPTS {
        let mut phi = MFMorphism::zero(f, g, 0);
        for b in &forward {
            let c: i64 = rng.gen_range(-3..=3);
            phi = phi.add(&b.scale(&Rational::from_integer(c.into())))?;
        }
        // columns: coords(psi_k o phi), then the boundaries of End(F)
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        for psi in &backward {
            cols.push(sys_ff.coords(&psi.compose(&phi)?)?);
        }
        for j in 0..sys_ff.boundary.cols() {
            cols.push(
                (0..sys_ff.boundary.rows())
                    .map(|i| sys_ff.boundary.get(i, j).clone())
                    .collect(),
            );
        }
        let m = Matrix::from_columns(id_f.len(), &cols);
        let Some(sol) = m.solve(&id_f) else {
            continue;
        };
        let mut psi = MFMorphism::zero(g, f, 0);
        for (k, b) in backward.iter().enumerate() {
            psi = psi.add(&b.scale(&sol[k]))?;
        }
        let diff = phi.compose(&psi)?.sub(&id_g)?;
        let v = sys_gg.coords(&diff)?;
        if sys_gg.solve_boundary(&v).is_some() {
            return Ok(IsoVerdict::Iso {
                method: IsoMethod::Certificate,
                maps: Some(Box::new((phi, psi))),
            });
        }
    }
    Ok(IsoVerdict::Unknown {
        reason: format!("no certificate found in {ATTEMPTS} attempts"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::build_f_i;
    use crate::subset::SubsetIndex;

    fn set(v: &[usize]) -> SubsetIndex {
        SubsetIndex::new(v.to_vec(), 3).unwrap()
    }

    #[test]
    fn rank_one_cases() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let f1 = build_f_i(&p, &set(&[1]), 0).unwrap();
        let f2 = build_f_i(&p, &set(&[2]), 0).unwrap();
        assert_eq!(iso_equivalent(&f1, &f2, Some(&p), 0).unwrap().label(), "no");
        assert_eq!(iso_equivalent(&f1, &f1.tau_shift(1), Some(&p), 0).unwrap().label(), "no");
        assert!(iso_equivalent(&f1, &f1.normalized(), Some(&p), 0).unwrap().is_iso());
        // T F_I = tau^{|I|} F_{I^c}
        let t = f1.translate();
        let g = build_f_i(&p, &set(&[2, 3]), 1).unwrap();
        assert!(iso_equivalent(&t, &g, Some(&p), 0).unwrap().is_iso());
    }

    #[test]
    fn certificate_on_sums() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let a = build_f_i(&p, &set(&[1]), 0).unwrap();
        let b = build_f_i(&p, &set(&[1, 3]), 2).unwrap();
        let ab = a.direct_sum(&b).unwrap();
        let ba = b.direct_sum(&a).unwrap();
        let v = iso_equivalent(&ab, &ba, Some(&p), 0).unwrap();
        assert!(v.is_iso(), "{v:?}");
        let aa = a.direct_sum(&a).unwrap();
        assert_eq!(iso_equivalent(&ab, &aa, Some(&p), 0).unwrap().label(), "no");
        // without parameters the rank one tier is skipped
        let v = iso_equivalent(&a, &a.normalized(), None, 3).unwrap();
        assert!(matches!(v, IsoVerdict::Iso { method: IsoMethod::Certificate, .. }));
    }
}
