//! Morphisms `F -> tau^n G` and homotopies between them.
//!
//! Entry twists for a morphism of twist `n`:
//!
//! - `phi0[i][j]`: `G0[i] + n - F0[j]`
//! - `phi1[i][j]`: `G1[i] + n - F1[j]`
//!
//! and for a homotopy:
//!
//! - `h0[i][j]` (`F0 -> G1`): `G1[i] + n - F0[j] - h`
//! - `h1[i][j]` (`F1 -> G0`): `G0[i] + n - F1[j]`
//!
//! The `h0` convention is a choice; it is the one that makes
//! `phi0 = h1 q0 + q1' h0` and `phi1 = q0' h1 + h0 q1` degree-consistent.

use crate::mf::GradedMF;
use crate::polymat::PolyMatrix;
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFMorphism {
    pub source: GradedMF,
    pub target: GradedMF,
    pub twist: i64,
    pub phi0: PolyMatrix,
    pub phi1: PolyMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub h0: PolyMatrix,
    pub h1: PolyMatrix,
}

impl MFMorphism {
    pub fn new(
        source: GradedMF,
        target: GradedMF,
        twist: i64,
        phi0: PolyMatrix,
        phi1: PolyMatrix,
    ) -> Result<Self> {
        let m = MFMorphism {
            source,
            target,
            twist,
            phi0,
            phi1,
        };
        m.check()?;
        Ok(m)
    }

    pub fn zero(source: &GradedMF, target: &GradedMF, twist: i64) -> Self {
        MFMorphism {
            phi0: PolyMatrix::zeros(target.rank(), source.rank()),
            phi1: PolyMatrix::zeros(target.rank(), source.rank()),
            source: source.clone(),
            target: target.clone(),
            twist,
        }
    }

    pub fn identity(f: &GradedMF) -> Self {
        MFMorphism {
            source: f.clone(),
            target: f.clone(),
            twist: 0,
            phi0: PolyMatrix::identity(f.rank()),
            phi1: PolyMatrix::identity(f.rank()),
        }
    }

    pub fn phi0_twist(&self, i: usize, j: usize) -> i64 {
        self.target.f0[i] + self.twist - self.source.f0[j]
    }

    pub fn phi1_twist(&self, i: usize, j: usize) -> i64 {
        self.target.f1[i] + self.twist - self.source.f1[j]
    }

    /// Shapes, entry twists and both commutation identities.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.source.f != self.target.f {
            out.push("source and target factor different polynomials".to_string());
            return out;
        }
        let (r, c) = (self.target.rank(), self.source.rank());
        for (name, m) in [("phi0", &self.phi0), ("phi1", &self.phi1)] {
            if m.rows() != r || m.cols() != c {
                out.push(format!("{name} has shape {}x{}, expected {r}x{c}", m.rows(), m.cols()));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (i, j, p) in self.phi0.entries() {
            let t = self.phi0_twist(i, j);
            if !p.homogeneous_twist().fits(t) {
                out.push(format!("phi0[{i}][{j}] = {p} is not homogeneous of twist {t}"));
            }
        }
        for (i, j, p) in self.phi1.entries() {
            let t = self.phi1_twist(i, j);
            if !p.homogeneous_twist().fits(t) {
                out.push(format!("phi1[{i}][{j}] = {p} is not homogeneous of twist {t}"));
            }
        }
        if self.phi1.mul(&self.source.q0) != self.target.q0.mul(&self.phi0) {
            out.push("phi1 q0 != q0' phi0".to_string());
        }
        if self.phi0.mul(&self.source.q1) != self.target.q1.mul(&self.phi1) {
            out.push("phi0 q1 != q1' phi1".to_string());
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidMorphism(v.join("; ")))
        }
    }

    /// `self o other`, twists adding.
    pub fn compose(&self, other: &MFMorphism) -> Result<MFMorphism> {
        if other.target != self.source {
            return Err(Error::NotComposable(
                "target of the first map is not the source of the second".into(),
            ));
        }
        Ok(MFMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            twist: self.twist + other.twist,
            phi0: self.phi0.mul(&other.phi0),
            phi1: self.phi1.mul(&other.phi1),
        })
    }

    fn same_space(&self, other: &MFMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.twist != other.twist {
            return Err(Error::NotComposable("morphisms live in different Hom spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &MFMorphism) -> Result<MFMorphism> {
        self.same_space(other)?;
        Ok(MFMorphism {
            phi0: self.phi0.add(&other.phi0),
            phi1: self.phi1.add(&other.phi1),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &MFMorphism) -> Result<MFMorphism> {
        self.same_space(other)?;
        Ok(MFMorphism {
            phi0: self.phi0.sub(&other.phi0),
            phi1: self.phi1.sub(&other.phi1),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Rational) -> MFMorphism {
        MFMorphism {
            phi0: self.phi0.scale(c),
            phi1: self.phi1.scale(c),
            ..self.clone()
        }
    }

    /// `tau^a` applied to source and target; matrices unchanged.
    pub fn tau_shift(&self, a: i64) -> MFMorphism {
        MFMorphism {
            source: self.source.tau_shift(a),
            target: self.target.tau_shift(a),
            ..self.clone()
        }
    }

    /// `T` applied to the morphism: the two components swap.
    pub fn translate(&self) -> MFMorphism {
        MFMorphism {
            source: self.source.translate(),
            target: self.target.translate(),
            twist: self.twist,
            phi0: self.phi1.clone(),
            phi1: self.phi0.clone(),
        }
    }

    /// `T^{-1}` applied to the morphism.
    pub fn translate_inv(&self) -> MFMorphism {
        MFMorphism {
            source: self.source.translate_inv(),
            target: self.target.translate_inv(),
            twist: self.twist,
            phi0: self.phi1.clone(),
            phi1: self.phi0.clone(),
        }
    }

    /// The same matrices viewed as a twist zero map `tau^{-n} F -> G`.
    pub fn untwisted_source(&self) -> MFMorphism {
        MFMorphism {
            source: self.source.tau_shift(-self.twist),
            target: self.target.clone(),
            twist: 0,
            phi0: self.phi0.clone(),
            phi1: self.phi1.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.phi0.is_zero() && self.phi1.is_zero()
    }
}

impl Homotopy {
    /// The boundary `(h1 q0 + q1' h0, q0' h1 + h0 q1)` for maps `F -> tau^n G`.
    pub fn boundary(&self, source: &GradedMF, target: &GradedMF) -> (PolyMatrix, PolyMatrix) {
        let phi0 = self.h1.mul(&source.q0).add(&target.q1.mul(&self.h0));
        let phi1 = target.q0.mul(&self.h1).add(&self.h0.mul(&source.q1));
        (phi0, phi1)
    }

    /// True when `phi` equals the boundary of this homotopy.
    pub fn witnesses(&self, phi: &MFMorphism) -> bool {
        let (b0, b1) = self.boundary(&phi.source, &phi.target);
        b0 == phi.phi0 && b1 == phi.phi1
    }
}
