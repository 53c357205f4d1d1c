//! Graded matrix factorizations and the functors `tau`, `T`, sums and cones.
//!
//! Twist conventions, with `h` the twist of `f`:
//!
//! - entry `(i, j)` of `q0: F0 -> F1` has twist `F1[i] - F0[j]`;
//! - entry `(i, j)` of `q1: F1 -> F0` has twist `F0[i] - F1[j] + h`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::morphism::MFMorphism;
use crate::params::DeformationParams;
use crate::parse::poly_parse;
use crate::poly::Poly;
use crate::polymat::PolyMatrix;
use crate::subset::SubsetIndex;
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MfJson", try_from = "MfJson")]
pub struct GradedMF {
    pub h: i64,
    pub f: Poly,
    pub f0: Vec<i64>,
    pub f1: Vec<i64>,
    pub q0: PolyMatrix,
    pub q1: PolyMatrix,
}

/// One failed invariant reported by [`GradedMF::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    RankMismatch { f0: usize, f1: usize },
    Shape { matrix: &'static str, rows: usize, cols: usize },
    Twist { matrix: &'static str, row: usize, col: usize, expected: i64, entry: String },
    Identity { which: &'static str },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RankMismatch { f0, f1 } => write!(f, "rank F0 = {f0} but rank F1 = {f1}"),
            Violation::Shape { matrix, rows, cols } => {
                write!(f, "{matrix} has shape {rows}x{cols}")
            }
            Violation::Twist {
                matrix,
                row,
                col,
                expected,
                entry,
            } => write!(
                f,
                "{matrix}[{row}][{col}] = {entry} is not homogeneous of twist {expected}"
            ),
            Violation::Identity { which } => write!(f, "{which} != f * id"),
        }
    }
}

impl GradedMF {
    pub fn zero(h: i64, f: Poly) -> Self {
        GradedMF {
            h,
            f,
            f0: Vec::new(),
            f1: Vec::new(),
            q0: PolyMatrix::zeros(0, 0),
            q1: PolyMatrix::zeros(0, 0),
        }
    }

    /// Rank one factorization `(base) -q0-> (base + deg q0) -q1->`.
    pub fn rank_one(h: i64, f: Poly, base: i64, q0: Poly, q1: Poly) -> Result<Self> {
        let d = match q0.homogeneous_twist() {
            crate::Twist::Homogeneous(d) => d as i64,
            _ => return Err(Error::InvalidMF("q0 must be a nonzero homogeneous polynomial".into())),
        };
        let out = GradedMF {
            h,
            f,
            f0: vec![base],
            f1: vec![base + d],
            q0: PolyMatrix::scalar(&q0, 1),
            q1: PolyMatrix::scalar(&q1, 1),
        };
        out.check()?;
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.f0.len()
    }

    pub fn is_zero_object(&self) -> bool {
        self.rank() == 0
    }

    pub fn q0_twist(&self, i: usize, j: usize) -> i64 {
        self.f1[i] - self.f0[j]
    }

    pub fn q1_twist(&self, i: usize, j: usize) -> i64 {
        self.f0[i] - self.f1[j] + self.h
    }

    /// Every invariant of a graded factorization; empty when valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let r = self.f0.len();
        if self.f1.len() != r {
            out.push(Violation::RankMismatch {
                f0: r,
                f1: self.f1.len(),
            });
            return out;
        }
        for (name, m) in [("q0", &self.q0), ("q1", &self.q1)] {
            if m.rows() != r || m.cols() != r {
                out.push(Violation::Shape {
                    matrix: name,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (i, j, p) in self.q0.entries() {
            let t = self.q0_twist(i, j);
            if !p.homogeneous_twist().fits(t) {
                out.push(Violation::Twist {
                    matrix: "q0",
                    row: i,
                    col: j,
                    expected: t,
                    entry: p.to_string(),
                });
            }
        }
        for (i, j, p) in self.q1.entries() {
            let t = self.q1_twist(i, j);
            if !p.homogeneous_twist().fits(t) {
                out.push(Violation::Twist {
                    matrix: "q1",
                    row: i,
                    col: j,
                    expected: t,
                    entry: p.to_string(),
                });
            }
        }
        let fid = PolyMatrix::scalar(&self.f, r);
        if self.q1.mul(&self.q0) != fid {
            out.push(Violation::Identity { which: "q1*q0" });
        }
        if self.q0.mul(&self.q1) != fid {
            out.push(Violation::Identity { which: "q0*q1" });
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// [`GradedMF::validate`] as a `Result`.
    pub fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
            Err(Error::InvalidMF(msgs.join("; ")))
        }
    }

    /// `tau^n`: every twist raised by `n`.
    pub fn tau_shift(&self, n: i64) -> Self {
        GradedMF {
            h: self.h,
            f: self.f.clone(),
            f0: self.f0.iter().map(|t| t + n).collect(),
            f1: self.f1.iter().map(|t| t + n).collect(),
            q0: self.q0.clone(),
            q1: self.q1.clone(),
        }
    }

    /// `T(F0, F1, q0, q1) = (F1, tau^h F0, -q1, -q0)`.
    pub fn translate(&self) -> Self {
        GradedMF {
            h: self.h,
            f: self.f.clone(),
            f0: self.f1.clone(),
            f1: self.f0.iter().map(|t| t + self.h).collect(),
            q0: self.q1.neg(),
            q1: self.q0.neg(),
        }
    }

    /// Exact inverse of [`GradedMF::translate`].
    pub fn translate_inv(&self) -> Self {
        GradedMF {
            h: self.h,
            f: self.f.clone(),
            f0: self.f1.iter().map(|t| t - self.h).collect(),
            f1: self.f0.clone(),
            q0: self.q1.neg(),
            q1: self.q0.neg(),
        }
    }

    /// `T^p`, using `T^2 = tau^h`.
    pub fn shift_power(&self, p: i64) -> Self {
        let k = p.div_euclid(2);
        let base = if p.rem_euclid(2) == 1 {
            self.translate()
        } else {
            self.clone()
        };
        base.tau_shift(k * self.h)
    }

    pub fn direct_sum(&self, other: &GradedMF) -> Result<Self> {
        if self.f != other.f || self.h != other.h {
            return Err(Error::MismatchedPotential);
        }
        Ok(GradedMF {
            h: self.h,
            f: self.f.clone(),
            f0: self.f0.iter().chain(&other.f0).copied().collect(),
            f1: self.f1.iter().chain(&other.f1).copied().collect(),
            q0: PolyMatrix::block_diag(&self.q0, &other.q0),
            q1: PolyMatrix::block_diag(&self.q1, &other.q1),
        })
    }

    /// Mapping cone of `phi: F -> tau^n G`, built over `tau^n G`.
    pub fn cone(phi: &MFMorphism) -> Result<Self> {
        phi.check()?;
        let src = &phi.source;
        let tgt = phi.target.tau_shift(phi.twist);
        let h = src.h;
        let zero = PolyMatrix::zeros(src.rank(), tgt.rank());
        let q0 = PolyMatrix::block(&src.q1.neg(), &zero, &phi.phi1, &tgt.q0);
        let q1 = PolyMatrix::block(&src.q0.neg(), &zero, &phi.phi0, &tgt.q1);
        let out = GradedMF {
            h,
            f: src.f.clone(),
            f0: src.f1.iter().chain(&tgt.f0).copied().collect(),
            f1: src.f0.iter().map(|t| t + h).chain(tgt.f1.iter().copied()).collect(),
            q0,
            q1,
        };
        debug_assert!(out.is_valid());
        Ok(out)
    }

    /// No nonzero constant entry in `q0` or `q1`.
    pub fn is_reduced(&self) -> bool {
        self.q0.find_unit().is_none() && self.q1.find_unit().is_none()
    }

    /// Strips trivial summands one unit pivot at a time, scanning `q0` then
    /// `q1` in row-major order. Returns the reduced object and the number of
    /// summands removed.
    pub fn reduce(&self) -> (Self, usize) {
        let mut cur = self.clone();
        let mut stripped = 0;
        loop {
            if let Some((r, c, _)) = cur.q0.find_unit() {
                // q0[r][c]: F0[c] -> F1[r]
                cur = GradedMF {
                    h: cur.h,
                    f: cur.f.clone(),
                    f0: remove(&cur.f0, c),
                    f1: remove(&cur.f1, r),
                    q0: cur.q0.schur(r, c),
                    q1: cur.q1.minor(c, r),
                };
            } else if let Some((r, c, _)) = cur.q1.find_unit() {
                // q1[r][c]: F1[c] -> F0[r]
                cur = GradedMF {
                    h: cur.h,
                    f: cur.f.clone(),
                    f0: remove(&cur.f0, r),
                    f1: remove(&cur.f1, c),
                    q0: cur.q0.minor(c, r),
                    q1: cur.q1.schur(r, c),
                };
            } else {
                debug_assert!(cur.is_valid());
                return (cur, stripped);
            }
            stripped += 1;
        }
    }

    /// `(1/rank) * sum(F0[i] + F1[i])`.
    pub fn phase(&self) -> Result<Rational> {
        if self.rank() == 0 {
            return Err(Error::OutOfRange("zero object has no phase".into()));
        }
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        let total: i64 = self.f0.iter().chain(&self.f1).sum();
        Ok(Rational::new(total.into(), (self.rank() as i64).into()))
    }

    /// Rescales so the first nonzero entry of `q0` has leading coefficient
    /// one, with the inverse factor on `q1`. The result is isomorphic.
    pub fn normalized(&self) -> Self {
        let lead = self.q0.entries().find_map(|(_, _, p)| p.terms().next().map(|(_, c)| c.clone()));
        match lead {
            Some(c) if !c.is_zero() => GradedMF {
                h: self.h,
                f: self.f.clone(),
                f0: self.f0.clone(),
                f1: self.f1.clone(),
                q0: self.q0.scale(&c.recip()),
                q1: self.q1.scale(&c),
            },
            _ => self.clone(),
        }
    }

    /// Recovers `(I, base)` with `self = tau^base F_I` for a reduced rank
    /// one object.
    pub fn rank1_normal_form(&self, p: &DeformationParams) -> Result<(SubsetIndex, i64)> {
        if self.rank() != 1 {
            return Err(Error::RankNotOne(self.rank()));
        }
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        if &self.f != p.f() {
            return Err(Error::MismatchedPotential);
        }
        let Some((mut rest, _)) = self.q0.get(0, 0).monic() else {
            return Err(Error::UnrecognizedFactor);
        };
        let mut members = Vec::new();
        for i in 1..=p.h() as usize {
            if let Some(d) = rest.div_exact(&p.factor(i)) {
                members.push(i);
                rest = d;
            }
        }
        if !rest.is_one() {
            return Err(Error::UnrecognizedFactor);
        }
        let subset = SubsetIndex::new(members, p.h() as usize)?;
        Ok((subset, self.f0[0]))
    }
}

fn remove(v: &[i64], k: usize) -> Vec<i64> {
    v.iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, t)| *t)
        .collect()
}

/// `F_I` twisted by `base`: `q0 = prod_{i in I}(x + s_i q)`, `q1` the rest.
pub fn build_f_i(p: &DeformationParams, subset: &SubsetIndex, base: i64) -> Result<GradedMF> {
    if !subset.is_proper_nonempty(p.h() as usize) {
        return Err(Error::EmptyOrFullSubset);
    }
    Ok(build_f_i_raw(p, subset, base))
}

/// Like [`build_f_i`] but also accepts the empty and full subsets, which
/// give trivial (contractible) factorizations.
pub fn build_f_i_raw(p: &DeformationParams, subset: &SubsetIndex, base: i64) -> GradedMF {
    let comp = subset.complement(p.h() as usize);
    GradedMF {
        h: p.h(),
        f: p.f().clone(),
        f0: vec![base],
        f1: vec![base + subset.len() as i64],
        q0: PolyMatrix::scalar(&p.product(subset), 1),
        q1: PolyMatrix::scalar(&p.product(&comp), 1),
    }
}

/// The serialized form `{"h", "f", "F0", "F1", "q0", "q1"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MfJson {
    pub h: i64,
    pub f: String,
    #[serde(rename = "F0")]
    pub f0: Vec<i64>,
    #[serde(rename = "F1")]
    pub f1: Vec<i64>,
    pub q0: Vec<Vec<String>>,
    pub q1: Vec<Vec<String>>,
}

impl From<GradedMF> for MfJson {
    fn from(m: GradedMF) -> Self {
        MfJson {
            h: m.h,
            f: m.f.to_string(),
            f0: m.f0,
            f1: m.f1,
            q0: m.q0.string_rows(),
            q1: m.q1.string_rows(),
        }
    }
}

impl TryFrom<MfJson> for GradedMF {
    type Error = String;

    fn try_from(j: MfJson) -> std::result::Result<Self, String> {
        let parse_mat = |rows: &[Vec<String>], n: usize| -> std::result::Result<PolyMatrix, String> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(format!("matrix must be {n}x{n}"));
            }
            let parsed: std::result::Result<Vec<Vec<Poly>>, String> = rows
                .iter()
                .map(|r| r.iter().map(|s| poly_parse(s).map_err(|e| e.to_string())).collect())
                .collect();
            let parsed = parsed?;
            let mut m = PolyMatrix::zeros(n, n);
            for (i, row) in parsed.into_iter().enumerate() {
                for (k, p) in row.into_iter().enumerate() {
                    m.set(i, k, p);
                }
            }
            Ok(m)
        };
        let n = j.f0.len();
        let out = GradedMF {
            h: j.h,
            f: poly_parse(&j.f).map_err(|e| e.to_string())?,
            q0: parse_mat(&j.q0, n)?,
            q1: parse_mat(&j.q1, n)?,
            f0: j.f0,
            f1: j.f1,
        };
        out.check().map_err(|e| e.to_string())?;
        Ok(out)
    }
}

impl fmt::Display for GradedMF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F0={:?} F1={:?} q0={} q1={}",
            self.f0, self.f1, self.q0, self.q1
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly_parse;

    fn params2() -> DeformationParams {
        DeformationParams::from_ints(&[1, 0, -1]).unwrap()
    }

    fn set(v: &[usize], n: usize) -> SubsetIndex {
        SubsetIndex::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn build_examples() {
        let p = params2();
        let f = build_f_i(&p, &set(&[1], 3), 0).unwrap();
        assert_eq!(f.q0.get(0, 0), &poly_parse("x+q").unwrap());
        assert_eq!(f.q1.get(0, 0), &poly_parse("x^2 - x*q").unwrap());
        assert_eq!((f.f0.clone(), f.f1.clone()), (vec![0], vec![1]));
        assert!(f.is_valid());
        let g = build_f_i(&p, &set(&[1, 2], 3), 0).unwrap();
        assert_eq!(g.q0.get(0, 0), &poly_parse("x^2 + x*q").unwrap());
        assert_eq!(g.q1.get(0, 0), &poly_parse("x - q").unwrap());
        assert_eq!(g.f1, vec![2]);
        assert_eq!(build_f_i(&p, &SubsetIndex::empty(), 0), Err(Error::EmptyOrFullSubset));
    }

    #[test]
    fn translate_mu_one() {
        let p = DeformationParams::from_ints(&[1, -1]).unwrap();
        let f = build_f_i(&p, &set(&[1], 2), 0).unwrap();
        let t = f.translate();
        assert_eq!(t.q0.get(0, 0), &poly_parse("-(x - q)").unwrap());
        assert_eq!(t.q1.get(0, 0), &poly_parse("-(x + q)").unwrap());
        assert_eq!((t.f0.clone(), t.f1.clone()), (vec![1], vec![2]));
        assert_eq!(t.translate(), f.tau_shift(2));
        assert_eq!(f.shift_power(-1).shift_power(1), f);
        assert_eq!(f.translate_inv(), f.shift_power(-1));
    }

    #[test]
    fn validate_reports_problems() {
        let p = params2();
        let mut f = build_f_i(&p, &set(&[1], 3), 0).unwrap();
        f.q0.set(0, 0, poly_parse("x + q^2").unwrap());
        let v = f.validate();
        assert!(v.iter().any(|e| matches!(e, Violation::Twist { matrix: "q0", .. })));
        assert!(v.iter().any(|e| matches!(e, Violation::Identity { .. })));
    }

    #[test]
    fn reduce_trivial() {
        let p = params2();
        let triv = build_f_i_raw(&p, &SubsetIndex::empty(), 0);
        let (r, k) = triv.reduce();
        assert_eq!(k, 1);
        assert!(r.is_zero_object());
        let f = build_f_i(&p, &set(&[2], 3), 4).unwrap();
        assert_eq!(f.reduce(), (f.clone(), 0));
    }

    #[test]
    fn phase_and_normal_form() {
        let p = params2();
        let f = build_f_i(&p, &set(&[1, 3], 3), 2).unwrap();
        assert_eq!(f.phase().unwrap(), Rational::from_integer(6.into()));
        assert_eq!(f.rank1_normal_form(&p).unwrap(), (set(&[1, 3], 3), 2));
        let bad = GradedMF::rank_one(
            3,
            p.f().clone(),
            0,
            poly_parse("x^2 + q^2").unwrap(),
            poly_parse("0").unwrap(),
        );
        assert!(bad.is_err());
        let g = GradedMF {
            h: 3,
            f: p.f().clone(),
            f0: vec![0],
            f1: vec![2],
            q0: PolyMatrix::scalar(&poly_parse("x^2 + q^2").unwrap(), 1),
            q1: PolyMatrix::scalar(&poly_parse("x").unwrap(), 1),
        };
        assert_eq!(g.rank1_normal_form(&p), Err(Error::UnrecognizedFactor));
    }

    #[test]
    fn direct_sum_twists() {
        let p = params2();
        let f = build_f_i(&p, &set(&[1], 3), 0).unwrap();
        let s = f.direct_sum(&f.tau_shift(1)).unwrap();
        assert_eq!((s.f0.clone(), s.f1.clone()), (vec![0, 1], vec![1, 2]));
        assert!(s.is_valid());
        assert_eq!(f.direct_sum(&GradedMF::zero(3, p.f().clone())).unwrap(), f);
    }
}
