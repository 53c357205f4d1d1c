//! Morphism spaces in the homotopy category, one twist at a time.
//!
//! For fixed `F`, `G` and twist `n` the unknowns are the coefficients of
//! every monomial allowed in every entry of `(phi0, phi1)`. Cycles are the
//! kernel of the two commutation constraints; boundaries are the image of
//! the homotopies `(h0, h1)`. The Hom space is their quotient.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{Matrix, SpanBuilder};
use crate::mf::GradedMF;
use crate::morphism::{Homotopy, MFMorphism};
use crate::params::DeformationParams;
use crate::poly::Poly;
use crate::polymat::PolyMatrix;
use crate::{Error, Rational, Result};

/// One polynomial matrix entry of fixed degree and its coordinate offset.
#[derive(Clone, Debug)]
pub(crate) struct Slot {
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub degree: u32,
    pub offset: usize,
}

/// Coordinates for a pair of polynomial matrices with prescribed entry
/// twists. Entry of degree `d` contributes `d + 1` unknowns, ordered
/// `x^d, x^{d-1} q, ..., q^d`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Layout {
    pub slots: Vec<Slot>,
    pub index: BTreeMap<(usize, usize, usize), usize>,
    pub shapes: [(usize, usize); 2],
    pub len: usize,
}

impl Layout {
    /// `twist(block, i, j)` gives each entry's twist; negative twists get no slot.
    pub fn new(shapes: [(usize, usize); 2], twist: impl Fn(usize, usize, usize) -> i64) -> Self {
        let mut out = Layout {
            shapes,
            ..Default::default()
        };
        for (b, &(r, c)) in shapes.iter().enumerate() {
            for i in 0..r {
                for j in 0..c {
                    let t = twist(b, i, j);
                    if t >= 0 {
                        out.index.insert((b, i, j), out.slots.len());
                        out.slots.push(Slot {
                            block: b,
                            row: i,
                            col: j,
                            degree: t as u32,
                            offset: out.len,
                        });
                        out.len += t as usize + 1;
                    }
                }
            }
        }
        out
    }

    /// Coordinate of the monomial `x^a q^b` in entry `(block, i, j)`.
    pub fn coord(&self, block: usize, i: usize, j: usize, a: u32, b: u32) -> Option<usize> {
        let s = &self.slots[*self.index.get(&(block, i, j))?];
        (a + b == s.degree).then_some(s.offset + b as usize)
    }

    /// Every unknown as `(slot, a, b)`.
    pub fn unknowns(&self) -> impl Iterator<Item = (&Slot, u32, u32)> {
        self.slots
            .iter()
            .flat_map(|s| (0..=s.degree).map(move |b| (s, s.degree - b, b)))
    }

    pub fn to_matrices(&self, v: &[Rational]) -> [PolyMatrix; 2] {
        let mut out = [
            PolyMatrix::zeros(self.shapes[0].0, self.shapes[0].1),
            PolyMatrix::zeros(self.shapes[1].0, self.shapes[1].1),
        ];
        for s in &self.slots {
            let p = Poly::from_terms(
                (0..=s.degree).map(|b| ((s.degree - b, b), v[s.offset + b as usize].clone())),
            );
            out[s.block].set(s.row, s.col, p);
        }
        out
    }

    /// Reads coefficients; `None` if some term does not fit the layout.
    pub fn vectorize(&self, m: [&PolyMatrix; 2]) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.len];
        for (b, mat) in m.iter().enumerate() {
            for (i, j, p) in mat.entries() {
                for ((x, y), c) in p.terms() {
                    v[self.coord(b, i, j, x, y)?] = c.clone();
                }
            }
        }
        Some(v)
    }
}

/// The graded linear system for `Hom(F, tau^n G)`.
pub struct HomSystem {
    pub source: GradedMF,
    pub target: GradedMF,
    pub twist: i64,
    pub(crate) phi: Layout,
    pub(crate) homotopy: Layout,
    /// Commutation constraints; kernel = cycles.
    pub cycle: Matrix,
    /// Columns are boundaries of the homotopy unknowns, in cycle coordinates.
    pub boundary: Matrix,
}

pub(crate) fn phi_layout(f: &GradedMF, g: &GradedMF, n: i64) -> Layout {
    Layout::new([(g.rank(), f.rank()); 2], |b, i, j| {
        if b == 0 {
            g.f0[i] + n - f.f0[j]
        } else {
            g.f1[i] + n - f.f1[j]
        }
    })
}

pub(crate) fn homotopy_layout(f: &GradedMF, g: &GradedMF, n: i64) -> Layout {
    Layout::new([(g.rank(), f.rank()); 2], |b, i, j| {
        if b == 0 {
            g.f1[i] + n - f.f0[j] - f.h
        } else {
            g.f0[i] + n - f.f1[j]
        }
    })
}

/// Block 0: `phi1 q0 - q0' phi0` (rows G1, cols F0); block 1:
/// `phi0 q1 - q1' phi1` (rows G0, cols F1).
pub(crate) fn constraint_layout(f: &GradedMF, g: &GradedMF, n: i64) -> Layout {
    Layout::new([(g.rank(), f.rank()); 2], |b, i, j| {
        if b == 0 {
            g.f1[i] + n - f.f0[j]
        } else {
            g.f0[i] + n - f.f1[j] + f.h
        }
    })
}

/// Adds `sign * coeff * p * x^a q^b` into column `col` at the coordinates of
/// entry `(block, i, j)`.
fn scatter(
    m: &mut Matrix,
    layout: &Layout,
    col: usize,
    (block, i, j): (usize, usize, usize),
    p: &Poly,
    (a, b): (u32, u32),
    negate: bool,
) {
    for ((x, y), c) in p.terms() {
        let row = layout
            .coord(block, i, j, x + a, y + b)
            .expect("degree bookkeeping is consistent");
        let v = if negate {
            m.get(row, col) - c
        } else {
            m.get(row, col) + c
        };
        m.set(row, col, v);
    }
}

impl HomSystem {
    pub fn new(f: &GradedMF, g: &GradedMF, n: i64) -> Result<Self> {
        if f.f != g.f || f.h != g.h {
            return Err(Error::MismatchedPotential);
        }
        let phi = phi_layout(f, g, n);
        let homotopy = homotopy_layout(f, g, n);
        let constraints = constraint_layout(f, g, n);
        let (gr, fr) = (g.rank(), f.rank());

        let mut cycle = Matrix::zeros(constraints.len, phi.len);
        for (col, (s, a, b)) in phi.unknowns().enumerate() {
            let (i, j) = (s.row, s.col);
            if s.block == 0 {
                // phi0[i][j]: -q0'[k][i] m into block 0 (k, j); m q1[j][l] into block 1 (i, l)
                for k in 0..g.rank() {
                    scatter(&mut cycle, &constraints, col, (0, k, j), g.q0.get(k, i), (a, b), true);
                }
                for l in 0..fr {
                    scatter(&mut cycle, &constraints, col, (1, i, l), f.q1.get(j, l), (a, b), false);
                }
            } else {
                // phi1[i][j]: m q0[j][l] into block 0 (i, l); -q1'[k][i] m into block 1 (k, j)
                for l in 0..fr {
                    scatter(&mut cycle, &constraints, col, (0, i, l), f.q0.get(j, l), (a, b), false);
                }
                for k in 0..gr {
                    scatter(&mut cycle, &constraints, col, (1, k, j), g.q1.get(k, i), (a, b), true);
                }
            }
        }

        let mut boundary = Matrix::zeros(phi.len, homotopy.len);
        for (col, (s, a, b)) in homotopy.unknowns().enumerate() {
            let (i, j) = (s.row, s.col);
            if s.block == 0 {
                // h0[i][j] (G1 x F0): q1'[k][i] m into phi0 (k, j); m q1[j][l] into phi1 (i, l)
                for k in 0..gr {
                    scatter(&mut boundary, &phi, col, (0, k, j), g.q1.get(k, i), (a, b), false);
                }
                for l in 0..fr {
                    scatter(&mut boundary, &phi, col, (1, i, l), f.q1.get(j, l), (a, b), false);
                }
            } else {
                // h1[i][j] (G0 x F1): m q0[j][l] into phi0 (i, l); q0'[k][i] m into phi1 (k, j)
                for l in 0..fr {
                    scatter(&mut boundary, &phi, col, (0, i, l), f.q0.get(j, l), (a, b), false);
                }
                for k in 0..gr {
                    scatter(&mut boundary, &phi, col, (1, k, j), g.q0.get(k, i), (a, b), false);
                }
            }
        }

        Ok(HomSystem {
            source: f.clone(),
            target: g.clone(),
            twist: n,
            phi,
            homotopy,

            cycle,
            boundary,
        })
    }

    pub fn unknowns(&self) -> usize {
        self.phi.len
    }

    pub fn cycle_dim(&self) -> usize {
        self.phi.len - self.cycle.rank()
    }

    pub fn boundary_dim(&self) -> usize {
        self.boundary.rank()
    }

    pub fn dim(&self) -> usize {
        self.cycle_dim() - self.boundary_dim()
    }

    pub fn morphism(&self, v: &[Rational]) -> MFMorphism {
        let [phi0, phi1] = self.phi.to_matrices(v);
        MFMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            twist: self.twist,
            phi0,
            phi1,
        }
    }

    /// Coordinates of a morphism in this space.
    pub fn coords(&self, m: &MFMorphism) -> Result<Vec<Rational>> {
        if m.source != self.source || m.target != self.target || m.twist != self.twist {
            return Err(Error::InvalidMorphism("morphism is not in this Hom space".into()));
        }
        self.phi
            .vectorize([&m.phi0, &m.phi1])
            .ok_or_else(|| Error::InvalidMorphism("entry has the wrong twist".into()))
    }

    /// Cycle representatives independent modulo boundaries.
    pub fn basis(&self) -> Vec<MFMorphism> {
        let mut span = SpanBuilder::new();
        for j in 0..self.boundary.cols() {
            let col: Vec<Rational> = (0..self.boundary.rows())
                .map(|i| self.boundary.get(i, j).clone())
                .collect();
            span.insert(&col);
        }
        self.cycle
            .kernel_basis()
            .into_iter()
            .filter(|z| span.insert(z))
            .map(|z| self.morphism(&z))
            .collect()
    }

    /// Homotopy coordinates `x` with `boundary * x = v`, if any.
    pub fn solve_boundary(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.boundary.solve(v)
    }

    pub fn homotopy(&self, x: &[Rational]) -> Homotopy {
        let [h0, h1] = self.homotopy.to_matrices(x);
        Homotopy { h0, h1 }
    }
}

/// `dim Hom(F, tau^n G)` in the homotopy category.
pub fn hom_dim(f: &GradedMF, g: &GradedMF, n: i64) -> Result<usize> {
    let d = if f.is_zero_object() || g.is_zero_object() {
        0
    } else {
        HomSystem::new(f, g, n)?.dim()
    };
    crate::oracle::record(f, g, n, d);
    Ok(d)
}

/// Representatives of a basis of `Hom(F, tau^n G)`.
pub fn hom_basis(f: &GradedMF, g: &GradedMF, n: i64) -> Result<Vec<MFMorphism>> {
    if f.is_zero_object() || g.is_zero_object() {
        return Ok(Vec::new());
    }
    let sys = HomSystem::new(f, g, n)?;
    let basis = sys.basis();
    crate::oracle::record(f, g, n, basis.len());
    Ok(basis)
}

/// A homotopy witnessing `phi ~ 0`, if one exists.
pub fn is_nullhomotopic(phi: &MFMorphism) -> Result<Option<Homotopy>> {
    phi.check()?;
    if phi.source.is_zero_object() || phi.target.is_zero_object() {
        return Ok(Some(Homotopy {
            h0: PolyMatrix::zeros(phi.target.rank(), phi.source.rank()),
            h1: PolyMatrix::zeros(phi.target.rank(), phi.source.rank()),
        }));
    }
    let sys = HomSystem::new(&phi.source, &phi.target, phi.twist)?;
    let v = sys.coords(phi)?;
    Ok(sys.solve_boundary(&v).map(|x| {
        let h = sys.homotopy(&x);
        debug_assert!(h.witnesses(phi));
        h
    }))
}

/// How a [`Window`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    Empty,
    /// Rank one objects with comparable subsets.
    Lemma,
    /// Degree feasibility plus the Jacobian bound and a margin of `h`.
    General,
    Override,
}

/// Twist interval `[lo, hi]` containing every `n` with nonzero Hom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    /// Twists above this are inside the safety margin.
    pub review_above: i64,
    pub kind: WindowKind,
}

impl Window {
    pub fn twists(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn fixed(lo: i64, hi: i64) -> Self {
        Window {
            lo,
            hi,
            review_above: hi,
            kind: WindowKind::Override,
        }
    }
}

/// The general over-approximation: `lo` is the least `n` allowing a
/// nonzero entry, `hi` the largest onset plus `2h - 4` plus `h`.
pub fn general_window(f: &GradedMF, g: &GradedMF) -> Window {
    if f.is_zero_object() || g.is_zero_object() {
        return Window {
            lo: 0,
            hi: -1,
            review_above: -1,
            kind: WindowKind::Empty,
        };
    }
    let mut onsets = Vec::new();
    for i in 0..g.rank() {
        for j in 0..f.rank() {
            onsets.push(f.f0[j] - g.f0[i]);
            onsets.push(f.f1[j] - g.f1[i]);
        }
    }
    let lo = *onsets.iter().min().expect("nonempty");
    let top = *onsets.iter().max().expect("nonempty");
    let jac = top + (2 * f.h - 4).max(0);
    Window {
        lo,
        hi: jac + f.h,
        review_above: jac,
        kind: WindowKind::General,
    }
}

/// Window for `Hom(F, tau^n G)`. With parameters, reduced rank one pairs
/// whose subsets are equal or nested use the exact lemma windows; anything
/// else falls back to [`general_window`].
pub fn twist_window(f: &GradedMF, g: &GradedMF, p: Option<&DeformationParams>) -> Window {
    if let Some(p) = p {
        if let (Ok((i, a)), Ok((j, b))) = (f.rank1_normal_form(p), g.rank1_normal_form(p)) {
            let mu = p.mu() as i64;
            // Hom(tau^a F_I, tau^n tau^b F_J) = Hom(F_I, tau^m F_J), m = n + b - a
            let range = if i == j || i.is_subset(&j) {
                Some((0, mu - 1))
            } else if j.is_subset(&i) {
                let d = (i.len() - j.len()) as i64;
                Some((d, d + mu - 1))
            } else {
                None
            };
            if let Some((lo, hi)) = range {
                return Window {
                    lo: lo + a - b,
                    hi: hi + a - b,
                    review_above: hi + a - b,
                    kind: WindowKind::Lemma,
                };
            }
        }
    }
    general_window(f, g)
}

/// Twist-resolved Hom dimensions over a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomTable {
    pub source: String,
    pub target: String,
    pub window: Window,
    /// Only nonzero dimensions are stored.
    pub dims: BTreeMap<i64, usize>,
    /// Nonzero twists above `window.review_above`.
    pub review: Vec<i64>,
}

impl HomTable {
    pub fn compute(
        f: &GradedMF,
        g: &GradedMF,
        window: Window,
        labels: (&str, &str),
    ) -> Result<Self> {
        let twists: Vec<i64> = window.twists().collect();
        let dims: Result<Vec<(i64, usize)>> = twists
            .par_iter()
            .map(|&n| hom_dim(f, g, n).map(|d| (n, d)))
            .collect();
        let dims: BTreeMap<i64, usize> = dims?.into_iter().filter(|(_, d)| *d > 0).collect();
        let review = dims
            .keys()
            .copied()
            .filter(|&n| n > window.review_above)
            .collect();
        Ok(HomTable {
            source: labels.0.to_string(),
            target: labels.1.to_string(),
            window,
            dims,
            review,
        })
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Multiset of phases `phase(G) + 2n - phase(F)`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub entries: Vec<Rational>,
}

impl Spectrum {
    pub fn min(&self) -> Option<&Rational> {
        self.entries.first()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.entries.last()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Spectrum of a pair of reduced objects, scanning [`twist_window`].
pub fn spectrum(f: &GradedMF, g: &GradedMF, p: Option<&DeformationParams>) -> Result<Spectrum> {
    spectrum_in(f, g, twist_window(f, g, p))
}

pub fn spectrum_in(f: &GradedMF, g: &GradedMF, window: Window) -> Result<Spectrum> {
    if f.is_zero_object() || g.is_zero_object() {
        return Ok(Spectrum { entries: Vec::new() });
    }
    let (pf, pg) = (f.phase()?, g.phase()?);
    let table = HomTable::compute(f, g, window, ("F", "G"))?;
    let mut entries = Vec::new();
    for (&n, &d) in &table.dims {
        let phase = &pg + Rational::from_integer((2 * n).into()) - &pf;
        entries.extend(std::iter::repeat_n(phase, d));
    }
    entries.sort();
    Ok(Spectrum { entries })
}
