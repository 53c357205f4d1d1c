//! Independent recomputation of Hom dimensions, and an audit log of every
//! dimension the primary solver produced.
//!
//! The dense route never multiplies polynomials. It evaluates the matrices
//! of `F` and `G` at the points `(k, 1)` and imposes the commutation
//! constraints pointwise, which determines a homogeneous entry of degree `d`
//! as soon as `d + 1` points are used. Boundaries are likewise taken as
//! evaluated images, and ranks come from the alternate elimination.

use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::hom::{constraint_layout, homotopy_layout, phi_layout, Layout};
use crate::linalg::Matrix;
use crate::mf::GradedMF;
use crate::{Error, Rational, Result};

/// One primary-solver result.
#[derive(Clone, Debug)]
pub struct AuditEntry {
    pub source: GradedMF,
    pub target: GradedMF,
    pub twist: i64,
    pub dim: usize,
}

static AUDIT: Mutex<Option<Vec<AuditEntry>>> = Mutex::new(None);

/// Starts collecting every primary `hom_dim` result, discarding any
/// previous log.
pub fn start_audit() {
    *AUDIT.lock().expect("audit lock") = Some(Vec::new());
}

/// Stops collecting and returns the log.
pub fn take_audit() -> Vec<AuditEntry> {
    AUDIT.lock().expect("audit lock").take().unwrap_or_default()
}

pub(crate) fn record(f: &GradedMF, g: &GradedMF, n: i64, dim: usize) {
    let mut guard = AUDIT.lock().expect("audit lock");
    if let Some(log) = guard.as_mut() {
        log.push(AuditEntry {
            source: f.clone(),
            target: g.clone(),
            twist: n,
            dim,
        });
    }
}

fn points(max_degree: u32) -> Vec<Rational> {
    (0..=max_degree as i64).map(|k| Rational::from_integer(k.into())).collect()
}

fn max_degree(l: &Layout) -> u32 {
    l.slots.iter().map(|s| s.degree).max().unwrap_or(0)
}

/// Value of the unknown monomial `x^a q^b` at `(x, 1)`.
fn mono(x: &Rational, a: u32) -> Rational {
    let mut v = Rational::one();
    for _ in 0..a {
        v *= x;
    }
    v
}

/// Dense evaluation-based `dim Hom(F, tau^n G)`.
pub fn dense_hom_dim(f: &GradedMF, g: &GradedMF, n: i64) -> Result<usize> {
    if f.f != g.f || f.h != g.h {
        return Err(Error::MismatchedPotential);
    }
    if f.is_zero_object() || g.is_zero_object() {
        return Ok(0);
    }
    let phi = phi_layout(f, g, n);
    let hom = homotopy_layout(f, g, n);
    let cons = constraint_layout(f, g, n);
    let (gr, fr) = (g.rank(), f.rank());
    let one = Rational::one();

    // Values of q0, q1, q0', q1' at each point.
    let pts = points(max_degree(&cons).max(max_degree(&phi)));
    let evals: Vec<[Matrix; 4]> = pts
        .iter()
        .map(|x| {
            [
                f.q0.eval(x, &one),
                f.q1.eval(x, &one),
                g.q0.eval(x, &one),
                g.q1.eval(x, &one),
            ]
        })
        .collect();

    // Cycle constraints, one row per (block, entry, point).
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (pi, x) in pts.iter().enumerate() {
        let [q0, q1, q0t, q1t] = &evals[pi];
        for block in 0..2 {
            let (r, c) = (gr, fr);
            for k in 0..r {
                for j in 0..c {
                    let mut row = vec![Rational::zero(); phi.len];
                    for (col, (s, a, _)) in phi.unknowns().enumerate() {
                        let m = mono(x, a);
                        let v = match (block, s.block) {
                            // phi1 q0 - q0' phi0 at (k, j)
                            (0, 1) if s.row == k => &m * q0.get(s.col, j),
                            (0, 0) if s.col == j => -(q0t.get(k, s.row) * &m),
                            // phi0 q1 - q1' phi1 at (k, j)
                            (1, 0) if s.row == k => &m * q1.get(s.col, j),
                            (1, 1) if s.col == j => -(q1t.get(k, s.row) * &m),
                            _ => continue,
                        };
                        row[col] += v;
                    }
                    rows.push(row);
                }
            }
        }
    }
    let cycle = Matrix::from_rows_sized(rows.clone(), rows.len(), phi.len);

    // Boundaries: evaluated images of each homotopy unknown, in the
    // evaluation coordinates of (phi0, phi1).
    let phi_pts = points(max_degree(&phi));
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for (s, a, _) in hom.unknowns() {
        let mut col = Vec::new();
        for x in &phi_pts {
            let pi = pts.iter().position(|p| p == x).expect("point present");
            let [q0, q1, q0t, q1t] = &evals[pi];
            let m = mono(x, a);
            for block in 0..2 {
                for k in 0..gr {
                    for j in 0..fr {
                        let v = match (block, s.block) {
                            // phi0 = h1 q0 + q1' h0
                            (0, 1) if s.row == k => &m * q0.get(s.col, j),
                            (0, 0) if s.col == j => q1t.get(k, s.row) * &m,
                            // phi1 = q0' h1 + h0 q1
                            (1, 1) if s.col == j => q0t.get(k, s.row) * &m,
                            (1, 0) if s.row == k => &m * q1.get(s.col, j),
                            _ => Rational::zero(),
                        };
                        col.push(v);
                    }
                }
            }
        }
        cols.push(col);
    }
    let eval_rows = phi_pts.len() * 2 * gr * fr;
    let boundary = Matrix::from_columns(eval_rows, &cols);

    Ok((phi.len - cycle.rank_alt()) - boundary.rank_alt())
}

/// Entries of an audit log on which the dense oracle disagrees.
pub fn discrepancies(log: &[AuditEntry]) -> Result<Vec<(AuditEntry, usize)>> {
    let mut out = Vec::new();
    for e in log {
        let d = dense_hom_dim(&e.source, &e.target, e.twist)?;
        if d != e.dim {
            out.push((e.clone(), d));
        }
    }
    Ok(out)
}
