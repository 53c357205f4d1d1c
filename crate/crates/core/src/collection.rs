//! Exceptional objects and collections.
//!
//! `Hom(E, T^p Y)` at twist zero is read from twist-resolved tables: with
//! `T^2 = tau^h`, it is `Hom(E, tau^{kh} Y)` for `p = 2k` and
//! `Hom(E, tau^{kh} T Y)` for `p = 2k + 1`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::hom::{general_window, hom_dim, HomTable, Window};
use crate::mf::{build_f_i, GradedMF};
use crate::params::DeformationParams;
use crate::subset::SubsetIndex;
use crate::{Error, Result};

/// The objects `E_1, ..., E_{2mu}` attached to an order `a`:
/// `E_k = F_{I_k}` for `k <= mu` and `tau F_{I_{k-mu}}` after, with
/// `I_k = {a_1, ..., a_k}`.
pub fn exceptional_collection(p: &DeformationParams, a: &[usize]) -> Result<Vec<GradedMF>> {
    let mu = p.mu();
    if a.len() != mu {
        return Err(Error::OutOfRange(format!("order has length {}, expected {mu}", a.len())));
    }
    SubsetIndex::new(a.to_vec(), mu + 1)?;
    let prefix = |k: usize| SubsetIndex::new(a[..k].to_vec(), mu + 1);
    let mut out = Vec::with_capacity(2 * mu);
    for k in 1..=mu {
        out.push(build_f_i(p, &prefix(k)?, 0)?);
    }
    for k in 1..=mu {
        out.push(build_f_i(p, &prefix(k)?, 1)?);
    }
    Ok(out)
}

/// All orders `a`: sequences of `mu` distinct elements of `{1, ..., mu+1}`.
pub fn all_orders(mu: usize) -> Vec<Vec<usize>> {
    fn rec(mu: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == mu {
            out.push(cur.clone());
            return;
        }
        for v in 1..=mu + 1 {
            if !cur.contains(&v) {
                cur.push(v);
                rec(mu, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(mu, &mut Vec::new(), &mut out);
    out
}

/// `dim Hom(E, T^p Y)` for every `p` with a nonzero value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftedHoms {
    /// Table against `Y`.
    pub even: HomTable,
    /// Table against `T Y`.
    pub odd: HomTable,
    /// `p -> dim`, nonzero only.
    pub by_shift: BTreeMap<i64, usize>,
}

impl ShiftedHoms {
    pub fn compute(e: &GradedMF, y: &GradedMF, labels: (&str, &str)) -> Result<Self> {
        let ty = y.translate();
        let tlabel = format!("T{}", labels.1);
        let even = HomTable::compute(e, y, general_window(e, y), labels)?;
        let odd = HomTable::compute(e, &ty, general_window(e, &ty), (labels.0, &tlabel))?;
        Ok(Self::from_tables(even, odd, e.h))
    }

    /// Only twists divisible by `h` matter; computes just those.
    pub fn compute_sparse(e: &GradedMF, y: &GradedMF) -> Result<BTreeMap<i64, usize>> {
        let ty = y.translate();
        let mut out = BTreeMap::new();
        for (target, parity) in [(y, 0), (&ty, 1)] {
            let w = general_window(e, target);
            let h = e.h;
            let ks: Vec<i64> = (w.lo.div_euclid(h)..=w.hi.div_euclid(h) + 1)
                .filter(|k| (w.lo..=w.hi).contains(&(k * h)))
                .collect();
            let dims: Result<Vec<(i64, usize)>> = ks
                .par_iter()
                .map(|&k| hom_dim(e, target, k * h).map(|d| (2 * k + parity, d)))
                .collect();
            out.extend(dims?.into_iter().filter(|(_, d)| *d > 0));
        }
        Ok(out)
    }

    fn from_tables(even: HomTable, odd: HomTable, h: i64) -> Self {
        let mut by_shift = BTreeMap::new();
        for (table, parity) in [(&even, 0), (&odd, 1)] {
            for (&n, &d) in &table.dims {
                if n.rem_euclid(h) == 0 {
                    by_shift.insert(2 * n.div_euclid(h) + parity, d);
                }
            }
        }
        ShiftedHoms { even, odd, by_shift }
    }

    pub fn at(&self, p: i64) -> usize {
        self.by_shift.get(&p).copied().unwrap_or(0)
    }

    /// Euler pairing `sum_p (-1)^p dim Hom(E, T^p Y)`.
    pub fn euler(&self) -> i64 {
        self.by_shift
            .iter()
            .map(|(p, d)| if p.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) })
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exceptionality {
    pub exceptional: bool,
    pub end_dim: usize,
    /// First failing `(p, dim)` of `Hom(E, T^p E)`.
    pub offending: Option<(i64, usize)>,
}

/// `End(E) = k` at `p = 0` and no `Hom(E, T^p E)` for `p != 0`.
pub fn is_exceptional(e: &GradedMF) -> Result<Exceptionality> {
    if e.is_zero_object() {
        return Ok(Exceptionality {
            exceptional: false,
            end_dim: 0,
            offending: Some((0, 0)),
        });
    }
    let homs = ShiftedHoms::compute_sparse(e, e)?;
    let end_dim = homs.get(&0).copied().unwrap_or(0);
    let offending = if end_dim != 1 {
        Some((0, end_dim))
    } else {
        homs.iter().find(|(p, _)| **p != 0).map(|(p, d)| (*p, *d))
    };
    Ok(Exceptionality {
        exceptional: offending.is_none(),
        end_dim,
        offending,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairEntry {
    pub source: usize,
    pub target: usize,
    pub homs: ShiftedHoms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollectionReport {
    pub labels: Vec<String>,
    pub objects: Vec<GradedMF>,
    pub exceptionality: Vec<Exceptionality>,
    /// All ordered pairs, row-major in `(source, target)`; indices 1-based.
    pub pairs: Vec<PairEntry>,
    pub each_exceptional: bool,
    pub is_exceptional_collection: bool,
    pub is_strong: bool,
    pub gram: Vec<Vec<i64>>,
    pub failures: Vec<String>,
}

impl CollectionReport {
    pub fn pair(&self, m: usize, n: usize) -> &PairEntry {
        &self.pairs[(m - 1) * self.objects.len() + (n - 1)]
    }

    /// Gram matrix is upper triangular with unit diagonal.
    pub fn gram_unitriangular(&self) -> bool {
        let l = self.gram.len();
        (0..l).all(|i| self.gram[i][i] == 1 && (0..i).all(|j| self.gram[i][j] == 0))
    }
}

pub fn check_collection(objects: &[GradedMF], labels: &[String]) -> Result<CollectionReport> {
    let l = objects.len();
    if let Some(first) = objects.first() {
        if objects.iter().any(|o| o.f != first.f) {
            return Err(Error::MismatchedPotential);
        }
    }
    let exceptionality: Result<Vec<Exceptionality>> =
        objects.par_iter().map(is_exceptional).collect();
    let exceptionality = exceptionality?;

    let idx: Vec<(usize, usize)> = (0..l).flat_map(|m| (0..l).map(move |n| (m, n))).collect();
    let pairs: Result<Vec<PairEntry>> = idx
        .par_iter()
        .map(|&(m, n)| {
            ShiftedHoms::compute(&objects[m], &objects[n], (&labels[m], &labels[n])).map(|homs| {
                PairEntry {
                    source: m + 1,
                    target: n + 1,
                    homs,
                }
            })
        })
        .collect();
    let pairs = pairs?;

    let mut failures = Vec::new();
    for (k, e) in exceptionality.iter().enumerate() {
        if let Some((p, d)) = e.offending {
            failures.push(format!("{} not exceptional: Hom(E, T^{p} E) has dimension {d}", labels[k]));
        }
    }
    let each_exceptional = failures.is_empty();
    let mut backward_ok = true;
    let mut strong_ok = true;
    for pe in &pairs {
        for (&p, &d) in &pe.homs.by_shift {
            let (m, n) = (pe.source, pe.target);
            if m > n {
                backward_ok = false;
                failures.push(format!(
                    "Hom({}, T^{p} {}) = {d} with {} after {}",
                    labels[m - 1],
                    labels[n - 1],
                    labels[m - 1],
                    labels[n - 1]
                ));
            } else if p != 0 {
                strong_ok = false;
                if m != n {
                    failures.push(format!(
                        "Hom({}, T^{p} {}) = {d}",
                        labels[m - 1],
                        labels[n - 1]
                    ));
                }
            }
        }
    }
    let gram = (0..l)
        .map(|m| (0..l).map(|n| pairs[m * l + n].homs.euler()).collect())
        .collect();
    let is_exceptional_collection = each_exceptional && backward_ok;
    Ok(CollectionReport {
        labels: labels.to_vec(),
        objects: objects.to_vec(),
        exceptionality,
        pairs,
        each_exceptional,
        is_exceptional_collection,
        is_strong: is_exceptional_collection && strong_ok,
        gram,
        failures,
    })
}

/// Labels `E1, ..., El`.
pub fn default_labels(l: usize) -> Vec<String> {
    (1..=l).map(|k| format!("E{k}")).collect()
}

/// The window [`ShiftedHoms::compute`] uses for a pair.
pub fn pair_window(e: &GradedMF, y: &GradedMF) -> Window {
    general_window(e, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_two_standard_order() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let objs = exceptional_collection(&p, &[1, 2]).unwrap();
        let rep = check_collection(&objs, &default_labels(4)).unwrap();
        assert!(rep.each_exceptional, "{:?}", rep.failures);
        assert!(rep.is_exceptional_collection, "{:?}", rep.failures);
        assert!(rep.is_strong, "{:?}", rep.failures);
        assert!(rep.gram_unitriangular());
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(rep.gram[m][n], rep.pair(m + 1, n + 1).homs.at(0) as i64);
            }
        }
    }

    #[test]
    fn reversed_order_fails() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let mut objs = exceptional_collection(&p, &[1, 2]).unwrap();
        objs.reverse();
        let rep = check_collection(&objs, &default_labels(4)).unwrap();
        assert!(rep.each_exceptional);
        assert!(!rep.is_exceptional_collection);
    }

    #[test]
    fn sums_are_not_exceptional() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let f = build_f_i(&p, &SubsetIndex::new(vec![1], 3).unwrap(), 0).unwrap();
        let ff = f.direct_sum(&f).unwrap();
        let e = is_exceptional(&ff).unwrap();
        assert!(!e.exceptional);
        assert_eq!(e.end_dim, 4);
        assert!(!is_exceptional(&GradedMF::zero(3, p.f().clone())).unwrap().exceptional);
        assert_eq!(all_orders(2).len(), 6);
        assert_eq!(all_orders(3).len(), 24);
    }
}
