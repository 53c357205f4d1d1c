//! Fixtures shared by the benchmarks.

use gradmf::canonical::build_phi;
use gradmf::collection::exceptional_collection;
use gradmf::{DeformationParams, GradedMF, SubsetIndex};

/// Integer parameters with `mu + 1` roots spaced by two, summing to zero.
pub fn params(mu: usize) -> DeformationParams {
    let s: Vec<i64> = (0..=mu as i64).map(|k| mu as i64 - 2 * k).collect();
    DeformationParams::from_ints(&s).expect("distinct roots")
}

/// The collection for the identity order.
pub fn collection(mu: usize) -> Vec<GradedMF> {
    let a: Vec<usize> = (1..=mu).collect();
    exceptional_collection(&params(mu), &a).expect("valid order")
}

/// Rank-two cone of the canonical map `F_{1} -> F_{1,2}`.
pub fn nested_cone(mu: usize) -> GradedMF {
    let p = params(mu);
    let n = p.h() as usize;
    let i = SubsetIndex::new(vec![1], n).unwrap();
    let j = SubsetIndex::new(vec![1, 2], n).unwrap();
    GradedMF::cone(&build_phi(&p, &i, &j).unwrap()).unwrap()
}
