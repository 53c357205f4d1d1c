use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A subset of `{1, ..., n}` stored as a strictly increasing list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetIndex {
    members: Vec<usize>,
}

impl SubsetIndex {
    /// Sorts `members`; rejects repeats and anything outside `1..=n`.
    pub fn new(mut members: Vec<usize>, n: usize) -> Result<Self> {
        members.sort_unstable();
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidSubset(format!("index {} repeated", w[0])));
            }
        }
        if let Some(&m) = members.iter().find(|&&m| m == 0 || m > n) {
            return Err(Error::InvalidSubset(format!("index {m} outside 1..={n}")));
        }
        Ok(SubsetIndex { members })
    }

    pub fn empty() -> Self {
        SubsetIndex { members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        SubsetIndex {
            members: (1..=n).collect(),
        }
    }

    /// `{1, ..., k}`.
    pub fn prefix(k: usize) -> Self {
        Self::full(k)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_proper_nonempty(&self, n: usize) -> bool {
        !self.is_empty() && self.len() < n
    }

    pub fn complement(&self, n: usize) -> Self {
        SubsetIndex {
            members: (1..=n).filter(|i| !self.contains(*i)).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut m: Vec<usize> = self.members.iter().chain(&other.members).copied().collect();
        m.sort_unstable();
        m.dedup();
        SubsetIndex { members: m }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        SubsetIndex {
            members: self.members.iter().copied().filter(|i| other.contains(*i)).collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        SubsetIndex {
            members: self.members.iter().copied().filter(|i| !other.contains(*i)).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.iter().all(|i| other.contains(*i))
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// All proper nonempty subsets of `{1, ..., n}`, by size then lexicographically.
    pub fn all_proper(n: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (1u32..(1u32 << n) - 1)
            .map(|mask| SubsetIndex {
                members: (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect(),
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        out
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_operations() {
        let a = SubsetIndex::new(vec![3, 1], 4).unwrap();
        let b = SubsetIndex::new(vec![1, 2], 4).unwrap();
        assert_eq!(a.members(), &[1, 3]);
        assert_eq!(a.complement(4).members(), &[2, 4]);
        assert_eq!(a.union(&b).members(), &[1, 2, 3]);
        assert_eq!(a.intersection(&b).members(), &[1]);
        assert_eq!(a.difference(&b).members(), &[3]);
        assert!(!a.is_subset(&b));
        assert_eq!(a.to_string(), "{1,3}");
    }

    #[test]
    fn rejects_bad_members() {
        assert!(SubsetIndex::new(vec![1, 1], 3).is_err());
        assert!(SubsetIndex::new(vec![0], 3).is_err());
        assert!(SubsetIndex::new(vec![4], 3).is_err());
    }

    #[test]
    fn proper_subsets_counted() {
        assert_eq!(SubsetIndex::all_proper(3).len(), 6);
        assert_eq!(SubsetIndex::all_proper(4).len(), 14);
        assert_eq!(SubsetIndex::all_proper(3)[0].members(), &[1]);
    }
}
