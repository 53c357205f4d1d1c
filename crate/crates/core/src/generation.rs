//! Replaying the triangles showing that the collection attached to an order
//! `a` generates every `tau^l F_I`, followed by the residue field check.
//!
//! Membership is tracked on rank one objects `tau^t F_I` up to the orbit of
//! `T`: `T F_I = tau^{|I|} F_{I^c}` and `T^2 = tau^h`. Every identification
//! used is checked on the actual factorizations, and every cone is computed,
//! reduced and compared with its predicted normal form.
//!
//! Claims are stated in the labels `1, ..., mu+1` of a standard order and
//! relabelled through `a` (with `mu+1` sent to the index missing from `a`).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::canonical::{build_phi, build_phibar, build_q_map};
use crate::iso::{iso_equivalent, IsoVerdict};
use crate::mf::{build_f_i, GradedMF};
use crate::morphism::MFMorphism;
use crate::params::DeformationParams;
use crate::stab::residue_field_stab;
use crate::subset::SubsetIndex;
use crate::{Error, Result};

/// `tau^t F_I`.
pub type Key = (SubsetIndex, i64);

/// A canonical morphism between rank one objects, shifted by `tau^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Map {
    /// `tau^a Phi_I^J: tau^a F_I -> tau^a F_J`, `I` inside `J`.
    Phi(SubsetIndex, SubsetIndex, i64),
    /// `tau^a Phibar_I^J: tau^a F_I -> tau^{a+|I|-|J|} F_J`, `J` inside `I`.
    PhiBar(SubsetIndex, SubsetIndex, i64),
}

impl Map {
    pub fn source(&self) -> Key {
        match self {
            Map::Phi(i, _, a) | Map::PhiBar(i, _, a) => (i.clone(), *a),
        }
    }

    pub fn target(&self) -> Key {
        match self {
            Map::Phi(_, j, a) => (j.clone(), *a),
            Map::PhiBar(i, j, a) => (j.clone(), a + i.len() as i64 - j.len() as i64),
        }
    }

    /// The predicted cone.
    pub fn cone_key(&self, n: usize) -> Key {
        match self {
            Map::Phi(i, j, a) => (i.complement(n).intersection(j), a + i.len() as i64),
            Map::PhiBar(i, j, a) => (
                i.complement(n).union(j),
                a + i.len() as i64 - j.len() as i64,
            ),
        }
    }

    fn well_formed(&self, n: usize) -> bool {
        let (i, j) = match self {
            Map::Phi(i, j, _) => (i, j),
            Map::PhiBar(j, i, _) => (i, j),
        };
        i.is_proper_nonempty(n) && j.is_proper_nonempty(n) && i.is_subset(j) && i != j
    }

    pub fn morphism(&self, p: &DeformationParams) -> Result<MFMorphism> {
        match self {
            Map::Phi(i, j, a) => Ok(build_phi(p, i, j)?.tau_shift(*a)),
            Map::PhiBar(i, j, a) => Ok(build_phibar(p, i, j)?.tau_shift(*a)),
        }
    }

    fn describe(&self) -> String {
        let pre = |a: i64| if a == 0 { String::new() } else { format!("tau^{a} ") };
        match self {
            Map::Phi(i, j, a) => format!("{}Phi_{i}^{j}", pre(*a)),
            Map::PhiBar(i, j, a) => format!("{}Phibar_{i}^{j}", pre(*a)),
        }
    }
}

pub fn describe(k: &Key) -> String {
    if k.1 == 0 {
        format!("F_{}", k.0)
    } else {
        format!("tau^{} F_{}", k.1, k.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// A cone computed and compared with its prediction.
    Cone,
    /// An identification `X = T^p Y` with `Y` already generated.
    Orbit,
    /// Nothing available produces the target.
    Missing,
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub target: String,
    /// The morphism whose cone is taken, or the shift used.
    pub via: String,
    /// Whether the triangle came from the search rather than the claim's
    /// own list.
    pub searched: bool,
    pub obtained: Option<String>,
    pub verdict: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub statement: String,
    pub targets: Vec<String>,
    pub steps: Vec<Step>,
    /// Targets not generated when the claim finished.
    pub missing: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabLine {
    pub index: usize,
    pub stab: GradedMF,
    pub comparison: GradedMF,
    /// Both ends of `q: F_{k} -> tau F_{k}` are generated.
    pub inputs_generated: bool,
    pub verdict: String,
    pub method: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub order: Vec<usize>,
    pub claims: Vec<ClaimReport>,
    pub stab: StabLine,
    pub passed: bool,
}

/// Membership bookkeeping over one parameter set and order.
pub struct Generator<'a> {
    p: &'a DeformationParams,
    /// `sigma[i - 1]`: the label in the actual order of standard label `i`.
    sigma: Vec<usize>,
    members: BTreeSet<Key>,
    seed: u64,
    steps: Vec<Step>,
}

impl<'a> Generator<'a> {
    pub fn new(p: &'a DeformationParams, a: &[usize], seed: u64) -> Result<Self> {
        let n = p.h() as usize;
        if a.len() != p.mu() {
            return Err(Error::OutOfRange(format!("order has length {}, expected {}", a.len(), p.mu())));
        }
        let used = SubsetIndex::new(a.to_vec(), n)?;
        if used.len() != a.len() {
            return Err(Error::InvalidSubset(format!("order {a:?} repeats an index")));
        }
        let mut sigma = a.to_vec();
        sigma.extend(used.complement(n).members());
        let mut g = Generator {
            p,
            sigma,
            members: BTreeSet::new(),
            seed,
            steps: Vec::new(),
        };
        for k in 1..=p.mu() {
            let ik = g.std_prefix(k);
            for t in [0, 1] {
                if let Some(key) = g.canonical(&(ik.clone(), t)) {
                    g.members.insert(key);
                }
            }
        }
        Ok(g)
    }

    fn n(&self) -> usize {
        self.p.h() as usize
    }

    /// Relabels a set of standard labels.
    pub fn std(&self, labels: &[usize]) -> SubsetIndex {
        let m: Vec<usize> = labels.iter().map(|l| self.sigma[l - 1]).collect();
        SubsetIndex::new(m, self.n()).expect("labels in range")
    }

    fn std_prefix(&self, k: usize) -> SubsetIndex {
        self.std(&(1..=k).collect::<Vec<_>>())
    }

    fn std_range(&self, lo: usize, hi: usize) -> SubsetIndex {
        self.std(&(lo..=hi).collect::<Vec<_>>())
    }

    /// Orbit representative, or `None` for the zero object.
    pub fn canonical(&self, k: &Key) -> Option<Key> {
        let n = self.n();
        if !k.0.is_proper_nonempty(n) {
            return None;
        }
        let h = self.p.h();
        let a = (k.0.clone(), k.1.rem_euclid(h));
        let b = (k.0.complement(n), (k.1 + k.0.len() as i64).rem_euclid(h));
        Some(a.min(b))
    }

    pub fn is_member(&self, k: &Key) -> bool {
        self.canonical(k).is_none_or(|c| self.members.contains(&c))
    }

    pub fn members(&self) -> &BTreeSet<Key> {
        &self.members
    }

    fn build(&self, k: &Key) -> Result<GradedMF> {
        build_f_i(self.p, &k.0, k.1)
    }

    fn verdict(&self, a: &GradedMF, b: &GradedMF) -> Result<IsoVerdict> {
        iso_equivalent(a, b, Some(self.p), self.seed)
    }

    fn cone_step(&mut self, map: &Map, target: &Key, searched: bool) -> Result<()> {
        let predicted = map.cone_key(self.n());
        let cone = GradedMF::cone(&map.morphism(self.p)?)?.reduce().0;
        let obtained = cone.rank1_normal_form(self.p).ok();
        let v = self.verdict(&cone, &self.build(&predicted)?)?;
        let passed = v.is_iso() && obtained.as_ref() == Some(&predicted);
        self.steps.push(Step {
            kind: StepKind::Cone,
            target: describe(&predicted),
            via: map.describe(),
            searched,
            obtained: obtained.as_ref().map(describe),
            verdict: v.label().to_string(),
            passed,
        });
        if passed {
            if let Some(c) = self.canonical(&predicted) {
                self.members.insert(c);
            }
            if &predicted != target {
                self.orbit_step(target)?;
            }
        }
        Ok(())
    }

    /// Checks `target = T^p rep` for the stored representative of its orbit.
    fn orbit_step(&mut self, target: &Key) -> Result<()> {
        let Some(rep) = self.canonical(target) else {
            return Ok(());
        };
        let h = self.p.h();
        let p = if rep.0 == target.0 {
            2 * (target.1 - rep.1).div_euclid(h)
        } else {
            2 * (target.1 - rep.1 - rep.0.len() as i64).div_euclid(h) + 1
        };
        let shifted = self.build(&rep)?.shift_power(p);
        let v = self.verdict(&shifted, &self.build(target)?)?;
        let passed = v.is_iso() && self.members.contains(&rep);
        self.steps.push(Step {
            kind: StepKind::Orbit,
            target: describe(target),
            via: format!("T^{p} {}", describe(&rep)),
            searched: false,
            obtained: shifted.reduce().0.rank1_normal_form(self.p).ok().as_ref().map(describe),
            verdict: v.label().to_string(),
            passed,
        });
        Ok(())
    }

    /// Replays every listed triangle whose inputs are generated; otherwise
    /// uses the orbit or searches for a triangle.
    pub fn obtain(&mut self, target: &Key, listed: &[Map]) -> Result<()> {
        let n = self.n();
        let mut done = false;
        for m in listed {
            if m.well_formed(n) && self.is_member(&m.source()) && self.is_member(&m.target()) {
                self.cone_step(m, target, false)?;
                done = true;
            }
        }
        if done || self.canonical(target).is_none() {
            return Ok(());
        }
        if self.is_member(target) {
            return self.orbit_step(target);
        }
        if let Some(m) = self.search(target) {
            return self.cone_step(&m, target, true);
        }
        self.steps.push(Step {
            kind: StepKind::Missing,
            target: describe(target),
            via: String::new(),
            searched: true,
            obtained: None,
            verdict: "missing".into(),
            passed: false,
        });
        Ok(())
    }

    /// A canonical morphism between generated objects whose predicted cone
    /// lies in the orbit of `target`.
    pub fn search(&self, target: &Key) -> Option<Map> {
        let n = self.n();
        let want = self.canonical(target)?;
        let subsets = SubsetIndex::all_proper(n);
        for a in 0..self.p.h() {
            for i in &subsets {
                for j in &subsets {
                    let m = if i.is_subset(j) && i != j {
                        Map::Phi(i.clone(), j.clone(), a)
                    } else if j.is_subset(i) && i != j {
                        Map::PhiBar(i.clone(), j.clone(), a)
                    } else {
                        continue;
                    };
                    if self.canonical(&m.cone_key(n)).as_ref() == Some(&want)
                        && self.is_member(&m.source())
                        && self.is_member(&m.target())
                    {
                        return Some(m);
                    }
                }
            }
        }
        None
    }

    fn claim(
        &mut self,
        id: &str,
        statement: &str,
        targets: Vec<Key>,
        body: impl FnOnce(&mut Self) -> Result<()>,
    ) -> Result<ClaimReport> {
        let start = self.steps.len();
        body(self)?;
        for t in &targets {
            if !self.is_member(t) {
                self.obtain(t, &[])?;
            }
        }
        let steps = self.steps[start..].to_vec();
        let missing: Vec<String> = targets
            .iter()
            .filter(|t| !self.is_member(t))
            .map(describe)
            .collect();
        let passed = missing.is_empty() && steps.iter().all(|s| s.passed);
        Ok(ClaimReport {
            id: id.to_string(),
            statement: statement.to_string(),
            targets: targets.iter().map(describe).collect(),
            steps,
            missing,
            passed,
        })
    }

    /// `tau F_{{k}^c}` for every `k`.
    pub fn complements(&mut self) -> Result<ClaimReport> {
        let mu = self.p.mu();
        let h = mu + 1;
        let targets: Vec<Key> = (1..=h).map(|k| (self.std(&[k]).complement(h), 1)).collect();
        let t = targets.clone();
        self.claim("complements", "tau F_{k^c} for all k", targets, |g| {
            g.obtain(&t[0], &[])?;
            for k in 2..=mu {
                let m = Map::PhiBar(g.std_prefix(k), g.std_prefix(k - 1), 0);
                g.obtain(&t[k - 1], &[m])?;
            }
            g.obtain(&t[h - 1], &[])
        })
    }

    /// `tau^mu F_{{k}}` for every `k`.
    pub fn top_singletons(&mut self) -> Result<ClaimReport> {
        let mu = self.p.mu();
        let m = mu as i64;
        let targets: Vec<Key> = (1..=mu + 1).map(|k| (self.std(&[k]), m)).collect();
        let t = targets.clone();
        self.claim("top_singletons", "tau^mu F_{k} for all k", targets, |g| {
            let top = g.std_prefix(mu);
            if mu >= 2 {
                let mid = g.std_range(2, mu);
                g.obtain(&(mid.clone(), 1), &[Map::Phi(g.std_prefix(1), top.clone(), 0)])?;
                g.obtain(&t[0], &[Map::Phi(mid, top.clone(), 1)])?;
            }
            for k in 2..mu {
                let tail = g.std_range(k + 1, mu);
                g.obtain(&(tail, k as i64), &[Map::Phi(g.std_prefix(k), top.clone(), 0)])?;
            }
            for k in 2..=mu {
                let tail = g.std_range(k, mu);
                g.obtain(&(tail, k as i64), &[Map::Phi(g.std_prefix(k - 1), top.clone(), 1)])?;
            }
            for k in 2..mu {
                let map = Map::Phi(g.std_range(k + 1, mu), g.std_range(k, mu), k as i64);
                g.obtain(&t[k - 1], &[map])?;
            }
            g.obtain(&t[mu - 1], &[])?;
            g.obtain(&t[mu], &[])
        })
    }

    /// `tau^m F_{{k}}` for `m = 1, ..., mu-1` and `k <= m+1`.
    pub fn singletons(&mut self) -> Result<ClaimReport> {
        let mu = self.p.mu();
        let mut targets = Vec::new();
        for m in 1..mu {
            for k in 1..=m + 1 {
                targets.push((self.std(&[k]), m as i64));
            }
        }
        self.claim("singletons", "tau^m F_{k} for m < mu and k <= m+1", targets, |g| {
            for l in 1..=mu + 1 {
                g.obtain(&(g.std(&[l]), 0), &[])?;
            }
            for m in 1..mu {
                let im = g.std_prefix(m);
                let im1 = g.std_prefix(m + 1);
                for l in 1..=m {
                    let rest = im.difference(&g.std(&[l]));
                    g.obtain(&(rest, 1), &[Map::Phi(g.std(&[l]), im.clone(), 0)])?;
                }
                for l in 1..=m + 1 {
                    let rest = im1.difference(&g.std(&[l]));
                    g.obtain(&(rest, 1), &[Map::Phi(g.std(&[l]), im1.clone(), 0)])?;
                }
                let maps: Vec<Map> = (1..=m)
                    .map(|l| {
                        let sl = g.std(&[l]);
                        Map::Phi(im.difference(&sl), im1.difference(&sl), 1)
                    })
                    .collect();
                g.obtain(&(g.std(&[m + 1]), m as i64), &maps)?;
                for l in 1..=m {
                    let sl = g.std(&[l]);
                    g.obtain(&(sl.clone(), m as i64), &[Map::Phi(im.difference(&sl), im.clone(), 1)])?;
                }
            }
            Ok(())
        })
    }

    /// `F_{K^c}` for `1 <= |K| <= mu-1`.
    pub fn cosubsets(&mut self) -> Result<ClaimReport> {
        let mu = self.p.mu();
        let n = mu + 1;
        let by_size = |l: usize| -> Vec<SubsetIndex> {
            SubsetIndex::all_proper(n).into_iter().filter(|s| s.len() == l).collect()
        };
        let targets: Vec<Key> = (1..mu)
            .flat_map(by_size)
            .map(|k| (k.complement(n), 0))
            .collect();
        self.claim("cosubsets", "F_{K^c} for 1 <= |K| < mu", targets, |g| {
            for k in 1..=n {
                g.obtain(&(g.std(&[k]).complement(n), 0), &[])?;
            }
            if mu >= 2 {
                let map = Map::Phi(g.std_prefix(mu - 1), g.std(&[mu]).complement(n), 0);
                g.obtain(&(g.std(&[mu + 1]), mu as i64 - 1), &[map])?;
            }
            for l in 2..mu {
                for kset in by_size(l) {
                    let maps: Vec<Map> = kset
                        .members()
                        .iter()
                        .map(|&k| {
                            let single = SubsetIndex::new(vec![k], n).expect("in range");
                            Map::PhiBar(kset.difference(&single).complement(n), single, 0)
                        })
                        .collect();
                    g.obtain(&(kset.clone(), (mu + 1 - l) as i64), &maps)?;
                    g.obtain(&(kset.complement(n), 0), &[])?;
                }
            }
            Ok(())
        })
    }

    /// `tau^l F_I` for every proper nonempty `I` and `l = 0, ..., mu`.
    pub fn all_shifts(&mut self) -> Result<ClaimReport> {
        let mu = self.p.mu();
        let n = mu + 1;
        let mut targets = Vec::new();
        for i in SubsetIndex::all_proper(n) {
            for l in 0..=mu {
                targets.push((i.clone(), l as i64));
            }
        }
        let t = targets.clone();
        self.claim("all_shifts", "tau^l F_I for all I and 0 <= l <= mu", targets, |g| {
            // triangles first, then the shifts reached through T
            let direct = |(i, l): &Key| *l > 0 && *l as usize + i.len() <= mu;
            for (i, l) in t.iter().filter(|k| direct(k)) {
                let k = SubsetIndex::new(i.complement(n).members()[..*l as usize].to_vec(), n)?;
                g.obtain(&(i.clone(), *l), &[Map::Phi(k.clone(), i.union(&k), 0)])?;
            }
            for key in t.iter().filter(|k| !direct(k)) {
                g.obtain(key, &[])?;
            }
            Ok(())
        })
    }

    /// `(R/m)^stab = T^{-1} tau^{h-2} C(q)` with `q: F_{k} -> tau F_{k}`.
    pub fn stab_line(&mut self) -> Result<StabLine> {
        let k = self.sigma[0];
        let single = self.std(&[1]);
        let q = build_q_map(self.p, k)?;
        debug_assert_eq!(q.source.f0, vec![0]);
        let inputs_generated = self.is_member(&(single.clone(), 0)) && self.is_member(&(single, 1));
        let rf = residue_field_stab(self.p, k)?;
        let v = self.verdict(&rf.stab, &rf.comparison)?;
        let method = match &v {
            IsoVerdict::Iso { method, .. } | IsoVerdict::No { method, .. } => {
                Some(format!("{method:?}").to_lowercase())
            }
            IsoVerdict::Unknown { .. } => None,
        };
        Ok(StabLine {
            index: k,
            stab: rf.stab,
            comparison: rf.comparison,
            inputs_generated,
            verdict: v.label().to_string(),
            method,
            passed: inputs_generated && v.is_iso(),
        })
    }
}

pub fn verify_generation(p: &DeformationParams, a: &[usize], seed: u64) -> Result<GenerationReport> {
    let mut g = Generator::new(p, a, seed)?;
    let claims = vec![
        g.complements()?,
        g.top_singletons()?,
        g.singletons()?,
        g.cosubsets()?,
        g.all_shifts()?,
    ];
    let stab = g.stab_line()?;
    let passed = claims.iter().all(|c| c.passed) && stab.passed;
    Ok(GenerationReport {
        order: a.to_vec(),
        claims,
        stab,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize], n: usize) -> SubsetIndex {
        SubsetIndex::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn orbit_keys() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let g = Generator::new(&p, &[1, 2], 0).unwrap();
        // T F_{1} = tau F_{2,3}
        assert_eq!(g.canonical(&(set(&[1], 3), 0)), g.canonical(&(set(&[2, 3], 3), 1)));
        assert_eq!(g.canonical(&(set(&[1], 3), 0)), g.canonical(&(set(&[1], 3), 3)));
        assert_ne!(g.canonical(&(set(&[1], 3), 0)), g.canonical(&(set(&[1], 3), 1)));
        assert!(g.is_member(&(set(&[2, 3], 3), 1)));
        assert!(!g.is_member(&(set(&[2], 3), 0)));
        assert!(g.is_member(&(set(&[], 3), 5)));
    }

    #[test]
    fn complement_step_matches_prediction() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let mut g = Generator::new(&p, &[1, 2], 0).unwrap();
        let rep = g.complements().unwrap();
        assert!(rep.passed, "{rep:#?}");
        let cone = rep.steps.iter().find(|s| s.kind == StepKind::Cone).unwrap();
        assert_eq!(cone.target, "tau^1 F_{1,3}");
    }

    #[test]
    fn mu_two_all_claims() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        let rep = verify_generation(&p, &[1, 2], 0).unwrap();
        for c in &rep.claims {
            assert!(c.passed, "{c:#?}");
        }
        assert!(rep.stab.passed, "{:?}", rep.stab.verdict);
    }

    #[test]
    fn other_order() {
        let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
        assert!(verify_generation(&p, &[3, 1], 1).unwrap().passed);
    }
}
