//! Subgroup lattices.
//!
//! The lattice is built by repeated cyclic extension: every subgroup of a
//! finite group is reached from the trivial subgroup by adjoining one cyclic
//! subgroup at a time, so closing the set of found subgroups under joins with
//! cyclic subgroups yields every subgroup, perfect ones included.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Group, GroupId, Subgroup};
use crate::primes::{self, PrimeSet};

#[derive(Debug, Clone)]
pub struct Lattice {
    parent: GroupId,
    subgroups: Vec<Subgroup>,
    index: HashMap<ElementSet, usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Lattice {
    /// [`Lattice::from_subgroups`] for untrusted input: rejects duplicates
    /// and lists not closed under conjugation.
    pub(crate) fn from_subgroups_checked(group: &Group, subgroups: Vec<Subgroup>) -> Result<Lattice> {
        let set: HashSet<&ElementSet> = subgroups.iter().map(|s| s.members()).collect();
        if set.len() != subgroups.len() {
            return Err(Error::CorruptCache("duplicate subgroup".into()));
        }
        for s in &subgroups {
            for &g in group.generators() {
                if !set.contains(group.conjugate_subgroup(s, g).members()) {
                    return Err(Error::CorruptCache("subgroup list not closed under conjugation".into()));
                }
            }
        }
        Ok(Lattice::from_subgroups(group, subgroups))
    }

    /// Assembles a lattice from an unordered list of distinct subgroups.
    pub(crate) fn from_subgroups(group: &Group, mut subgroups: Vec<Subgroup>) -> Lattice {
        subgroups.sort();
        let index: HashMap<ElementSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = Vec::new();
            for g in 0..group.order() {
                let c = group.conjugate_subgroup(&subgroups[i], g);
                let j = index[c.members()];
                if class_of[j] == usize::MAX {
                    class_of[j] = classes.len();
                    members.push(j);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Lattice {
            parent: group.id(),
            subgroups,
            index,
            classes,
            class_of,
        }
    }

    pub fn parent(&self) -> GroupId {
        self.parent
    }

    /// All subgroups in canonical order (by order, then by members).
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s.members()).copied()
    }

    /// Conjugacy classes as sorted lists of subgroup indices, ordered by their
    /// least member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// One representative (the least) per conjugacy class.
    pub fn class_representatives(&self) -> Vec<&Subgroup> {
        self.classes.iter().map(|c| &self.subgroups[c[0]]).collect()
    }

    /// `subgroups[i] ≤ subgroups[j]`.
    pub fn includes(&self, i: usize, j: usize) -> bool {
        self.subgroups[i].is_subgroup_of(&self.subgroups[j])
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.classes
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| self.subgroups[c[0]].clone())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Maximal proper subgroups, canonically sorted.
    pub fn maximal_subgroups(&self) -> Vec<Subgroup> {
        let n = self.subgroups.len();
        let proper: Vec<usize> = (0..n).filter(|&i| !self.subgroups[i].is_whole()).collect();
        proper
            .iter()
            .filter(|&&i| {
                !proper
                    .iter()
                    .any(|&j| j != i && self.subgroups[i].is_proper_subgroup_of(&self.subgroups[j]))
            })
            .map(|&i| self.subgroups[i].clone())
            .collect()
    }

    /// Structural sanity check used for lattices loaded from disk.
    pub fn sanity_check(&self, group: &Group) -> Result<()> {
        let bad = |m: &str| Err(Error::CorruptCache(m.to_string()));
        if self.parent != group.id() {
            return bad("lattice belongs to another group");
        }
        if self.subgroups.first() != Some(&group.trivial()) || self.subgroups.last() != Some(&group.whole()) {
            return bad("lattice does not start at 1 and end at G");
        }
        let mut seen = HashSet::new();
        for s in &self.subgroups {
            if !seen.insert(s.members().clone()) {
                return bad("duplicate subgroup");
            }
            if !group.order().is_multiple_of(s.order()) {
                return bad("subgroup order does not divide the group order");
            }
        }
        // closure spot checks on an evenly spaced sample
        for s in self.subgroups.iter().step_by(1.max(self.subgroups.len() / 64)) {
            if group.subgroup_from_set(s.members().clone()).is_err() {
                return bad("listed set is not a subgroup");
            }
        }
        let cyclic: HashSet<ElementSet> = (0..group.order())
            .map(|x| group.closure(&[x]).unwrap().members().clone())
            .collect();
        if !cyclic.iter().all(|c| seen.contains(c)) {
            return bad("a cyclic subgroup is missing");
        }
        Ok(())
    }
}

impl Group {
    /// The full subgroup lattice; computed once per group.
    ///
    /// Fails with [`Error::LatticeBudgetExceeded`] when the group has more
    /// subgroups than the configured budget.
    pub fn lattice(&self) -> Result<Arc<Lattice>> {
        // Enumerate outside the cell: the enumeration runs on the rayon pool,
        // and a worker waiting on it may pick up a job needing this lattice.
        if let Some(l) = self.cache.lattice.get() {
            return l.clone();
        }
        let computed = enumerate_lattice(self).map(Arc::new);
        let _ = self.cache.lattice.set(computed);
        self.cache.lattice.get().expect("lattice cell was just set").clone()
    }

    /// Seeds the lattice cache, e.g. from a persisted copy. Returns false if
    /// a lattice was already present.
    pub fn install_lattice(&self, lattice: Lattice) -> bool {
        self.cache.lattice.set(Ok(Arc::new(lattice))).is_ok()
    }

    pub fn lattice_if_computed(&self) -> Option<Arc<Lattice>> {
        match self.cache.lattice.get() {
            Some(Ok(l)) => Some(l.clone()),
            _ => None,
        }
    }

    pub fn maximal_subgroups(&self) -> Result<Vec<Subgroup>> {
        Ok(self.lattice()?.maximal_subgroups())
    }

    /// Minimal nontrivial normal subgroups, canonically sorted.
    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        let normals = self.normal_subgroups();
        normals
            .iter()
            .filter(|n| !n.is_trivial())
            .filter(|n| {
                !normals
                    .iter()
                    .any(|m| !m.is_trivial() && m.is_proper_subgroup_of(n))
            })
            .cloned()
            .collect()
    }

    /// Intersection of all maximal subgroups (`G` itself when `G = 1`).
    pub fn frattini_subgroup(&self) -> Result<Subgroup> {
        let mut acc = self.whole();
        for m in self.maximal_subgroups()? {
            acc = acc.intersection(&m);
        }
        Ok(acc)
    }

    /// Subnormality by normal-closure descent: replace the ambient subgroup by
    /// the normal closure of `h` in it until it stabilises.
    pub fn is_subnormal(&self, h: &Subgroup) -> bool {
        let mut k = self.whole();
        loop {
            let next = self.normal_closure_in(h, &k);
            if next == k {
                return k == *h;
            }
            k = next;
        }
    }

    /// The least canonical Sylow `p`-subgroup.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup> {
        let target = primes::pi_part(self.order() as u64, &PrimeSet::single(p)) as usize;
        if target == 1 {
            return Ok(self.trivial());
        }
        let lattice = self.lattice()?;
        Ok(lattice
            .subgroups()
            .iter()
            .find(|s| s.order() == target)
            .expect("Sylow subgroups exist")
            .clone())
    }

    /// The least canonical Hall `π`-subgroup, if one exists.
    pub fn hall_subgroup(&self, pi: &PrimeSet) -> Result<Option<Subgroup>> {
        let target = primes::pi_part(self.order() as u64, pi) as usize;
        let lattice = self.lattice()?;
        Ok(lattice.subgroups().iter().find(|s| s.order() == target).cloned())
    }

    /// Some Sylow `p`-subgroup, found greedily without the lattice.
    pub fn any_sylow_subgroup(&self, p: u64) -> Subgroup {
        let target = primes::pi_part(self.order() as u64, &PrimeSet::single(p)) as usize;
        let is_p_elt = |x: usize| primes::prime_power_base(self.element_order(x) as u64) == Some(p);
        let mut current = self.trivial();
        while current.order() < target {
            let norm = self.normalizer(&current);
            let x = norm
                .members()
                .iter()
                .find(|&x| !current.contains(x) && is_p_elt(x))
                .expect("a p-element outside P normalises P while P is not Sylow");
            current = self.extend(&current, &[x]);
        }
        current
    }

    /// Normal Sylow `p`-subgroup, detected by counting `p`-elements.
    pub fn normal_sylow(&self, p: u64) -> Option<Subgroup> {
        let target = primes::pi_part(self.order() as u64, &PrimeSet::single(p)) as usize;
        let set = ElementSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&x| {
                let o = self.element_order(x) as u64;
                o == 1 || primes::prime_power_base(o) == Some(p)
            }),
        );
        (set.len() == target).then(|| Subgroup::from_members(self.id(), set))
    }
}

/// Generalised cyclic extension over breadth-first layers.
fn enumerate_lattice(group: &Group) -> Result<Lattice> {
    let budget = group.limits().subgroup_budget;
    // one generator per cyclic subgroup: its least element of full order
    let mut cyclic_gens: Vec<usize> = Vec::new();
    let mut seen_cyclic: HashSet<ElementSet> = HashSet::new();
    for x in 1..group.order() {
        let c = group.closure(&[x])?;
        if seen_cyclic.insert(c.members().clone()) {
            cyclic_gens.push(x);
        }
    }

    let mut found: Vec<(ElementSet, Vec<usize>)> = vec![(group.trivial().members().clone(), Vec::new())];
    let mut known: HashSet<ElementSet> = found.iter().map(|(s, _)| s.clone()).collect();
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let candidates: Vec<Vec<(ElementSet, Vec<usize>)>> = frontier
            .par_iter()
            .map(|&i| {
                let (members, gens) = &found[i];
                let mut out = Vec::new();
                let mut local: HashSet<ElementSet> = HashSet::new();
                for &x in &cyclic_gens {
                    if members.contains(x) {
                        continue;
                    }
                    let mut new_gens = gens.clone();
                    new_gens.push(x);
                    let joined = group.close_set(members.clone(), &new_gens);
                    if !known.contains(&joined) && local.insert(joined.clone()) {
                        out.push((joined, new_gens));
                    }
                }
                out
            })
            .collect();
        let mut next = Vec::new();
        for batch in candidates {
            for (members, gens) in batch {
                if known.insert(members.clone()) {
                    if found.len() >= budget {
                        return Err(Error::LatticeBudgetExceeded { budget });
                    }
                    next.push(found.len());
                    found.push((members, gens));
                }
            }
        }
        frontier = next;
    }
    let subgroups = found
        .into_iter()
        .map(|(m, _)| Subgroup::from_members(group.id(), m))
        .collect();
    Ok(Lattice::from_subgroups(group, subgroups))
}
