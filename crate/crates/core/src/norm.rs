//! Norms: intersections of normalizers of residual-times-radical subgroups,
//! their ascending series, and related intersections over the lattice.

use rayon::prelude::*;

use crate::classes::{self, ClassExpr};
use crate::error::{Error, Result};
use crate::group::{Group, GroupId, Subgroup};
use crate::memo::{memoize, MemoKey};
use crate::primes::PrimeSet;

fn require(c: &ClassExpr, ok: bool, required: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ClassPrecondition {
            class: c.to_string(),
            required,
        })
    }
}

/// `U^F · G_H` for a subgroup `U` of `G`.
pub fn residual_times_radical(g: &Group, u: &Subgroup, f: &ClassExpr, radical: &Subgroup) -> Result<Subgroup> {
    let emb = g.subgroup_group(u);
    let r = classes::residual(&emb.group, f)?;
    Ok(g.product_normal(&emb.lift(&r), radical))
}

/// The `H`-`F`-norm: `⋂_{U ≤ G} N_G(U^F · G_H)`.
///
/// One subgroup per conjugacy class suffices: conjugating `U` conjugates
/// `U^F · G_H`, so the normalizers over a class intersect to the core of one
/// of them.
pub fn hf_norm(g: &Group, h: &ClassExpr, f: &ClassExpr) -> Result<Subgroup> {
    require(h, h.flags().fitting, "Fitting class")?;
    require(f, f.flags().formation, "formation")?;
    memoize(&g.cache.subgroups, MemoKey::Norm(h.clone(), f.clone()), || {
        let radical = classes::radical(g, h)?;
        let lattice = g.lattice()?;
        let cores: Vec<Result<Subgroup>> = lattice
            .class_representatives()
            .into_par_iter()
            .map(|u| {
                let k = residual_times_radical(g, u, f, &radical)?;
                Ok(g.core(&g.normalizer(&k)))
            })
            .collect();
        let mut acc = g.whole();
        for c in cores {
            acc = acc.intersection(&c?);
        }
        assert!(g.is_normal(&acc), "norm is normal");
        Ok(acc)
    })
}

/// The same intersection taken literally over every subgroup.
pub fn hf_norm_naive(g: &Group, h: &ClassExpr, f: &ClassExpr) -> Result<Subgroup> {
    let radical = classes::radical(g, h)?;
    let mut acc = g.whole();
    for u in g.lattice()?.subgroups() {
        let k = residual_times_radical(g, u, f, &radical)?;
        acc = acc.intersection(&g.normalizer(&k));
    }
    Ok(acc)
}

/// The π`F`-norm: the norm with `H = Gpi(π)`, so the radical is `O_π(G)`.
pub fn pi_f_norm(g: &Group, pi: &PrimeSet, f: &ClassExpr) -> Result<Subgroup> {
    hf_norm(g, &ClassExpr::pi_groups(pi.clone()), f)
}

/// The classical norm: the intersection of all normalizers.
pub fn classical_norm(g: &Group) -> Result<Subgroup> {
    hf_norm(g, &ClassExpr::trivial(), &ClassExpr::trivial())
}

/// `1 = T_0 ≤ T_1 ≤ …` with `T_i/T_{i-1}` the norm of `G/T_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormSeries {
    pub parent: GroupId,
    pub h: ClassExpr,
    pub f: ClassExpr,
    pub terms: Vec<Subgroup>,
    /// First index `i` with `T_i = T_{i+1}`.
    pub terminal_index: usize,
}

impl NormSeries {
    pub fn terminal(&self) -> &Subgroup {
        &self.terms[self.terminal_index]
    }
}

pub fn norm_series(g: &Group, h: &ClassExpr, f: &ClassExpr) -> Result<NormSeries> {
    let mut terms = vec![g.trivial()];
    loop {
        let cur = terms.last().unwrap();
        let q = g.quotient(cur)?;
        let n = hf_norm(&q.group, h, f)?;
        let next = q.preimage(&n);
        if next == *cur {
            break;
        }
        terms.push(next);
    }
    Ok(NormSeries {
        parent: g.id(),
        h: h.clone(),
        f: f.clone(),
        terminal_index: terms.len() - 1,
        terms,
    })
}

/// The terminal term of [`norm_series`].
pub fn norm_infinity(g: &Group, h: &ClassExpr, f: &ClassExpr) -> Result<Subgroup> {
    memoize(&g.cache.subgroups, MemoKey::NormInfinity(h.clone(), f.clone()), || {
        Ok(norm_series(g, h, f)?.terminal().clone())
    })
}

/// Membership of every subgroup in `x`, indexed like the lattice.
fn lattice_membership(g: &Group, x: &ClassExpr) -> Result<Vec<bool>> {
    let lattice = g.lattice()?;
    let per_class: Vec<Result<bool>> = lattice
        .class_representatives()
        .into_par_iter()
        .map(|u| classes::is_member(&g.subgroup_group(u).group, x))
        .collect();
    let per_class: Vec<bool> = per_class.into_iter().collect::<Result<_>>()?;
    Ok((0..lattice.len()).map(|i| per_class[lattice.class_of(i)]).collect())
}

/// Subgroups in `x` that are maximal among subgroups in `x`.
pub fn x_maximal_subgroups(g: &Group, x: &ClassExpr) -> Result<Vec<Subgroup>> {
    let lattice = g.lattice()?;
    let member = lattice_membership(g, x)?;
    let subs = lattice.subgroups();
    let inside: Vec<usize> = (0..subs.len()).filter(|&i| member[i]).collect();
    Ok(inside
        .iter()
        .filter(|&&i| !inside.iter().any(|&j| subs[i].is_proper_subgroup_of(&subs[j])))
        .map(|&i| subs[i].clone())
        .collect())
}

/// `Int_X(G)`: the intersection of the `x`-maximal subgroups.
pub fn int_x(g: &Group, x: &ClassExpr) -> Result<Subgroup> {
    memoize(&g.cache.subgroups, MemoKey::IntX(x.clone()), || {
        let maximal = x_maximal_subgroups(g, x)?;
        assert!(!maximal.is_empty(), "the trivial subgroup lies in every built-in class");
        let mut acc = g.whole();
        for m in &maximal {
            acc = acc.intersection(m);
        }
        Ok(acc)
    })
}

/// `G ∉ X` while every proper subgroup lies in `X`.
///
/// For subgroup-closed `X` only maximal subgroups are inspected.
pub fn crit_s(g: &Group, x: &ClassExpr) -> Result<bool> {
    if classes::is_member(g, x)? {
        return Ok(false);
    }
    let lattice = g.lattice()?;
    let candidates: Vec<Subgroup> = if x.flags().s_closed {
        lattice.maximal_subgroups()
    } else {
        lattice
            .class_representatives()
            .into_iter()
            .filter(|s| !s.is_whole())
            .cloned()
            .collect()
    };
    for s in candidates {
        if !classes::is_member(&g.subgroup_group(&s).group, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`crit_s`] without the maximal-subgroup shortcut.
pub fn crit_s_exhaustive(g: &Group, x: &ClassExpr) -> Result<bool> {
    if classes::is_member(g, x)? {
        return Ok(false);
    }
    for s in g.lattice()?.subgroups() {
        if !s.is_whole() && !classes::is_member(&g.subgroup_group(s).group, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The intersection of the normalizers of all subnormal subgroups.
pub fn wielandt_subgroup(g: &Group) -> Result<Subgroup> {
    let lattice = g.lattice()?;
    let mut acc = g.whole();
    for u in lattice.class_representatives() {
        if g.is_subnormal(u) {
            acc = acc.intersection(&g.core(&g.normalizer(u)));
        }
    }
    Ok(acc)
}
