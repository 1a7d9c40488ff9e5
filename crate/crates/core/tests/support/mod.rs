//! Brute-force oracles shared by the integration tests. They use only the
//! multiplication table and avoid the library's lattice, norm and hypercentre
//! algorithms.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use normlab_core::classes::{self, is_member, residual};
use normlab_core::corpus::{self, NamedGroup};
use normlab_core::series::is_f_central;
use normlab_core::{ClassExpr, Group, PrimeSet, Subgroup};

pub fn builtin(name: &str) -> Arc<Group> {
    corpus::builtin(name).unwrap_or_else(|| panic!("no built-in {name}")).group
}

pub fn catalog() -> Vec<NamedGroup> {
    corpus::load_corpus(&corpus::builtin_catalog()).unwrap()
}

pub fn class(text: &str) -> ClassExpr {
    ClassExpr::parse(text).unwrap()
}

pub type Set = BTreeSet<usize>;

pub fn members(s: &Subgroup) -> Set {
    s.elements().into_iter().collect()
}

/// Closure under multiplication, by repeated products.
pub fn naive_closure(g: &Group, seed: &Set) -> Set {
    let mut set: Set = seed.clone();
    set.insert(0);
    loop {
        let current: Vec<usize> = set.iter().copied().collect();
        let mut grew = false;
        for &a in &current {
            for &b in &current {
                if set.insert(g.mul(a, b)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

/// Every subgroup, found by adjoining single elements to known subgroups
/// starting from the trivial one. Every subgroup is reached since it is
/// generated by its elements.
pub fn naive_lattice(g: &Group) -> BTreeSet<Set> {
    let mut found: BTreeSet<Set> = BTreeSet::new();
    let mut frontier = vec![naive_closure(g, &Set::new())];
    found.insert(frontier[0].clone());
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h.contains(&x) {
                continue;
            }
            let mut seed = h.clone();
            seed.insert(x);
            let k = naive_closure(g, &seed);
            if found.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    found
}

pub fn naive_normalizer(g: &Group, s: &Set) -> Set {
    (0..g.order())
        .filter(|&x| s.iter().all(|&y| s.contains(&g.conj(y, x))))
        .collect()
}

/// `⋂ N_G(U^F G_H)` over every subgroup `U`, literally.
pub fn naive_norm(g: &Group, h: &ClassExpr, f: &ClassExpr) -> Set {
    let rad = members(&classes::radical(g, h).unwrap());
    let mut acc: Set = (0..g.order()).collect();
    for u in naive_lattice(g) {
        let sub = g.subgroup_from_elements(&u.iter().copied().collect::<Vec<_>>()).unwrap();
        let emb = g.subgroup_group(&sub);
        let uf = members(&emb.lift(&residual(&emb.group, f).unwrap()));
        let mut seed = uf;
        seed.extend(rad.iter().copied());
        let k = naive_closure(g, &seed);
        let n = naive_normalizer(g, &k);
        acc = acc.intersection(&n).copied().collect();
    }
    acc
}

/// Upper central series over all elements: `Z_{i+1} = {x : [x, y] ∈ Z_i for all y}`.
pub fn naive_hypercentre(g: &Group) -> Set {
    let mut z: Set = [0].into_iter().collect();
    loop {
        let next: Set = (0..g.order())
            .filter(|&x| (0..g.order()).all(|y| z.contains(&g.commutator(x, y))))
            .collect();
        if next == z {
            return z;
        }
        z = next;
    }
}

/// The ascending construction: repeatedly adjoin every minimal normal
/// subgroup of `G/Z` that is a π'-group or `F`-central, until nothing changes.
pub fn ascending_hypercentre(g: &Group, pi: &PrimeSet, f: &ClassExpr) -> Subgroup {
    let mut z = g.trivial();
    loop {
        let q = g.quotient(&z).unwrap();
        let mut next = z.clone();
        let minimal = q.group.minimal_normal_subgroups();
        for m in minimal {
            let order = m.order() as u64;
            let unconstrained = !pi.meets_order(order);
            if unconstrained || is_f_central(&q.group, &m, &q.group.trivial(), f).unwrap() {
                next = g.product_normal(&next, &q.preimage(&m));
            }
        }
        if next == z {
            return z;
        }
        z = next;
    }
}

/// Is there a chain of normal subgroups of `G` with cyclic factors? Searched
/// over all normal subgroups, independently of the chief-factor test.
pub fn has_cyclic_normal_series(g: &Group) -> bool {
    let normals: Vec<Set> = naive_lattice(g)
        .into_iter()
        .filter(|s| naive_normalizer(g, s).len() == g.order())
        .collect();
    fn cyclic_factor(g: &Group, low: &Set, high: &Set) -> bool {
        let index = high.len() / low.len();
        high.iter().any(|&x| {
            // order of x modulo low
            let mut y = x;
            let mut k = 1;
            while !low.contains(&y) {
                y = g.mul(y, x);
                k += 1;
            }
            k == index
        })
    }
    fn climb(g: &Group, normals: &[Set], cur: &Set) -> bool {
        if cur.len() == g.order() {
            return true;
        }
        normals.iter().any(|n| {
            n.len() > cur.len() && cur.is_subset(n) && cyclic_factor(g, cur, n) && climb(g, normals, n)
        })
    }
    climb(g, &normals, &[0].into_iter().collect())
}

pub fn is_supersolvable(g: &Group) -> bool {
    is_member(g, &ClassExpr::supersolvable()).unwrap()
}
