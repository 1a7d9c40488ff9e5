//! Chief series, centrality of chief factors, hypercentres and series lengths.

use crate::classes::{self, ClassExpr};
use crate::error::{Error, Result};
use crate::group::{Group, GroupId, Subgroup};
use crate::memo::{memoize, MemoKey};
use crate::primes::{self, PrimeSet};

/// A chain `1 = N_0 < … < N_k = top` of normal subgroups of the parent with
/// every step a chief factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiefSeries {
    pub parent: GroupId,
    pub terms: Vec<Subgroup>,
}

impl ChiefSeries {
    /// Factors `(L, K)` bottom-up.
    pub fn factors(&self) -> impl Iterator<Item = (&Subgroup, &Subgroup)> {
        self.terms.windows(2).map(|w| (&w[1], &w[0]))
    }

    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors().map(|(l, k)| l.order() / k.order()).collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Chief series through `top`, choosing the least canonical candidate at each
/// step.
pub fn chief_series(g: &Group, top: &Subgroup) -> Result<ChiefSeries> {
    chief_series_with(g, top, |_| 0)
}

/// Chief series through `top`; `choose` picks among the minimal candidates
/// (given in canonical order) at each step.
pub fn chief_series_with<F>(g: &Group, top: &Subgroup, mut choose: F) -> Result<ChiefSeries>
where
    F: FnMut(&[&Subgroup]) -> usize,
{
    if !g.is_normal(top) {
        return Err(Error::NotNormal);
    }
    let normals = g.normal_subgroups();
    let mut terms = vec![g.trivial()];
    loop {
        let cur = terms.last().unwrap();
        if cur == top {
            break;
        }
        let above: Vec<&Subgroup> = normals
            .iter()
            .filter(|m| cur.is_proper_subgroup_of(m) && m.is_subgroup_of(top))
            .collect();
        let minimal: Vec<&Subgroup> = above
            .iter()
            .filter(|m| !above.iter().any(|o| o.is_proper_subgroup_of(m)))
            .copied()
            .collect();
        let pick = choose(&minimal).min(minimal.len() - 1);
        terms.push(minimal[pick].clone());
    }
    Ok(ChiefSeries {
        parent: g.id(),
        terms,
    })
}

/// Verdicts of the two centrality routes for one chief factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralityVerdict {
    /// `(L/K) ⋊ (G/C_G(L/K)) ∈ F`; `None` when the product exceeds the order cap.
    pub semidirect: Option<bool>,
    /// `G/C_G(L/K) ∈ F(p)` for all `p` dividing `|L/K|`, when `F` has a
    /// registered local definition.
    pub local: Option<bool>,
}

impl CentralityVerdict {
    pub fn agree(&self) -> Option<bool> {
        Some(self.semidirect? == self.local?)
    }

    pub fn is_central(&self) -> bool {
        self.semidirect.or(self.local).unwrap_or(false)
    }
}

fn check_chief_factor(g: &Group, l: &Subgroup, k: &Subgroup) -> Result<()> {
    if !k.is_proper_subgroup_of(l) || !g.is_normal(l) || !g.is_normal(k) {
        return Err(Error::InvalidFactor("need normal subgroups K < L".into()));
    }
    let between = g
        .normal_subgroups()
        .iter()
        .any(|m| k.is_proper_subgroup_of(m) && m.is_proper_subgroup_of(l));
    if between {
        return Err(Error::InvalidFactor("a normal subgroup lies strictly between K and L".into()));
    }
    Ok(())
}

/// Builds `(L/K) ⋊ (G/C_G(L/K))` with `gC` acting by conjugation `x ↦ gxg⁻¹`.
pub fn factor_semidirect(g: &Group, l: &Subgroup, k: &Subgroup) -> Result<Group> {
    let emb = g.subgroup_group(l);
    let k_in_l = emb.restrict(k);
    let factor = emb.group.quotient(&k_in_l)?;
    let c = g.centralizer_of_factor(l, k);
    let acting = g.quotient(&c)?;
    let (nf, na) = (factor.group.order(), acting.group.order());
    let cap = g.limits().order_cap;
    if nf * na > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let bar = |x: usize| factor.projection.apply(emb.from_parent(x).unwrap());
    let mut factor_rep = vec![usize::MAX; nf];
    for x in l.members().iter() {
        let y = bar(x);
        if factor_rep[y] == usize::MAX {
            factor_rep[y] = x;
        }
    }
    let mut acting_rep = vec![usize::MAX; na];
    for x in 0..g.order() {
        let y = acting.projection.apply(x);
        if acting_rep[y] == usize::MAX {
            acting_rep[y] = x;
        }
    }
    let action: Vec<Vec<u32>> = acting_rep
        .iter()
        .map(|&a| {
            let a_inv = g.inv(a);
            factor_rep
                .iter()
                .map(|&x| bar(g.conj(x, a_inv)) as u32)
                .collect()
        })
        .collect();
    Group::semidirect_product(&factor.group, &acting.group, &action)
}

fn semidirect_route(g: &Group, l: &Subgroup, k: &Subgroup, f: &ClassExpr) -> Result<bool> {
    let key = (l.members().clone(), k.members().clone(), f.clone());
    memoize(&g.cache.centrality, key, || {
        let factor_order = (l.order() / k.order()) as u64;
        // chief factors of prime-power order are elementary abelian, the rest
        // are products of nonabelian simple groups
        let abelian_factor = primes::prime_power_base(factor_order).is_some();
        if !abelian_factor {
            if classes::is_subclass(f, &ClassExpr::solvable()) {
                return Ok(false);
            }
            // L/K has trivial centre and A = G/C_G(L/K) contains its inner
            // automorphisms, so (L/K) ⋊ A has two normal copies of L/K meeting
            // trivially, each with quotient A: it is subdirect in A x A
            let acting = g.quotient(&g.centralizer_of_factor(l, k))?;
            return classes::is_member(&acting.group, f);
        }
        let product = factor_semidirect(g, l, k)?;
        classes::is_member(&product, f)
    })
}

fn local_route(g: &Group, l: &Subgroup, k: &Subgroup, f: &ClassExpr) -> Result<Option<bool>> {
    let factor_order = (l.order() / k.order()) as u64;
    let ps = primes::prime_divisors(factor_order);
    let mut defs = Vec::new();
    for &p in &ps {
        match f.local_definition(p) {
            Some(d) => defs.push(d),
            None => return Ok(None),
        }
    }
    let c = g.centralizer_of_factor(l, k);
    let acting = g.quotient(&c)?;
    for d in defs {
        match d {
            None => return Ok(Some(false)),
            Some(cls) => {
                if !classes::is_member(&acting.group, &cls)? {
                    return Ok(Some(false));
                }
            }
        }
    }
    Ok(Some(true))
}

/// Both centrality routes for the chief factor `L/K`.
pub fn centrality_verdict(g: &Group, l: &Subgroup, k: &Subgroup, f: &ClassExpr) -> Result<CentralityVerdict> {
    check_chief_factor(g, l, k)?;
    let semidirect = match semidirect_route(g, l, k, f) {
        Ok(b) => Some(b),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };
    let local = local_route(g, l, k, f)?;
    Ok(CentralityVerdict { semidirect, local })
}

/// Is the chief factor `L/K` `F`-central in `G`?
///
/// Uses the semidirect construction, falling back to the local definition
/// when the product would exceed the order cap.
pub fn is_f_central(g: &Group, l: &Subgroup, k: &Subgroup, f: &ClassExpr) -> Result<bool> {
    match semidirect_route(g, l, k, f) {
        Ok(b) => Ok(b),
        Err(e) if e.is_budget() => match local_route(g, l, k, f)? {
            Some(b) => Ok(b),
            None => Err(e),
        },
        Err(e) => Err(e),
    }
}

fn factor_is_constrained(l: &Subgroup, k: &Subgroup, pi: &PrimeSet) -> bool {
    pi.meets_order((l.order() / k.order()) as u64)
}

fn series_is_hypercentral(g: &Group, s: &ChiefSeries, pi: &PrimeSet, f: &ClassExpr) -> Result<bool> {
    for (l, k) in s.factors() {
        if factor_is_constrained(l, k, pi) && !is_f_central(g, l, k, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is the normal subgroup `n` π`F`-hypercentral in `G`?
pub fn is_hypercentral(g: &Group, n: &Subgroup, pi: &PrimeSet, f: &ClassExpr) -> Result<bool> {
    let s = chief_series(g, n)?;
    series_is_hypercentral(g, &s, pi, f)
}

/// Same test along a chief series chosen by `choose`.
pub fn is_hypercentral_with<C>(g: &Group, n: &Subgroup, pi: &PrimeSet, f: &ClassExpr, choose: C) -> Result<bool>
where
    C: FnMut(&[&Subgroup]) -> usize,
{
    let s = chief_series_with(g, n, choose)?;
    series_is_hypercentral(g, &s, pi, f)
}

/// `Z_{πF}(G)`: the product of all π`F`-hypercentral normal subgroups.
pub fn hypercentre(g: &Group, pi: &PrimeSet, f: &ClassExpr) -> Result<Subgroup> {
    if !f.flags().formation {
        return Err(Error::ClassPrecondition {
            class: f.to_string(),
            required: "formation",
        });
    }
    memoize(&g.cache.subgroups, MemoKey::Hypercentre(pi.clone(), f.clone()), || {
        let mut acc = g.trivial();
        for n in g.normal_subgroups() {
            if n.is_subgroup_of(&acc) {
                continue;
            }
            if is_hypercentral(g, n, pi, f)? {
                acc = g.product_normal(&acc, n);
            }
        }
        if !is_hypercentral(g, &acc, pi, f)? {
            return Err(Error::HypercentreJoinFailure {
                class: f.to_string(),
                order: g.order(),
            });
        }
        Ok(acc)
    })
}

/// `1 = Z_0 ≤ Z_1 ≤ …` up to the first repeated term (the hypercentre).
pub fn upper_central_series(g: &Group) -> Vec<Subgroup> {
    let mut series = vec![g.trivial()];
    loop {
        let cur = series.last().unwrap();
        let set = (0..g.order()).filter(|&x| {
            g.generators()
                .iter()
                .all(|&y| cur.contains(g.commutator(x, y)))
        });
        let next = g
            .subgroup_from_elements(&set.collect::<Vec<_>>())
            .expect("the preimage of a centre is a subgroup");
        if next == *cur {
            return series;
        }
        series.push(next);
    }
}

/// Fitting length, or `None` for nonsolvable groups.
pub fn fitting_length(g: &Group) -> Result<Option<usize>> {
    if !g.is_solvable() {
        return Ok(None);
    }
    fn go(g: &Group) -> Result<usize> {
        if g.order() == 1 {
            return Ok(0);
        }
        let f = classes::radical(g, &ClassExpr::nilpotent())?;
        Ok(1 + go(&g.quotient(&f)?.group)?)
    }
    go(g).map(Some)
}

/// Length of the upper `p`-series `1 ≤ O_{p'} ≤ O_{p',p} ≤ …`.
pub fn p_length(g: &Group, p: u64) -> Result<usize> {
    let single = PrimeSet::single(p);
    if !classes::is_member(g, &ClassExpr::pi_solvable(single.clone()))? {
        return Err(Error::NotPiSolvable(single.to_string()));
    }
    fn go(g: &Group, p: &PrimeSet) -> Result<usize> {
        let low = classes::o_pi(g, &p.complement())?;
        let q = g.quotient(&low)?;
        if q.group.order() == 1 {
            return Ok(0);
        }
        let top = classes::o_pi(&q.group, p)?;
        Ok(1 + go(&q.group.quotient(&top)?.group, p)?)
    }
    go(g, &single)
}

/// True when no section `H/K` of a Sylow 2-subgroup is quaternion of order 8.
pub fn is_quaternion_free(g: &Group) -> Result<bool> {
    let s = g.any_sylow_subgroup(2);
    if s.order() < 8 {
        return Ok(true);
    }
    let sg = g.subgroup_group(&s);
    let p = &sg.group;
    if !p.element_orders().iter().any(|&o| o >= 4) {
        return Ok(true);
    }
    for h in p.lattice()?.subgroups() {
        if h.order() < 8 {
            continue;
        }
        let hg = p.subgroup_group(h);
        for k in hg.group.normal_subgroups() {
            if h.order() / k.order() == 8 && hg.group.quotient(k)?.group.is_quaternion_q8() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Ψ_p(G)`: generated by the elements of order `p`; for `p = 2` also by the
/// elements of order 4 when a Sylow 2-subgroup is not quaternion-free.
pub fn psi_p(g: &Group, p: u64) -> Result<Subgroup> {
    let with_four = p == 2 && !is_quaternion_free(g)?;
    let gens: Vec<usize> = (0..g.order())
        .filter(|&x| {
            let o = g.element_order(x) as u64;
            o == p || (with_four && o == 4)
        })
        .collect();
    g.closure(&gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Limits;

    fn perms(degree: usize, gens: &[&[u32]]) -> Group {
        let gens: Vec<Vec<u32>> = gens.iter().map(|g| g.to_vec()).collect();
        Group::from_permutations(degree, &gens, Limits::default()).unwrap()
    }

    fn s3() -> Group {
        perms(3, &[&[1, 0, 2], &[1, 2, 0]])
    }

    fn s4() -> Group {
        perms(4, &[&[1, 0, 2, 3], &[1, 2, 3, 0]])
    }

    #[test]
    fn chief_series_of_s4() {
        let g = s4();
        let s = chief_series(&g, &g.whole()).unwrap();
        assert_eq!(s.factor_orders(), vec![4, 3, 2]);
        let t = chief_series(&g, &g.trivial()).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn centrality_in_s3() {
        let g = s3();
        let c3 = g.derived_subgroup();
        let one = g.trivial();
        let n = ClassExpr::nilpotent();
        let v = centrality_verdict(&g, &c3, &one, &n).unwrap();
        assert_eq!(v.semidirect, Some(false));
        assert_eq!(v.agree(), Some(true));
        let u = ClassExpr::supersolvable();
        assert!(is_f_central(&g, &c3, &one, &u).unwrap());
        assert!(matches!(
            centrality_verdict(&g, &g.whole(), &one, &n),
            Err(Error::InvalidFactor(_))
        ));
    }

    #[test]
    fn hypercentres_of_s3() {
        let g = s3();
        let n = ClassExpr::nilpotent();
        assert!(hypercentre(&g, &PrimeSet::All, &n).unwrap().is_trivial());
        assert!(hypercentre(&g, &PrimeSet::single(2), &n).unwrap().is_whole());
        assert!(hypercentre(&g, &PrimeSet::single(5), &n).unwrap().is_whole());
    }

    #[test]
    fn lengths() {
        let g = s4();
        assert_eq!(fitting_length(&g).unwrap(), Some(3));
        assert_eq!(p_length(&g, 2).unwrap(), 2);
        let h = s3();
        assert_eq!(p_length(&h, 3).unwrap(), 1);
        assert_eq!(p_length(&h, 2).unwrap(), 1);
        let a5 = perms(5, &[&[1, 2, 0, 3, 4], &[0, 1, 3, 4, 2]]);
        assert_eq!(a5.order(), 60);
        assert_eq!(fitting_length(&a5).unwrap(), None);
        assert!(matches!(p_length(&a5, 2), Err(Error::NotPiSolvable(_))));
    }

    #[test]
    fn upper_central_series_of_d8() {
        let d8 = perms(4, &[&[1, 2, 3, 0], &[2, 1, 0, 3]]);
        let z = upper_central_series(&d8);
        let orders: Vec<usize> = z.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 8]);
    }

    #[test]
    fn psi_examples() {
        let c4 = perms(4, &[&[1, 2, 3, 0]]);
        assert_eq!(psi_p(&c4, 2).unwrap().order(), 2);
        // Q8 as permutations of its own elements
        let q8 = perms(8, &[&[1, 2, 3, 0, 5, 6, 7, 4], &[4, 7, 6, 5, 2, 1, 0, 3]]);
        assert_eq!(q8.order(), 8);
        assert!(q8.is_quaternion_q8());
        assert!(!is_quaternion_free(&q8).unwrap());
        assert!(psi_p(&q8, 2).unwrap().is_whole());
        let c3sq = perms(6, &[&[1, 2, 0, 3, 4, 5], &[0, 1, 2, 4, 5, 3]]);
        assert!(psi_p(&c3sq, 3).unwrap().is_whole());
    }
}
