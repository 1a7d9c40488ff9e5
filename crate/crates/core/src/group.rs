//! Concrete finite groups given by a full multiplication table.
//!
//! Every group, whatever its origin, is stored as a Cayley table over the
//! element indices `0..order` with index 0 the identity. Permutation groups
//! additionally keep their permutation images so that elements can be printed
//! in cycle notation. Quotients, products and subgroups-as-groups are always
//! table-backed.
//!
//! Exhaustive algorithms here cost `O(|G|^2)` or worse; groups above the order
//! cap are refused at construction time.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::bitset::ElementSet;
use crate::memo::GroupCache;
use crate::error::{Error, Result};
use crate::primes;

pub const DEFAULT_ORDER_CAP: usize = 2000;
pub const DEFAULT_SUBGROUP_BUDGET: usize = 20000;

/// Size limits inherited by every group derived from a constructed group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub order_cap: usize,
    pub subgroup_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: DEFAULT_ORDER_CAP,
            subgroup_budget: DEFAULT_SUBGROUP_BUDGET,
        }
    }
}

/// Content hash of a multiplication table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId(pub u64);

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

#[derive(Debug, Clone)]
pub enum Backend {
    /// Permutations on `0..degree`; `images[i]` is the permutation of element `i`.
    Permutation { degree: usize, images: Vec<Vec<u32>> },
    Table,
}

pub struct Group {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<usize>,
    backend: Backend,
    limits: Limits,
    id: GroupId,
    pub(crate) cache: GroupCache,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("id", &self.id)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

/// A subgroup of a concrete group, as a set of element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: GroupId,
    members: ElementSet,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.members)
    }
}

impl Subgroup {
    pub(crate) fn from_members(parent: GroupId, members: ElementSet) -> Self {
        debug_assert!(members.contains(0));
        debug_assert_eq!(members.universe() % members.len(), 0, "Lagrange");
        Subgroup { parent, members }
    }

    pub fn parent(&self) -> GroupId {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.members.universe() / self.order()
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.members.universe()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_proper_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() < other.order() && self.is_subgroup_of(other)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_members(self.parent, self.members.intersection(&other.members))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A total map between element indices that respects products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: GroupId,
    pub target: GroupId,
    pub image_of: Vec<u32>,
}

impl Homomorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.image_of[x] as usize
    }

    /// Exhaustive product check.
    pub fn verify(&self, source: &Group, target: &Group) -> bool {
        self.image_of.len() == source.order()
            && self.image_of[0] == 0
            && (0..source.order()).all(|a| {
                (0..source.order()).all(|b| {
                    self.apply(source.mul(a, b)) == target.mul(self.apply(a), self.apply(b))
                })
            })
    }
}

/// `G/N` together with the projection from `G`.
#[derive(Debug)]
pub struct Quotient {
    pub group: Arc<Group>,
    pub projection: Homomorphism,
    kernel: Subgroup,
}

impl Quotient {
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// `HN/N` for a subgroup `H` of the parent.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let set =
            ElementSet::from_indices(self.group.order(), h.members.iter().map(|x| self.projection.apply(x)));
        Subgroup::from_members(self.group.id(), set)
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        let n = self.projection.image_of.len();
        let set = ElementSet::from_indices(
            n,
            (0..n).filter(|&x| s.contains(self.projection.apply(x))),
        );
        Subgroup::from_members(self.kernel.parent, set)
    }
}

/// A subgroup of a parent group rebuilt as a standalone group.
///
/// Elements of the standalone group are the subgroup members in increasing
/// parent index order.
#[derive(Debug)]
pub struct Embedded {
    pub group: Arc<Group>,
    subgroup: Subgroup,
    to_parent: Vec<u32>,
    from_parent: Vec<u32>,
}

impl Embedded {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn to_parent(&self, x: usize) -> usize {
        self.to_parent[x] as usize
    }

    pub fn from_parent(&self, x: usize) -> Option<usize> {
        match self.from_parent[x] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// A subgroup of the standalone group, as a subgroup of the parent.
    pub fn lift(&self, s: &Subgroup) -> Subgroup {
        let set = ElementSet::from_indices(
            self.from_parent.len(),
            s.members.iter().map(|x| self.to_parent(x)),
        );
        Subgroup::from_members(self.subgroup.parent, set)
    }

    /// `S ∩ U` expressed inside the standalone copy of `U`.
    pub fn restrict(&self, s: &Subgroup) -> Subgroup {
        let set = ElementSet::from_indices(
            self.group.order(),
            s.members.iter().filter_map(|x| self.from_parent(x)),
        );
        Subgroup::from_members(self.group.id(), set)
    }
}

fn content_id(order: usize, table: &[u32]) -> GroupId {
    let mut h = Sha256::new();
    h.update((order as u64).to_le_bytes());
    for &x in table {
        h.update(x.to_le_bytes());
    }
    let digest = h.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    GroupId(u64::from_be_bytes(bytes))
}

/// Breadth-first closure of `generators` under `mul`, starting from `identity`.
///
/// Elements are returned in discovery order, which fixes the element indexing
/// of the resulting group.
pub fn enumerate_closure<T, F>(identity: T, generators: &[T], cap: usize, mut mul: F) -> Result<Vec<T>>
where
    T: Clone + Eq + Hash,
    F: FnMut(&T, &T) -> T,
{
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    seen.insert(identity, 0);
    let mut i = 0;
    while i < elements.len() {
        let x = elements[i].clone();
        for g in generators {
            let y = mul(&x, g);
            if !seen.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                seen.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        i += 1;
    }
    Ok(elements)
}

/// Composition `x^(ab) = (x^a)^b`: apply `a` first.
pub fn compose_perm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn validate_perm(degree: usize, images: &[u32]) -> Result<()> {
    if images.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "expected {degree} images, got {}",
            images.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in images {
        let x = x as usize;
        if x >= degree || seen[x] {
            return Err(Error::InvalidPermutation(format!(
                "{images:?} is not a bijection on {degree} points"
            )));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Cycle notation with 1-based points, `()` for the identity.
pub fn format_cycles(images: &[u32]) -> String {
    let mut seen = vec![false; images.len()];
    let mut out = String::new();
    for start in 0..images.len() {
        if seen[start] || images[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = images[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

impl Group {
    /// Builds the group generated by permutations (0-based images) on `degree` points.
    pub fn from_permutations(degree: usize, generators: &[Vec<u32>], limits: Limits) -> Result<Group> {
        for g in generators {
            validate_perm(degree, g)?;
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let elements = enumerate_closure(identity, generators, limits.order_cap, |a, b| compose_perm(a, b))?;
        let index: HashMap<&[u32], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i))
            .collect();
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = index[compose_perm(a, b).as_slice()] as u32;
            }
        }
        let mut gens: Vec<usize> = Vec::new();
        for g in generators {
            let i = index[g.as_slice()];
            if i != 0 && !gens.contains(&i) {
                gens.push(i);
            }
        }
        Ok(Group::assemble(
            table,
            Some(gens),
            Backend::Permutation {
                degree,
                images: elements,
            },
            limits,
        ))
    }

    /// Builds a group from an arbitrary Cayley table, validating the group axioms.
    ///
    /// The identity is moved to index 0; other elements keep their relative order.
    pub fn from_table(order: usize, table: &[u32], limits: Limits) -> Result<Group> {
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if order > limits.order_cap {
            return Err(Error::OrderCapExceeded {
                cap: limits.order_cap,
            });
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, got {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x as usize >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        // Latin square
        for i in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for j in 0..order {
                let r = table[i * order + j] as usize;
                let c = table[j * order + i] as usize;
                if row[r] || col[c] {
                    return Err(Error::InvalidTable("not a Latin square".into()));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let e = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        // relabel so that the identity is index 0
        let mut perm: Vec<usize> = vec![e];
        perm.extend((0..order).filter(|&x| x != e));
        let mut new_index = vec![0usize; order];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new;
        }
        let mut relabelled = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                relabelled[a * order + b] =
                    new_index[table[perm[a] * order + perm[b]] as usize] as u32;
            }
        }
        let group = Group::assemble(relabelled, None, Backend::Table, limits);
        // Light's test: checking (xg)y = x(gy) for generators g suffices.
        for &g in &group.generators {
            for x in 0..order {
                let xg = group.mul(x, g);
                for y in 0..order {
                    if group.mul(xg, y) != group.mul(x, group.mul(g, y)) {
                        return Err(Error::InvalidTable("operation is not associative".into()));
                    }
                }
            }
        }
        Ok(group)
    }

    /// Internal constructor for tables already known to satisfy the axioms
    /// with identity 0.
    pub(crate) fn assemble(
        table: Vec<u32>,
        generators: Option<Vec<usize>>,
        backend: Backend,
        limits: Limits,
    ) -> Group {
        let order = (table.len() as f64).sqrt().round() as usize;
        debug_assert_eq!(order * order, table.len());
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inverses[a] = row.iter().position(|&x| x == 0).expect("inverse exists") as u32;
        }
        let id = content_id(order, &table);
        let mut group = Group {
            order,
            table,
            inverses,
            generators: Vec::new(),
            backend,
            limits,
            id,
            cache: GroupCache::default(),
        };
        group.generators = match generators {
            Some(g) => g,
            None => group.greedy_generators(&ElementSet::full(order)),
        };
        group
    }

    pub fn trivial_group(limits: Limits) -> Group {
        Group::assemble(vec![0], None, Backend::Table, limits)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    /// The raw row-major Cayley table.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.inv(g), self.mul(x, g))
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, x: usize, mut k: usize) -> usize {
        let (mut acc, mut base) = (0, x);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_orders(&self) -> &[u32] {
        self.cache.element_orders.get_or_init(|| {
            (0..self.order)
                .map(|x| {
                    let (mut y, mut k) = (x, 1u32);
                    while y != 0 {
                        y = self.mul(y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.element_orders()[x] as usize
    }

    /// Printable form: cycle notation for permutation groups, a generator word otherwise.
    pub fn describe_element(&self, x: usize) -> String {
        match &self.backend {
            Backend::Permutation { images, .. } => format_cycles(&images[x]),
            Backend::Table => {
                let word = self.word_for(x);
                if word.is_empty() {
                    "e".to_string()
                } else {
                    word.iter()
                        .map(|i| format!("g{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            }
        }
    }

    /// Shortest word in the generators (by breadth-first search) for `x`.
    pub fn word_for(&self, x: usize) -> Vec<usize> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.order];
        let mut seen = ElementSet::empty(self.order);
        seen.insert(0);
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() && !seen.contains(x) {
            let y = queue[i];
            i += 1;
            for (gi, &g) in self.generators.iter().enumerate() {
                let z = self.mul(y, g);
                if seen.insert(z) {
                    parent[z] = Some((y, gi));
                    queue.push(z);
                }
            }
        }
        let mut word = Vec::new();
        let mut cur = x;
        while let Some((prev, gi)) = parent[cur] {
            word.push(gi);
            cur = prev;
        }
        word.reverse();
        word
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, &a)| {
            self.generators[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Exhaustive check of the group axioms.
    pub fn check_axioms(&self) -> bool {
        let n = self.order;
        let identity = (0..n).all(|x| self.mul(0, x) == x && self.mul(x, 0) == x);
        let inverse = (0..n).all(|x| self.mul(x, self.inv(x)) == 0 && self.mul(self.inv(x), x) == 0);
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        });
        identity && inverse && assoc
    }

    /// The prime divisors of the order.
    pub fn primes(&self) -> Vec<u64> {
        primes::prime_divisors(self.order as u64)
    }

    // ---- subgroups -------------------------------------------------------

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_members(self.id, ElementSet::from_indices(self.order, [0]))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(self.id, ElementSet::full(self.order))
    }

    /// Closes `start` under right multiplication by `gens`.
    pub(crate) fn close_set(&self, mut set: ElementSet, gens: &[usize]) -> ElementSet {
        set.insert(0);
        let mut queue: Vec<usize> = set.iter().collect();
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Smallest subgroup containing `seed`.
    pub fn closure(&self, seed: &[usize]) -> Result<Subgroup> {
        for &x in seed {
            self.check_index(x)?;
        }
        let gens: Vec<usize> = seed.iter().copied().filter(|&x| x != 0).collect();
        let start = ElementSet::from_indices(self.order, gens.iter().copied());
        Ok(Subgroup::from_members(self.id, self.close_set(start, &gens)))
    }

    /// Smallest subgroup containing `h` and the extra elements.
    pub fn extend(&self, h: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut gens = self.greedy_generators(&h.members);
        gens.extend(extra.iter().copied().filter(|&x| !h.contains(x)));
        Subgroup::from_members(self.id, self.close_set(h.members.clone(), &gens))
    }

    /// Validates that a set is a subgroup.
    pub fn subgroup_from_set(&self, set: ElementSet) -> Result<Subgroup> {
        if set.universe() != self.order || !set.contains(0) {
            return Err(Error::NotASubgroup);
        }
        let gens = self.greedy_generators(&set);
        let closed = self.close_set(set.clone(), &gens);
        if closed == set {
            Ok(Subgroup::from_members(self.id, set))
        } else {
            Err(Error::NotASubgroup)
        }
    }

    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<Subgroup> {
        for &x in elements {
            self.check_index(x)?;
        }
        self.subgroup_from_set(ElementSet::from_indices(self.order, elements.iter().copied()))
    }

    /// A generating set for the subgroup spanned by `set`, chosen greedily in
    /// increasing index order.
    pub fn greedy_generators(&self, set: &ElementSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = ElementSet::from_indices(self.order, [0]);
        for x in set.iter() {
            if !current.contains(x) {
                gens.push(x);
                current = self.close_set(current, &gens);
            }
        }
        gens
    }

    pub fn subgroup_generators(&self, h: &Subgroup) -> Vec<usize> {
        self.greedy_generators(&h.members)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if a.is_subgroup_of(b) {
            return b.clone();
        }
        if b.is_subgroup_of(a) {
            return a.clone();
        }
        let mut gens = self.greedy_generators(&a.members);
        gens.extend(self.greedy_generators(&b.members));
        Subgroup::from_members(self.id, self.close_set(a.members.clone(), &gens))
    }

    /// Set product `AB`, valid as a subgroup when one factor normalizes the other.
    pub fn product_normal(&self, a: &Subgroup, n: &Subgroup) -> Subgroup {
        let mut set = a.members.clone();
        for x in a.members.iter() {
            for y in n.members.iter() {
                set.insert(self.mul(x, y));
            }
        }
        Subgroup::from_members(self.id, set)
    }

    pub fn centralizer_of_elements(&self, xs: &[usize]) -> Subgroup {
        let set = ElementSet::from_indices(
            self.order,
            (0..self.order).filter(|&g| xs.iter().all(|&x| self.mul(g, x) == self.mul(x, g))),
        );
        Subgroup::from_members(self.id, set)
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        self.centralizer_of_elements(&self.greedy_generators(&s.members))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of_elements(&self.generators)
    }

    /// `C_G(L/K)`: elements whose conjugation fixes every coset of `K` in `L`.
    pub fn centralizer_of_factor(&self, l: &Subgroup, k: &Subgroup) -> Subgroup {
        let gens = self.greedy_generators(&l.members);
        let set = ElementSet::from_indices(
            self.order,
            (0..self.order).filter(|&g| gens.iter().all(|&x| k.contains(self.commutator(x, g)))),
        );
        Subgroup::from_members(self.id, set)
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let gens = self.greedy_generators(&s.members);
        let set = ElementSet::from_indices(
            self.order,
            (0..self.order).filter(|&g| gens.iter().all(|&x| s.contains(self.conj(x, g)))),
        );
        Subgroup::from_members(self.id, set)
    }

    /// Normalizer of an arbitrary element set, which must be a subgroup.
    pub fn normalizer_checked(&self, set: &ElementSet) -> Result<Subgroup> {
        let s = self.subgroup_from_set(set.clone())?;
        Ok(self.normalizer(&s))
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        let gens = self.greedy_generators(&s.members);
        self.generators
            .iter()
            .all(|&g| gens.iter().all(|&x| s.contains(self.conj(x, g))))
    }

    /// Normality of `s` inside an overgroup `within`.
    pub fn is_normal_in(&self, s: &Subgroup, within: &Subgroup) -> bool {
        let gens = self.greedy_generators(&s.members);
        let wgens = self.greedy_generators(&within.members);
        s.is_subgroup_of(within)
            && wgens
                .iter()
                .all(|&g| gens.iter().all(|&x| s.contains(self.conj(x, g))))
    }

    /// Smallest subgroup of `within` containing `s` and normal in `within`.
    pub fn normal_closure_in(&self, s: &Subgroup, within: &Subgroup) -> Subgroup {
        let gens = self.greedy_generators(&s.members);
        let wgens = self.greedy_generators(&within.members);
        let mut seeds = ElementSet::empty(self.order);
        for &x in &gens {
            // conjugates under the whole of `within`
            for g in within.members.iter() {
                seeds.insert(self.conj(x, g));
            }
        }
        let _ = wgens;
        let seed_list: Vec<usize> = seeds.iter().filter(|&x| x != 0).collect();
        Subgroup::from_members(self.id, self.close_set(seeds, &seed_list))
    }

    pub fn normal_closure(&self, s: &Subgroup) -> Subgroup {
        self.normal_closure_in(s, &self.whole())
    }

    /// Largest normal subgroup of `G` contained in `s`.
    pub fn core(&self, s: &Subgroup) -> Subgroup {
        let classes = self.conjugacy_classes();
        let mut set = ElementSet::empty(self.order);
        for class in &classes.classes {
            if class.iter().all(|&x| s.contains(x as usize)) {
                for &x in class {
                    set.insert(x as usize);
                }
            }
        }
        Subgroup::from_members(self.id, set)
    }

    pub fn conjugate_subgroup(&self, s: &Subgroup, g: usize) -> Subgroup {
        let set = ElementSet::from_indices(self.order, s.members.iter().map(|x| self.conj(x, g)));
        Subgroup::from_members(self.id, set)
    }

    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seeds = ElementSet::empty(self.order);
        for x in a.members.iter() {
            for y in b.members.iter() {
                seeds.insert(self.commutator(x, y));
            }
        }
        let gens = self.greedy_generators(&seeds);
        Subgroup::from_members(self.id, self.close_set(seeds, &gens))
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let w = self.whole();
        self.commutator_subgroup(&w, &w)
    }

    /// `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ …` up to and including the first repeated term.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// Conjugacy classes of elements.
    pub fn conjugacy_classes(&self) -> &ElementClasses {
        self.cache.element_classes.get_or_init(|| {
            let mut class_of = vec![u32::MAX; self.order];
            let mut classes: Vec<Vec<u32>> = Vec::new();
            for x in 0..self.order {
                if class_of[x] != u32::MAX {
                    continue;
                }
                let mut members = ElementSet::empty(self.order);
                for g in 0..self.order {
                    members.insert(self.conj(x, g));
                }
                let id = classes.len() as u32;
                let list: Vec<u32> = members.iter().map(|y| y as u32).collect();
                for &y in &list {
                    class_of[y as usize] = id;
                }
                classes.push(list);
            }
            ElementClasses { classes, class_of }
        })
    }

    /// All normal subgroups in canonical order, computed as joins of normal
    /// closures of single elements (no lattice needed).
    pub fn normal_subgroups(&self) -> &[Subgroup] {
        self.cache.normal_subgroups.get_or_init(|| {
            let classes = self.conjugacy_classes();
            let mut atoms: Vec<Subgroup> = Vec::new();
            for class in &classes.classes {
                if class[0] == 0 {
                    continue;
                }
                let seeds = ElementSet::from_indices(self.order, class.iter().map(|&x| x as usize));
                let gens: Vec<usize> = seeds.iter().collect();
                let s = Subgroup::from_members(self.id, self.close_set(seeds, &gens));
                if !atoms.contains(&s) {
                    atoms.push(s);
                }
            }
            let mut found: Vec<Subgroup> = vec![self.trivial()];
            let mut index: std::collections::HashSet<ElementSet> =
                std::iter::once(self.trivial().members).collect();
            let mut i = 0;
            while i < found.len() {
                let n = found[i].clone();
                i += 1;
                for a in &atoms {
                    if a.is_subgroup_of(&n) {
                        continue;
                    }
                    let j = self.product_normal(&n, a);
                    if index.insert(j.members.clone()) {
                        found.push(j);
                    }
                }
            }
            found.sort();
            found
        })
    }

    // ---- derived groups --------------------------------------------------

    /// `G/N` with its projection; memoised per normal subgroup.
    pub fn quotient(&self, n: &Subgroup) -> Result<Arc<Quotient>> {
        if let Some(q) = self.cache.quotients.lock().unwrap().get(&n.members) {
            return Ok(q.clone());
        }
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for k in n.members.iter() {
                coset_of[self.mul(x, k)] = c;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset_of[self.mul(a, b)];
            }
        }
        let gens: Vec<usize> = {
            let mut g: Vec<usize> = self
                .generators
                .iter()
                .map(|&x| coset_of[x] as usize)
                .filter(|&c| c != 0)
                .collect();
            g.dedup();
            let mut uniq = Vec::new();
            for c in g {
                if !uniq.contains(&c) {
                    uniq.push(c);
                }
            }
            uniq
        };
        let group = Arc::new(Group::assemble(table, Some(gens), Backend::Table, self.limits));
        let q = Arc::new(Quotient {
            projection: Homomorphism {
                source: self.id,
                target: group.id(),
                image_of: coset_of,
            },
            group,
            kernel: n.clone(),
        });
        let q = self
            .cache
            .quotients
            .lock()
            .unwrap()
            .entry(n.members.clone())
            .or_insert(q)
            .clone();
        Ok(q)
    }

    /// A subgroup rebuilt as a standalone group; memoised per subgroup.
    pub fn subgroup_group(&self, h: &Subgroup) -> Arc<Embedded> {
        if let Some(e) = self.cache.embeddings.lock().unwrap().get(&h.members) {
            return e.clone();
        }
        let to_parent: Vec<u32> = h.members.iter().map(|x| x as u32).collect();
        let mut from_parent = vec![u32::MAX; self.order];
        for (i, &x) in to_parent.iter().enumerate() {
            from_parent[x as usize] = i as u32;
        }
        let m = to_parent.len();
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] =
                    from_parent[self.mul(to_parent[i] as usize, to_parent[j] as usize)];
            }
        }
        let group = Arc::new(Group::assemble(table, None, Backend::Table, self.limits));
        let e = Arc::new(Embedded {
            group,
            subgroup: h.clone(),
            to_parent,
            from_parent,
        });
        self.cache
            .embeddings
            .lock()
            .unwrap()
            .entry(h.members.clone())
            .or_insert(e)
            .clone()
    }

    /// `G1 × G2` on pairs `(a, b) ↦ a·|G2| + b`.
    pub fn direct_product(g1: &Group, g2: &Group) -> Result<Group> {
        let (n1, n2) = (g1.order, g2.order);
        let cap = g1.limits.order_cap;
        if n1 * n2 > cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        let n = n1 * n2;
        let mut table = vec![0u32; n * n];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                for a2 in 0..n1 {
                    for b2 in 0..n2 {
                        table[(a1 * n2 + b1) * n + (a2 * n2 + b2)] =
                            (g1.mul(a1, a2) * n2 + g2.mul(b1, b2)) as u32;
                    }
                }
            }
        }
        let mut gens: Vec<usize> = g1.generators.iter().map(|&a| a * n2).collect();
        gens.extend(g2.generators.iter().copied());
        Ok(Group::assemble(table, Some(gens), Backend::Table, g1.limits))
    }

    /// Extends generator images to a homomorphism into `target`, failing if
    /// the assignment is inconsistent.
    pub fn extend_homomorphism(&self, target: &Group, images: &[usize]) -> Result<Homomorphism> {
        if images.len() != self.generators.len() {
            return Err(Error::InvalidHomomorphism(format!(
                "expected {} generator images, got {}",
                self.generators.len(),
                images.len()
            )));
        }
        for &y in images {
            target.check_index(y)?;
        }
        let mut image_of = vec![u32::MAX; self.order];
        image_of[0] = 0;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (gi, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                let val = target.mul(image_of[x] as usize, images[gi]) as u32;
                if image_of[y] == u32::MAX {
                    image_of[y] = val;
                    queue.push(y);
                } else if image_of[y] != val {
                    return Err(Error::InvalidHomomorphism(
                        "generator images do not respect the relations".into(),
                    ));
                }
            }
        }
        Ok(Homomorphism {
            source: self.id,
            target: target.id,
            image_of,
        })
    }

    /// `N ⋊ H` on pairs `(n, h) ↦ n·|H| + h` with product
    /// `(n1, h1)(n2, h2) = (n1·φ_{h1}(n2), h1 h2)`.
    ///
    /// `action[h]` is the automorphism `φ_h` of `N` as an image list. Each image
    /// must be an automorphism and `φ_{hs} = φ_h ∘ φ_s` must hold for every
    /// generator `s` of `H`.
    pub fn semidirect_product(n: &Group, h: &Group, action: &[Vec<u32>]) -> Result<Group> {
        let (nn, nh) = (n.order, h.order);
        let cap = n.limits.order_cap;
        if nn * nh > cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        if action.len() != nh {
            return Err(Error::InvalidAction(format!(
                "expected {nh} automorphisms, got {}",
                action.len()
            )));
        }
        for (hi, phi) in action.iter().enumerate() {
            validate_perm(nn, phi).map_err(|_| Error::InvalidAction(format!("image of {hi} is not a bijection")))?;
            if phi[0] != 0 {
                return Err(Error::InvalidAction(format!("image of {hi} moves the identity")));
            }
            for x in 0..nn {
                for &s in &n.generators {
                    if phi[n.mul(x, s)] as usize != n.mul(phi[x] as usize, phi[s] as usize) {
                        return Err(Error::InvalidAction(format!(
                            "image of {hi} is not an automorphism"
                        )));
                    }
                }
            }
        }
        if action[0].iter().enumerate().any(|(i, &x)| x as usize != i) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for x in 0..nh {
            for &s in &h.generators {
                let lhs = &action[h.mul(x, s)];
                let composed: Vec<u32> = (0..nn)
                    .map(|y| action[x][action[s][y] as usize])
                    .collect();
                if lhs != &composed {
                    return Err(Error::InvalidAction("action is not a homomorphism".into()));
                }
            }
        }
        let total = nn * nh;
        let mut table = vec![0u32; total * total];
        for n1 in 0..nn {
            for h1 in 0..nh {
                let phi = &action[h1];
                for n2 in 0..nn {
                    let nprod = n.mul(n1, phi[n2] as usize);
                    for h2 in 0..nh {
                        table[(n1 * nh + h1) * total + (n2 * nh + h2)] =
                            (nprod * nh + h.mul(h1, h2)) as u32;
                    }
                }
            }
        }
        let mut gens: Vec<usize> = n.generators.iter().map(|&a| a * nh).collect();
        gens.extend(h.generators.iter().copied());
        Ok(Group::assemble(table, Some(gens), Backend::Table, n.limits))
    }

    /// Extends the automorphisms given for the generators of `H` to a full
    /// action table suitable for [`Group::semidirect_product`].
    pub fn extend_action(n: &Group, h: &Group, generator_auts: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
        if generator_auts.len() != h.generators.len() {
            return Err(Error::InvalidAction(format!(
                "expected {} generator automorphisms, got {}",
                h.generators.len(),
                generator_auts.len()
            )));
        }
        let nn = n.order;
        let identity: Vec<u32> = (0..nn as u32).collect();
        let mut action: Vec<Option<Vec<u32>>> = vec![None; h.order];
        action[0] = Some(identity);
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (gi, &s) in h.generators.iter().enumerate() {
                let y = h.mul(x, s);
                let phi_x = action[x].as_ref().unwrap();
                let phi_s = &generator_auts[gi];
                if phi_s.len() != nn {
                    return Err(Error::InvalidAction("automorphism has wrong length".into()));
                }
                let composed: Vec<u32> = (0..nn).map(|z| phi_x[phi_s[z] as usize]).collect();
                match &action[y] {
                    None => {
                        action[y] = Some(composed);
                        queue.push(y);
                    }
                    Some(existing) if *existing != composed => {
                        return Err(Error::InvalidAction(
                            "generator automorphisms do not respect the relations of H".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(action.into_iter().map(|a| a.unwrap()).collect())
    }

    /// Recognises the quaternion group of order 8.
    pub fn is_quaternion_q8(&self) -> bool {
        self.order == 8
            && !self.is_abelian()
            && self.element_orders().iter().filter(|&&o| o == 2).count() == 1
    }
}

/// Conjugacy classes of elements: `classes[i]` sorted, `class_of[x]` its class.
#[derive(Debug)]
pub struct ElementClasses {
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

/// Shared handle type used throughout the crate.
pub type GroupRef = Arc<Group>;

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(degree: usize, cycles: &[&[u32]]) -> Vec<u32> {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        for c in cycles {
            for i in 0..c.len() {
                img[(c[i] - 1) as usize] = c[(i + 1) % c.len()] - 1;
            }
        }
        img
    }

    fn s3() -> Group {
        Group::from_permutations(3, &[perm(3, &[&[1, 2]]), perm(3, &[&[1, 2, 3]])], Limits::default()).unwrap()
    }

    /// Naive closure: all products of words up to a length bound.
    fn words_oracle(degree: usize, gens: &[Vec<u32>], max_len: usize) -> usize {
        let mut all: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
        let mut layer: Vec<Vec<u32>> = vec![(0..degree as u32).collect()];
        all.insert(layer[0].clone());
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in gens {
                    let p = compose_perm(w, g);
                    if all.insert(p.clone()) {
                        next.push(p);
                    }
                }
            }
            layer = next;
        }
        all.len()
    }

    #[test]
    fn permutation_closure_orders() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(words_oracle(3, &[perm(3, &[&[1, 2]]), perm(3, &[&[1, 2, 3]])], 6), 6);
        let d8_gens = [perm(4, &[&[1, 2, 3, 4]]), perm(4, &[&[1, 3]])];
        let d8 = Group::from_permutations(4, &d8_gens, Limits::default()).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(words_oracle(4, &d8_gens, 8), 8);
        let trivial = Group::from_permutations(1, &[], Limits::default()).unwrap();
        assert_eq!(trivial.order(), 1);
        assert!(g.check_axioms() && d8.check_axioms());
    }

    #[test]
    fn construction_errors() {
        let bad = Group::from_permutations(3, &[vec![0, 0, 1]], Limits::default());
        assert!(matches!(bad, Err(Error::InvalidPermutation(_))));
        let small = Limits {
            order_cap: 5,
            ..Limits::default()
        };
        let capped = Group::from_permutations(3, &[perm(3, &[&[1, 2]]), perm(3, &[&[1, 2, 3]])], small);
        assert_eq!(capped.unwrap_err(), Error::OrderCapExceeded { cap: 5 });
    }

    #[test]
    fn indexing_is_deterministic() {
        let a = s3();
        let b = s3();
        assert_eq!(a.id(), b.id());
        assert_eq!(a.table(), b.table());
    }

    #[test]
    fn closure_and_normalizers() {
        let g = s3();
        assert!(g.closure(&[]).unwrap().is_trivial());
        let three_cycle = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(g.closure(&[three_cycle]).unwrap().order(), 3);
        let all: Vec<usize> = (0..6).collect();
        assert!(g.closure(&all).unwrap().is_whole());
        let inv = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let h = g.closure(&[inv]).unwrap();
        assert_eq!(g.normalizer(&h), h);
        assert!(g.center().is_trivial());
        assert_eq!(g.centralizer(&g.whole()), g.center());
        assert_eq!(g.derived_subgroup().order(), 3);
        assert!(g.closure(&[7]).is_err());
        let not_closed = ElementSet::from_indices(6, [0, inv, three_cycle]);
        assert_eq!(g.normalizer_checked(&not_closed), Err(Error::NotASubgroup));
    }

    #[test]
    fn quotients() {
        let g = s3();
        let n = g.derived_subgroup();
        let q = g.quotient(&n).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(q.projection.verify(&g, &q.group));
        assert_eq!(q.preimage(&q.group.trivial()), n);
        assert_eq!(g.quotient(&g.whole()).unwrap().group.order(), 1);
        let copy = g.quotient(&g.trivial()).unwrap();
        assert_eq!(copy.group.table(), g.table());
        let inv = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let h = g.closure(&[inv]).unwrap();
        assert_eq!(g.quotient(&h).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn semidirect_inversion_action() {
        let c3 = Group::from_permutations(3, &[perm(3, &[&[1, 2, 3]])], Limits::default()).unwrap();
        let c2 = Group::from_permutations(2, &[perm(2, &[&[1, 2]])], Limits::default()).unwrap();
        let inversion: Vec<u32> = (0..3).map(|x| c3.inv(x) as u32).collect();
        let action = Group::extend_action(&c3, &c2, &[inversion]).unwrap();
        let g = Group::semidirect_product(&c3, &c2, &action).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert!(g.check_axioms());

        let trivial = Group::extend_action(&c3, &c2, &[(0..3).collect()]).unwrap();
        let sd = Group::semidirect_product(&c3, &c2, &trivial).unwrap();
        let dp = Group::direct_product(&c3, &c2).unwrap();
        assert_eq!(sd.table(), dp.table());

        let not_aut = vec![0, 0, 1];
        assert!(matches!(
            Group::semidirect_product(&c3, &c2, &[vec![0, 1, 2], not_aut]),
            Err(Error::InvalidAction(_))
        ));
        // an order-2 generator cannot act by an automorphism of order 3 on C3... use C3 acting on C3 by inversion
        let bad = Group::extend_action(&c3, &c3, &[(0..3).map(|x| c3.inv(x) as u32).collect()]);
        assert!(matches!(bad, Err(Error::InvalidAction(_))));
    }

    #[test]
    fn q8_recognition() {
        let d8 = Group::from_permutations(4, &[perm(4, &[&[1, 2, 3, 4]]), perm(4, &[&[1, 3]])], Limits::default()).unwrap();
        assert!(!d8.is_quaternion_q8());
        let q8 = Group::from_permutations(
            8,
            &[perm(8, &[&[1, 2, 4, 7], &[3, 6, 8, 5]]), perm(8, &[&[1, 3, 4, 8], &[2, 5, 7, 6]])],
            Limits::default(),
        )
        .unwrap();
        assert_eq!(q8.order(), 8);
        assert!(q8.is_quaternion_q8());
        let c8 = Group::from_permutations(8, &[perm(8, &[&[1, 2, 3, 4, 5, 6, 7, 8]])], Limits::default()).unwrap();
        assert!(!c8.is_quaternion_q8());
    }

    #[test]
    fn table_input_is_relabelled() {
        // C2 with identity at index 1
        let g = Group::from_table(2, &[1, 0, 0, 1], Limits::default()).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
        assert!(Group::from_table(2, &[0, 0, 1, 1], Limits::default()).is_err());
        // Latin square with identity that is not associative (order 5 loop)
        let loop5 = [
            0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0,
        ];
        assert!(Group::from_table(5, &loop5, Limits::default()).is_err());
    }

    #[test]
    fn cycle_format() {
        assert_eq!(format_cycles(&perm(5, &[&[1, 2, 3], &[4, 5]])), "(1 2 3)(4 5)");
        assert_eq!(format_cycles(&[0, 1]), "()");
    }
}
