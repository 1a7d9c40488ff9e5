//! Write-once caches attached to a [`Group`](crate::group::Group).
//!
//! Every entry is a pure function of the group table and its key, so racing
//! writers always store equal values and the first write wins.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bitset::ElementSet;
use crate::classes::ClassExpr;
use crate::error::Result;
use crate::group::{ElementClasses, Embedded, Quotient, Subgroup};
use crate::lattice::Lattice;
use crate::primes::PrimeSet;

/// Keys for memoised subgroup-valued computations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum MemoKey {
    Residual(ClassExpr),
    Radical(ClassExpr),
    Norm(ClassExpr, ClassExpr),
    NormInfinity(ClassExpr, ClassExpr),
    Hypercentre(PrimeSet, ClassExpr),
    IntX(ClassExpr),
}

#[derive(Default)]
pub(crate) struct GroupCache {
    pub element_orders: OnceLock<Vec<u32>>,
    pub element_classes: OnceLock<ElementClasses>,
    pub normal_subgroups: OnceLock<Vec<Subgroup>>,
    pub lattice: OnceLock<Result<Arc<Lattice>>>,
    pub quotients: Mutex<HashMap<ElementSet, Arc<Quotient>>>,
    pub embeddings: Mutex<HashMap<ElementSet, Arc<Embedded>>>,
    pub subgroups: Mutex<HashMap<MemoKey, Result<Subgroup>>>,
    pub membership: Mutex<HashMap<ClassExpr, Result<bool>>>,
    pub centrality: Mutex<HashMap<(ElementSet, ElementSet, ClassExpr), Result<bool>>>,
}

/// Looks up `key`, computing and storing it on a miss. The lock is not held
/// while computing, so `compute` may recurse into the same cache.
pub(crate) fn memoize<K, V, F>(map: &Mutex<HashMap<K, V>>, key: K, compute: F) -> V
where
    K: Eq + Hash + Clone,
    V: Clone,
    F: FnOnce() -> V,
{
    if let Some(v) = map.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = compute();
    map.lock().unwrap().entry(key).or_insert(v).clone()
}
