//! Prime factorisation helpers and the [`PrimeSet`] type.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Prime factorisation of `n` as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The set of primes dividing `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// True if `n` is a power of a single prime (`n > 1`).
pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// Largest divisor of `n` whose prime divisors all lie in `set`.
pub fn pi_part(n: u64, set: &PrimeSet) -> u64 {
    factorize(n)
        .into_iter()
        .filter(|(p, _)| set.contains(*p))
        .map(|(p, e)| p.pow(e))
        .product()
}

/// A set of primes: an explicit finite set, the complement of one, or all primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrimeSet {
    Explicit(BTreeSet<u64>),
    Complement(BTreeSet<u64>),
    All,
}

impl PrimeSet {
    pub fn explicit<I: IntoIterator<Item = u64>>(primes: I) -> Self {
        PrimeSet::Explicit(primes.into_iter().collect())
    }

    pub fn single(p: u64) -> Self {
        Self::explicit([p])
    }

    pub fn complement_of<I: IntoIterator<Item = u64>>(primes: I) -> Self {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        if set.is_empty() {
            PrimeSet::All
        } else {
            PrimeSet::Complement(set)
        }
    }

    pub fn empty() -> Self {
        PrimeSet::Explicit(BTreeSet::new())
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::Explicit(s) => s.contains(&p),
            PrimeSet::Complement(s) => !s.contains(&p),
            PrimeSet::All => true,
        }
    }

    /// π′, normalised so that the complement of a complement is explicit.
    pub fn complement(&self) -> Self {
        match self {
            PrimeSet::Explicit(s) => Self::complement_of(s.iter().copied()),
            PrimeSet::Complement(s) => PrimeSet::Explicit(s.clone()),
            PrimeSet::All => Self::empty(),
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, PrimeSet::All)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Explicit(s) if s.is_empty())
    }

    /// `Some(n)` when the set is finite.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            PrimeSet::Explicit(s) => Some(s.len()),
            _ => None,
        }
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        use PrimeSet::*;
        match (self, other) {
            (_, All) => true,
            (Explicit(a), _) => a.iter().all(|&p| other.contains(p)),
            (Complement(_), Explicit(_)) | (All, Explicit(_)) => false,
            // every prime outside `a` is outside `b`, i.e. b ⊆ a
            (Complement(a), Complement(b)) => b.is_subset(a),
            (All, Complement(b)) => b.is_empty(),
        }
    }

    pub fn intersects(&self, other: &PrimeSet) -> bool {
        use PrimeSet::*;
        match (self, other) {
            (Explicit(a), _) => a.iter().any(|&p| other.contains(p)),
            (_, Explicit(b)) => b.iter().any(|&p| self.contains(p)),
            // two cofinite sets always meet
            _ => true,
        }
    }

    /// True if every prime divisor of `n` lies in the set.
    pub fn divides_only(&self, n: u64) -> bool {
        prime_divisors(n).into_iter().all(|p| self.contains(p))
    }

    /// True if some prime divisor of `n` lies in the set.
    pub fn meets_order(&self, n: u64) -> bool {
        prime_divisors(n).into_iter().any(|p| self.contains(p))
    }

    pub fn parse(text: &str) -> crate::Result<Self> {
        crate::classes::parse_prime_set(text)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| {
            s.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            PrimeSet::Explicit(s) => write!(f, "{{{}}}", list(s)),
            PrimeSet::Complement(s) => write!(f, "{{{}}}'", list(s)),
            PrimeSet::All => f.write_str("P"),
        }
    }
}
