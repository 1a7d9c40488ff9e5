//! Finite groups given by permutations or Cayley tables, group classes built
//! from formations and Fitting classes, and the norm and hypercentre
//! constructions that relate them.
//!
//! Everything is exhaustive: subgroups are enumerated, normal subgroups
//! scanned, residuals intersected. The intended scale is groups of order up to
//! a few hundred.

pub mod bitset;
pub mod classes;
pub mod corpus;
pub mod harness;
pub mod error;
pub mod group;
pub mod lattice;
mod memo;
pub mod norm;
pub mod primes;
pub mod report;
pub mod series;

pub use bitset::ElementSet;
pub use classes::{Atom, ClassExpr, ClassFlags};
pub use error::{Error, Result};
pub use group::{Group, GroupId, GroupRef, Limits, Subgroup};
pub use lattice::Lattice;
pub use primes::PrimeSet;
pub use report::{Basis, Outcome, PropositionReport, Witness};
