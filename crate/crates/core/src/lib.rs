//! Exact computational group theory for small finite groups.
//!
//! Permutation groups with stabilizer chains, structural subgroups
//! (Sylow, Fitting, layer, generalized Fitting), nilpotent subgroup
//! enumeration, exact character tables over cyclotomic fields, and the
//! character operations used to study irreducible induction.

pub mod catalog;
pub mod charops;
pub mod chartab;
pub mod error;
pub mod gfmat;
pub mod perm;
pub mod structure;

pub use error::{Error, Result};
pub use perm::{PermGroup, Permutation, SubgroupHandle};

/// Largest group order for which an element table is built.
pub const ELEMENT_TABLE_CAP: u64 = 1_000_000;
