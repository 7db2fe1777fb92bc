//! Permutations, permutation groups with stabilizer chains, and subgroup
//! operations by exhaustive scans of the element table.

mod chain;
mod group;
mod permutation;
mod subgroup;

pub use group::{ElementTable, PermGroup};
pub use permutation::Permutation;
pub use subgroup::{
    are_conjugate_subgroups, centralizer, centralizer_of, normal_closure, normalizer, subnormal_depth, SubgroupHandle,
};

/// Build a group from generators of a common degree.
pub fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> crate::Result<PermGroup> {
    PermGroup::new(degree, gens)
}

/// Membership by sifting through the stabilizer chain.
pub fn is_member(g: &PermGroup, x: &Permutation) -> bool {
    g.contains(x)
}

/// Element order.
pub fn order_of(x: &Permutation) -> u64 {
    x.order()
}
