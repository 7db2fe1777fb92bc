use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// A subgroup of a fixed parent group, generated by parent elements.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: Arc<PermGroup>,
    group: Arc<PermGroup>,
    members: Arc<OnceLock<FixedBitSet>>,
    fusion: Arc<OnceLock<Vec<usize>>>,
}

impl std::fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupHandle")
            .field("order", &self.group.order())
            .field("generators", &self.group.generators())
            .finish()
    }
}

impl SubgroupHandle {
    /// Subgroup generated by `gens`; each must be an element of `parent`.
    pub fn new(parent: Arc<PermGroup>, gens: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| !parent.contains(g)) {
            return Err(Error::NotMember(g.to_string()));
        }
        let group = PermGroup::new(parent.degree(), gens)?;
        Ok(Self::from_parts(parent, Arc::new(group)))
    }

    /// Wrap a group already known to lie in `parent`.
    pub fn from_group(parent: Arc<PermGroup>, group: Arc<PermGroup>) -> Result<Self> {
        if !parent.contains_group(&group) {
            return Err(Error::NotMember(format!("{group:?}")));
        }
        Ok(Self::from_parts(parent, group))
    }

    pub(crate) fn from_parts(parent: Arc<PermGroup>, group: Arc<PermGroup>) -> Self {
        debug_assert!(parent.order().is_multiple_of(group.order()));
        SubgroupHandle { parent, group, members: Arc::new(OnceLock::new()), fusion: Arc::new(OnceLock::new()) }
    }

    pub fn whole(parent: Arc<PermGroup>) -> Self {
        let group = parent.clone();
        Self::from_parts(parent, group)
    }

    pub fn trivial(parent: Arc<PermGroup>) -> Self {
        let group = Arc::new(PermGroup::trivial(parent.degree()));
        Self::from_parts(parent, group)
    }

    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.group.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.group.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.group.order() == self.parent.order()
    }

    /// Indices (in the parent's element table) of the subgroup elements.
    pub fn members(&self) -> Result<&FixedBitSet> {
        if let Some(m) = self.members.get() {
            return Ok(m);
        }
        let set = self.group.member_set_in(&self.parent)?;
        Ok(self.members.get_or_init(|| set))
    }

    /// Class fusion: for each class of the subgroup, the parent class
    /// containing it. Computed once and shared by clones.
    pub fn fusion(&self) -> Result<&[usize]> {
        if let Some(f) = self.fusion.get() {
            return Ok(f);
        }
        let own = crate::structure::conjugacy_classes(&self.group)?;
        let top = crate::structure::conjugacy_classes(&self.parent)?;
        let table = self.parent.elements()?;
        let map = own.reps().iter().map(|r| top.class_of_index(table.index_of(r).expect("subgroup element"))).collect();
        Ok(self.fusion.get_or_init(|| map))
    }

    pub fn same_as(&self, other: &SubgroupHandle) -> bool {
        self.group.same_group(&other.group)
    }

    pub fn is_contained_in(&self, other: &SubgroupHandle) -> bool {
        other.group.contains_group(&self.group)
    }

    /// `S^g = g^-1 S g`.
    pub fn conjugate(&self, g: &Permutation) -> SubgroupHandle {
        let gens = self.generators().iter().map(|s| s.conjugate_by(g)).collect();
        let group = PermGroup::new(self.parent.degree(), gens).unwrap();
        Self::from_parts(self.parent.clone(), Arc::new(group))
    }

    /// Rehome under a different parent that also contains it.
    pub fn with_parent(&self, parent: Arc<PermGroup>) -> Result<SubgroupHandle> {
        Self::from_group(parent, self.group.clone())
    }

    /// Generators in the cycle-list notation.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators().iter().map(|g| g.to_cycle_string()).collect()
    }
}

fn subgroup_from_scan<F>(parent: &Arc<PermGroup>, mut keep: F) -> Result<SubgroupHandle>
where
    F: FnMut(&Permutation) -> bool,
{
    let table = parent.elements()?;
    let group = PermGroup::generated_by(parent.degree(), table.elements().iter().filter(|g| keep(g)));
    Ok(SubgroupHandle::from_parts(parent.clone(), Arc::new(group)))
}

/// `C_G(S)` for a set of elements `S`, by a full scan of `G`.
pub fn centralizer(g: &Arc<PermGroup>, elements: &[Permutation]) -> Result<SubgroupHandle> {
    subgroup_from_scan(g, |x| elements.iter().all(|s| x.commutes_with(s)))
}

/// `C_G(S)` for a subgroup `S` (it suffices to centralize its generators).
pub fn centralizer_of(g: &Arc<PermGroup>, s: &PermGroup) -> Result<SubgroupHandle> {
    centralizer(g, s.generators())
}

/// `N_G(S) = {g : S^g = S}`, by a full scan of `G`.
pub fn normalizer(g: &Arc<PermGroup>, s: &PermGroup) -> Result<SubgroupHandle> {
    subgroup_from_scan(g, |x| s.generators().iter().all(|h| s.contains(&h.conjugate_by(x))))
}

/// Some `g` in `G` with `A^g = B`, scanning `G` in canonical order.
pub fn are_conjugate_subgroups(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<Option<Permutation>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if a.same_group(b) {
        return Ok(Some(g.identity()));
    }
    let table = g.elements()?;
    Ok(table.elements().iter().find(|x| a.generators().iter().all(|h| b.contains(&h.conjugate_by(x)))).cloned())
}

/// Smallest normal subgroup of `G` containing `S`.
pub fn normal_closure(g: &PermGroup, s: &PermGroup) -> PermGroup {
    let degree = g.degree();
    let mut gens: Vec<Permutation> = s.generators().to_vec();
    let mut current = PermGroup::new(degree, gens.clone()).unwrap();
    let mut i = 0;
    while i < gens.len() {
        let h = gens[i].clone();
        for x in g.generators() {
            let c = h.conjugate_by(x);
            if !current.contains(&c) {
                gens.push(c);
                current = PermGroup::new(degree, gens.clone()).unwrap();
            }
        }
        i += 1;
    }
    current
}

/// Length of the normal-closure series from `G` down to `S`, or `None` if it
/// stalls above `S` (then `S` is not subnormal).
pub fn subnormal_depth(g: &PermGroup, s: &PermGroup) -> Result<Option<usize>> {
    if !g.contains_group(s) {
        return Err(Error::NotMember(format!("{s:?}")));
    }
    let mut current = PermGroup::new(g.degree(), g.generators().to_vec())?;
    let mut depth = 0;
    loop {
        if current.order() == s.order() {
            return Ok(Some(depth));
        }
        let next = normal_closure(&current, s);
        if next.order() == current.order() {
            return Ok(None);
        }
        current = next;
        depth += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(d, s).unwrap()
    }

    #[test]
    fn centralizer_examples() {
        let s3 = Arc::new(PermGroup::symmetric(3));
        let c = centralizer_of(&s3, &s3).unwrap();
        assert_eq!(c.order(), 1);
        let s4 = Arc::new(PermGroup::symmetric(4));
        let c = centralizer(&s4, &[p(4, "[[0,1],[2,3]]")]).unwrap();
        // brute force over the 24 elements
        let x = p(4, "[[0,1],[2,3]]");
        let count = s4.elements().unwrap().elements().iter().filter(|g| g.commutes_with(&x)).count();
        assert_eq!(count, 8);
        assert_eq!(c.order(), 8);
    }

    #[test]
    fn normalizer_examples() {
        let a5 = Arc::new(PermGroup::alternating(5));
        let n = normalizer(&a5, &a5).unwrap();
        assert_eq!(n.order(), 60);
        let c5 = PermGroup::new(5, vec![p(5, "[[0,1,2,3,4]]")]).unwrap();
        assert_eq!(normalizer(&a5, &c5).unwrap().order(), 10);
    }

    #[test]
    fn conjugacy_examples() {
        let a5 = PermGroup::alternating(5);
        let c1 = PermGroup::new(5, vec![p(5, "[[0,1,2,3,4]]")]).unwrap();
        let c2 = PermGroup::new(5, vec![p(5, "[[0,2,1,3,4]]")]).unwrap();
        assert!(are_conjugate_subgroups(&a5, &c1, &c1).unwrap().unwrap().is_identity());
        let g = are_conjugate_subgroups(&a5, &c1, &c2).unwrap().unwrap();
        assert!(c2.contains(&c1.generators()[0].conjugate_by(&g)));
        let s4 = PermGroup::symmetric(4);
        let t = PermGroup::new(4, vec![p(4, "[[0,1]]")]).unwrap();
        let dt = PermGroup::new(4, vec![p(4, "[[0,1],[2,3]]")]).unwrap();
        assert!(are_conjugate_subgroups(&s4, &t, &dt).unwrap().is_none());
    }

    #[test]
    fn subnormal_depth_examples() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(subnormal_depth(&s4, &s4).unwrap(), Some(0));
        let v4 = PermGroup::new(4, vec![p(4, "[[0,1],[2,3]]"), p(4, "[[0,2],[1,3]]")]).unwrap();
        assert_eq!(subnormal_depth(&s4, &v4).unwrap(), Some(1));
        // centre of a Sylow 2-subgroup of Sym(4)
        let z = PermGroup::new(4, vec![p(4, "[[0,1],[2,3]]")]).unwrap();
        assert_eq!(subnormal_depth(&s4, &z).unwrap(), Some(2));
        let t = PermGroup::new(4, vec![p(4, "[[0,1]]")]).unwrap();
        assert_eq!(subnormal_depth(&s4, &t).unwrap(), None);
    }
}
