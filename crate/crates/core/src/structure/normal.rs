use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Result;
use crate::perm::{normal_closure, PermGroup, SubgroupHandle};

use super::classes::{conjugacy_classes, ClassData};

/// All normal subgroups of a group, as unions of conjugacy classes.
#[derive(Debug, Clone)]
pub struct NormalLattice {
    group: Arc<PermGroup>,
    members: Vec<SubgroupHandle>,
    class_sets: Vec<Vec<usize>>,
    below: Vec<Vec<bool>>,
}

fn class_set(classes: &ClassData, n: &PermGroup) -> Vec<usize> {
    (0..classes.len()).filter(|&i| n.contains(classes.rep(i))).collect()
}

/// Normal closures of the cyclic subgroups generated by class
/// representatives, closed under pairwise joins.
pub fn normal_subgroups(g: &Arc<PermGroup>) -> Result<NormalLattice> {
    let classes = conjugacy_classes(g)?;
    let degree = g.degree();
    let mut found: BTreeMap<Vec<usize>, Arc<PermGroup>> = BTreeMap::new();
    let trivial = Arc::new(PermGroup::trivial(degree));
    found.insert(vec![0], trivial);
    for i in 1..classes.len() {
        let cyclic = PermGroup::new(degree, vec![classes.rep(i).clone()])?;
        let n = normal_closure(g, &cyclic);
        found.entry(class_set(&classes, &n)).or_insert_with(|| Arc::new(n));
    }
    loop {
        let current: Vec<Arc<PermGroup>> = found.values().cloned().collect();
        let mut added = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                if a.contains_group(b) || b.contains_group(a) {
                    continue;
                }
                let gens = a.generators().iter().chain(b.generators()).cloned().collect();
                let join = PermGroup::new(degree, gens)?;
                let key = class_set(&classes, &join);
                if let std::collections::btree_map::Entry::Vacant(e) = found.entry(key) {
                    e.insert(Arc::new(join));
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut entries: Vec<(Vec<usize>, Arc<PermGroup>)> = found.into_iter().collect();
    entries.sort_by(|a, b| a.1.order().cmp(&b.1.order()).then_with(|| a.0.cmp(&b.0)));
    let class_sets: Vec<Vec<usize>> = entries.iter().map(|e| e.0.clone()).collect();
    let members: Vec<SubgroupHandle> = entries
        .into_iter()
        .map(|(_, n)| {
            if n.order() == g.order() {
                SubgroupHandle::whole(g.clone())
            } else {
                SubgroupHandle::from_group(g.clone(), n).expect("normal closure lies in G")
            }
        })
        .collect();
    let below = class_sets
        .iter()
        .map(|a| class_sets.iter().map(|b| a.iter().all(|c| b.binary_search(c).is_ok())).collect())
        .collect();
    Ok(NormalLattice { group: g.clone(), members, class_sets, below })
}

impl NormalLattice {
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    /// Members ordered by order, then by class set.
    pub fn members(&self) -> &[SubgroupHandle] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sorted class indices making up member `i`.
    pub fn class_set(&self, i: usize) -> &[usize] {
        &self.class_sets[i]
    }

    /// Whether member `i` is contained in member `j`.
    pub fn is_below(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    /// Index of the member equal to `n`, if `n` is normal.
    pub fn position(&self, n: &PermGroup) -> Option<usize> {
        self.members.iter().position(|m| m.group().same_group(n))
    }

    /// Only 1 and G.
    pub fn is_simple(&self) -> bool {
        self.members.len() == 2
    }

    pub fn minimal_normal(&self) -> Vec<&SubgroupHandle> {
        (1..self.len())
            .filter(|&i| (1..self.len()).all(|j| j == i || !self.below[j][i]))
            .map(|i| &self.members[i])
            .collect()
    }
}

/// Whether `n` (a subgroup of `g`) is normalized by every generator of `g`.
pub fn is_normal(g: &PermGroup, n: &PermGroup) -> bool {
    g.contains_group(n) && n.generators().iter().all(|h| g.generators().iter().all(|x| n.contains(&h.conjugate_by(x))))
}
