use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, SubgroupHandle};

use super::normal::is_normal;

/// `G/N` acting faithfully on the right cosets of a subgroup `U` with
/// `core_G(U) = N`.
///
/// `U` is the first of `N`, `N·G_(a)`, `N·G_(a,b)`, ... (pointwise stabilizers
/// of an increasing list of points) whose coset action has kernel exactly
/// `N`; when nothing smaller works this is `U = N`, the regular action of
/// `G/N`.
pub struct QuotientGroup {
    source: Arc<PermGroup>,
    kernel: SubgroupHandle,
    group: Arc<PermGroup>,
    coset_reps: Vec<Permutation>,
    coset_label: Vec<u32>,
    projection: OnceLock<Vec<u32>>,
    section: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for QuotientGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientGroup")
            .field("source_order", &self.source.order())
            .field("kernel_order", &self.kernel.order())
            .field("degree", &self.group.degree())
            .finish()
    }
}

// Points whose pointwise stabilizers are tried: one point per orbit, then
// the remaining base points.
fn candidate_points(g: &PermGroup) -> Vec<usize> {
    let d = g.degree();
    let mut seen = vec![false; d];
    let mut pts = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < orbit.len() {
            for s in g.generators() {
                let y = s.image(orbit[i]);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        if orbit.len() > 1 {
            pts.push(start);
        }
    }
    for b in g.base() {
        if !pts.contains(&b) {
            pts.push(b);
        }
    }
    pts
}

struct CosetAction {
    reps: Vec<Permutation>,
    label: Vec<u32>,
    image: PermGroup,
}

fn coset_action(g: &PermGroup, u: &PermGroup) -> Result<CosetAction> {
    let table = g.elements()?;
    let u_idx: Vec<usize> = u.chain_elements().iter().map(|x| table.index_of(x).expect("U lies in G")).collect();
    let mut label = vec![u32::MAX; table.len()];
    let mut reps = Vec::new();
    for start in 0..table.len() {
        if label[start] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        for &ui in &u_idx {
            label[table.mul(ui, start)] = c;
        }
        reps.push(table.get(start).clone());
    }
    let degree = reps.len();
    let gens = g.generators().iter().map(|x| act(table, &reps, &label, x)).collect::<Vec<_>>();
    let image = PermGroup::new(degree, gens)?;
    Ok(CosetAction { reps, label, image })
}

fn act(table: &crate::perm::ElementTable, reps: &[Permutation], label: &[u32], x: &Permutation) -> Permutation {
    let images = reps.iter().map(|r| label[table.index_of(&r.mul(x)).expect("closed")]).collect();
    Permutation::from_images(images).expect("coset action is a permutation")
}

/// `G/N` for a normal subgroup `N`.
pub fn quotient(g: &Arc<PermGroup>, n: &SubgroupHandle) -> Result<QuotientGroup> {
    if !is_normal(g, n.group()) {
        return Err(Error::NotNormal);
    }
    let target = g.order() / n.order();
    let table = g.elements()?;
    let pts = candidate_points(g);
    let mut chosen = None;
    if n.order() > 1 || target > 1 {
        for k in 1..=pts.len() {
            let fixed = &pts[..k];
            let stab = PermGroup::generated_by(
                g.degree(),
                table.elements().iter().filter(|x| fixed.iter().all(|&p| x.image(p) == p)),
            );
            let gens = n.generators().iter().chain(stab.generators()).cloned().collect();
            let u = PermGroup::new(g.degree(), gens)?;
            if u.order() == g.order() && target > 1 {
                continue;
            }
            if u.order() == n.order() {
                break;
            }
            let action = coset_action(g, &u)?;
            if action.image.order() == target {
                chosen = Some(action);
                break;
            }
        }
    }
    let action = match chosen {
        Some(a) => a,
        None => coset_action(g, n.group())?,
    };
    debug_assert_eq!(action.image.order(), target);
    Ok(QuotientGroup {
        source: g.clone(),
        kernel: n.clone(),
        group: Arc::new(action.image),
        coset_reps: action.reps,
        coset_label: action.label,
        projection: OnceLock::new(),
        section: OnceLock::new(),
    })
}

impl QuotientGroup {
    pub fn source(&self) -> &Arc<PermGroup> {
        &self.source
    }

    pub fn kernel(&self) -> &SubgroupHandle {
        &self.kernel
    }

    /// The quotient as a permutation group on the chosen cosets.
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn action_degree(&self) -> usize {
        self.coset_reps.len()
    }

    /// Image of a source element.
    pub fn project(&self, x: &Permutation) -> Result<Permutation> {
        let table = self.source.elements()?;
        if table.index_of(x).is_none() {
            return Err(Error::NotMember(x.to_string()));
        }
        Ok(act(table, &self.coset_reps, &self.coset_label, x))
    }

    /// For each source element index, the index of its image in the
    /// quotient's element table.
    pub fn projection_indices(&self) -> Result<&[u32]> {
        if let Some(p) = self.projection.get() {
            return Ok(p);
        }
        let table = self.source.elements()?;
        let qtable = self.group.elements()?;
        let n_idx: Vec<usize> =
            self.kernel.group().chain_elements().iter().map(|x| table.index_of(x).unwrap()).collect();
        let mut proj = vec![u32::MAX; table.len()];
        for start in 0..table.len() {
            if proj[start] != u32::MAX {
                continue;
            }
            let img = act(table, &self.coset_reps, &self.coset_label, table.get(start));
            let qi = qtable.index_of(&img).expect("image lies in the quotient") as u32;
            for &ni in &n_idx {
                proj[table.mul(ni, start)] = qi;
            }
        }
        Ok(self.projection.get_or_init(|| proj))
    }

    /// Least source element (canonical order) over each quotient element.
    pub fn section(&self, y: &Permutation) -> Result<Permutation> {
        let qtable = self.group.elements()?;
        let qi = qtable.index_of(y).ok_or_else(|| Error::NotMember(y.to_string()))?;
        if self.section.get().is_none() {
            let proj = self.projection_indices()?;
            let mut sec = vec![u32::MAX; qtable.len()];
            for (i, &q) in proj.iter().enumerate() {
                if sec[q as usize] == u32::MAX {
                    sec[q as usize] = i as u32;
                }
            }
            let _ = self.section.set(sec);
        }
        let table = self.source.elements()?;
        Ok(table.get(self.section.get().unwrap()[qi] as usize).clone())
    }

    /// Full preimage in the source of a subgroup of the quotient.
    pub fn preimage(&self, s: &PermGroup) -> Result<SubgroupHandle> {
        let mut gens: Vec<Permutation> = self.kernel.generators().to_vec();
        for y in s.generators() {
            gens.push(self.section(y)?);
        }
        SubgroupHandle::new(self.source.clone(), gens)
    }

    /// Image of a source subgroup.
    pub fn image_of(&self, s: &PermGroup) -> Result<Arc<PermGroup>> {
        let gens = s.generators().iter().map(|x| self.project(x)).collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(PermGroup::new(self.group.degree(), gens)?))
    }

    /// Source element indices lying in the preimage of a bitset over the
    /// quotient's element table.
    pub fn pull_back(&self, set: &FixedBitSet) -> Result<FixedBitSet> {
        let proj = self.projection_indices()?;
        let mut out = FixedBitSet::with_capacity(proj.len());
        for (i, &q) in proj.iter().enumerate() {
            if set.contains(q as usize) {
                out.insert(i);
            }
        }
        Ok(out)
    }
}
