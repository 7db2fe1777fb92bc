//! Brute-force reference computations on multiplication tables, shared by
//! the oracle and acceptance tests.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use charind::structure::{
    conjugacy_classes, fitting, max_nilpotent_order, maximal_nilpotent_classes, nilpotent_subgroup_classes,
    prime_divisors,
};
use charind::{PermGroup, SubgroupHandle};
use fixedbitset::FixedBitSet;

pub const ORACLE_MAX_ORDER: u64 = 2000;

/// Multiplication table over the sorted element list.
pub struct Table {
    n: usize,
    mul: Vec<u32>,
    order: Vec<u64>,
    gens: Vec<usize>,
}

impl Table {
    pub fn new(g: &PermGroup) -> Table {
        let t = g.elements().unwrap();
        let n = t.len();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = t.mul(i, j) as u32;
            }
        }
        let order = t.elements().iter().map(|x| x.order()).collect();
        let gens = g.generators().iter().map(|x| t.index_of(x).unwrap()).collect();
        Table { n, mul, order, gens }
    }

    fn m(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.n + j] as usize
    }

    fn inv(&self, i: usize) -> usize {
        (0..self.n).find(|&j| self.m(i, j) == 0).unwrap()
    }

    /// Subgroup generated by `gens`, as a bitset.
    fn closure(&self, gens: &[usize]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.n);
        set.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.m(x, s);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push_back(y);
                }
            }
        }
        set
    }

    fn conjugate(&self, set: &FixedBitSet, g: usize, g_inv: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n);
        for x in set.ones() {
            out.insert(self.m(self.m(g_inv, x), g));
        }
        out
    }
}

pub fn is_power_of(n: usize, p: u64) -> bool {
    let mut n = n as u64;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Every `p`-subgroup (including 1), each with a generating set.
pub fn p_subgroups(t: &Table, p: u64) -> Vec<(Vec<usize>, FixedBitSet)> {
    let pel: Vec<usize> = (1..t.n).filter(|&i| is_power_of(t.order[i] as usize, p)).collect();
    let trivial = t.closure(&[]);
    let mut seen: HashSet<FixedBitSet> = HashSet::from([trivial.clone()]);
    let mut all = vec![(Vec::new(), trivial)];
    let mut i = 0;
    while i < all.len() {
        let (gens, set) = all[i].clone();
        for &x in &pel {
            if set.contains(x) {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(x);
            let k = t.closure(&g2);
            if is_power_of(k.count_ones(..), p) && seen.insert(k.clone()) {
                all.push((g2, k));
            }
        }
        i += 1;
    }
    all
}

/// Every nilpotent subgroup: products of pairwise commuting `p`-subgroups,
/// one per prime.
pub fn nilpotent_subgroups(t: &Table, order: u64) -> Vec<FixedBitSet> {
    let mut acc: Vec<(Vec<usize>, FixedBitSet)> = vec![(Vec::new(), t.closure(&[]))];
    for p in prime_divisors(order) {
        let ps = p_subgroups(t, p);
        let mut next = Vec::new();
        for (ga, a) in &acc {
            for (gb, b) in &ps {
                let commute = ga.iter().all(|&x| gb.iter().all(|&y| t.m(x, y) == t.m(y, x)));
                if !commute {
                    continue;
                }
                let mut prod = FixedBitSet::with_capacity(t.n);
                for x in a.ones() {
                    for y in b.ones() {
                        prod.insert(t.m(x, y));
                    }
                }
                let gens = ga.iter().chain(gb).copied().collect();
                next.push((gens, prod));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(_, s)| s).collect()
}

/// Orbit index of each subgroup under conjugation, and the orbit count.
pub fn conjugacy_orbits(t: &Table, subs: &[FixedBitSet]) -> (Vec<usize>, usize) {
    let index: HashMap<&FixedBitSet, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let gi: Vec<(usize, usize)> = t.gens.iter().map(|&g| (g, t.inv(g))).collect();
    let mut orbit = vec![usize::MAX; subs.len()];
    let mut count = 0;
    for start in 0..subs.len() {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &(g, ginv) in &gi {
                let c = t.conjugate(&subs[i], g, ginv);
                let j = index[&c];
                if orbit[j] == usize::MAX {
                    orbit[j] = count;
                    queue.push_back(j);
                }
            }
        }
        count += 1;
    }
    (orbit, count)
}

pub fn bitset_of(g: &PermGroup, h: &SubgroupHandle) -> FixedBitSet {
    let t = g.elements().unwrap();
    let mut set = FixedBitSet::with_capacity(t.len());
    for x in h.group().chain_elements() {
        set.insert(t.index_of(&x).unwrap());
    }
    set
}

pub fn sorted_orders<I: IntoIterator<Item = u64>>(it: I) -> Vec<u64> {
    let mut v: Vec<u64> = it.into_iter().collect();
    v.sort_unstable();
    v
}

macro_rules! ensure_eq {
    ($a:expr, $b:expr, $($msg:tt)+) => {
        if $a != $b {
            return Err(format!("{}: {:?} != {:?}", format!($($msg)+), $a, $b));
        }
    };
}

/// `m(G)`, nilpotent classes and maximal nilpotent classes against every
/// nilpotent subgroup.
pub fn check_nilpotent(name: &str, g: &Arc<PermGroup>, t: &Table, subs: &[FixedBitSet]) -> Result<(), String> {
    let (orbit, classes) = conjugacy_orbits(t, subs);
    let err = |e: charind::Error| format!("{name}: {e}");

    let m = subs.iter().map(|s| s.count_ones(..) as u64).max().unwrap_or(1);
    let (engine_m, witness) = max_nilpotent_order(g, None).map_err(err)?;
    ensure_eq!(engine_m, m, "{name}: m");
    ensure_eq!(witness.order(), m, "{name}: witness order");

    let all = nilpotent_subgroup_classes(g).map_err(err)?;
    ensure_eq!(all.len(), classes, "{name}: nilpotent classes");
    let mut class_orders = vec![0u64; classes];
    for (i, s) in subs.iter().enumerate() {
        class_orders[orbit[i]] = s.count_ones(..) as u64;
    }
    ensure_eq!(
        sorted_orders(all.iter().map(|h| h.order())),
        sorted_orders(class_orders.iter().copied()),
        "{name}: nilpotent class orders"
    );
    let index: HashMap<&FixedBitSet, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let orbit_of = |h: &SubgroupHandle| index.get(&bitset_of(g, h)).map(|&i| orbit[i]);
    let mut hit: Vec<usize> = all.iter().filter_map(orbit_of).collect();
    hit.sort_unstable();
    hit.dedup();
    ensure_eq!(hit.len(), classes, "{name}: representatives are nilpotent and pairwise nonconjugate");

    let mut maximal_orbits: Vec<usize> = (0..subs.len())
        .filter(|&i| {
            let n = subs[i].count_ones(..);
            !subs.iter().any(|o| o.count_ones(..) > n && o.is_superset(&subs[i]))
        })
        .map(|i| orbit[i])
        .collect();
    maximal_orbits.sort_unstable();
    maximal_orbits.dedup();
    let engine_max = maximal_nilpotent_classes(g).map_err(err)?;
    ensure_eq!(engine_max.len(), maximal_orbits.len(), "{name}: maximal classes");
    let mut engine_orbits: Vec<usize> = engine_max.iter().filter_map(orbit_of).collect();
    engine_orbits.sort_unstable();
    engine_orbits.dedup();
    ensure_eq!(engine_orbits, maximal_orbits, "{name}: maximal class representatives");
    Ok(())
}

/// `F(G)` against the largest normal nilpotent subgroup.
pub fn check_fitting(name: &str, g: &Arc<PermGroup>, t: &Table, subs: &[FixedBitSet]) -> Result<(), String> {
    let gi: Vec<(usize, usize)> = t.gens.iter().map(|&x| (x, t.inv(x))).collect();
    let normal: Vec<&FixedBitSet> =
        subs.iter().filter(|s| gi.iter().all(|&(x, xi)| t.conjugate(s, x, xi) == **s)).collect();
    let largest = normal.iter().max_by_key(|s| s.count_ones(..)).ok_or(format!("{name}: no normal subgroups"))?;
    if !normal.iter().all(|s| largest.is_superset(s)) {
        return Err(format!("{name}: normal nilpotent subgroups have no maximum"));
    }
    let f = fitting(g).map_err(|e| format!("{name}: {e}"))?;
    ensure_eq!(&bitset_of(g, &f), *largest, "{name}: Fitting subgroup");
    Ok(())
}

/// Both subgroup oracles from one enumeration.
pub fn check_subgroups(name: &str, g: &Arc<PermGroup>) -> Result<(), String> {
    let t = Table::new(g);
    let subs = nilpotent_subgroups(&t, g.order());
    check_nilpotent(name, g, &t, &subs)?;
    check_fitting(name, g, &t, &subs)
}

/// Conjugacy classes against orbits of the generators acting by conjugation.
pub fn check_classes(name: &str, g: &Arc<PermGroup>) -> Result<(), String> {
    let err = |e: charind::Error| format!("{name}: {e}");
    let t = g.elements().map_err(err)?;
    let mut orbit = vec![usize::MAX; t.len()];
    let mut count = 0;
    for start in 0..t.len() {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for s in g.generators() {
                let j = t.index_of(&t.get(i).conjugate_by(s)).ok_or(format!("{name}: conjugate left the group"))?;
                if orbit[j] == usize::MAX {
                    orbit[j] = count;
                    queue.push_back(j);
                }
            }
        }
        count += 1;
    }
    let classes = conjugacy_classes(g).map_err(err)?;
    ensure_eq!(classes.len(), count, "{name}: class count");
    let map = classes.class_map();
    let mut pairing = vec![usize::MAX; count];
    for (i, &c) in map.iter().enumerate() {
        let c = c as usize;
        if pairing[orbit[i]] == usize::MAX {
            pairing[orbit[i]] = c;
        }
        ensure_eq!(pairing[orbit[i]], c, "{name}: element {i} splits an orbit");
    }
    for c in 0..classes.len() {
        let size = map.iter().filter(|&&x| x as usize == c).count() as u64;
        ensure_eq!(classes.size(c), size, "{name}: class {c} size");
        ensure_eq!(map[classes.rep_index(c)] as usize, c, "{name}: representative of class {c}");
        ensure_eq!(classes.size(c) * classes.centralizer_order(c), g.order(), "{name}: centralizer order");
    }
    Ok(())
}
