use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Result;
use crate::perm::{PermGroup, Permutation};

/// Conjugacy classes of a group with an element table.
///
/// Class `i` is represented by the least element (in the canonical order)
/// of the class; classes are numbered by their representatives, so class 0
/// is the identity class.
#[derive(Debug, Clone)]
pub struct ClassData {
    order: u64,
    reps: Vec<Permutation>,
    rep_index: Vec<usize>,
    sizes: Vec<u64>,
    class_of: Vec<u32>,
    element_orders: Vec<u64>,
    inverse_class: Vec<usize>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    powers: Vec<Vec<usize>>,
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) use prime_divisors as primes_of;

/// Classes by breadth-first conjugation orbits, seeded from unassigned
/// elements in canonical order. Cached on the group.
pub fn conjugacy_classes(g: &PermGroup) -> Result<Arc<ClassData>> {
    if let Some(c) = g.class_cache().get() {
        return Ok(c.clone());
    }
    let table = g.elements()?;
    let n = table.len();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut rep_index = Vec::new();
    let mut sizes = Vec::new();
    let gens = g.generators();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        class_of[start] = c;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let x = table.get(queue[head]);
            head += 1;
            for s in gens {
                let y = table.index_of(&x.conjugate_by(s)).expect("closed under conjugation");
                if class_of[y] == u32::MAX {
                    class_of[y] = c;
                    queue.push(y);
                }
            }
        }
        reps.push(table.get(start).clone());
        rep_index.push(start);
        sizes.push(queue.len() as u64);
    }
    let element_orders: Vec<u64> = reps.iter().map(|r| r.order()).collect();
    let class_of_perm = |x: &Permutation| class_of[table.index_of(x).unwrap()] as usize;
    let inverse_class = reps.iter().map(|r| class_of_perm(&r.inverse())).collect();
    let exponent = element_orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o));
    let power_maps = prime_divisors(exponent)
        .into_iter()
        .map(|p| (p, reps.iter().map(|r| class_of_perm(&r.pow(p as i64))).collect()))
        .collect();
    let powers = reps
        .iter()
        .map(|r| {
            let mut row = Vec::with_capacity(r.order() as usize);
            let mut x = g.identity();
            for _ in 0..r.order() {
                row.push(class_of_perm(&x));
                x = x.mul(r);
            }
            row
        })
        .collect();
    let data = Arc::new(ClassData {
        order: g.order(),
        reps,
        rep_index,
        sizes,
        class_of,
        element_orders,
        inverse_class,
        power_maps,
        powers,
    });
    Ok(g.class_cache().get_or_init(|| data).clone())
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn rep(&self, i: usize) -> &Permutation {
        &self.reps[i]
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    /// Element-table index of the representative of class `i`.
    pub fn rep_index(&self, i: usize) -> usize {
        self.rep_index[i]
    }

    pub fn size(&self, i: usize) -> u64 {
        self.sizes[i]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn centralizer_order(&self, i: usize) -> u64 {
        self.order / self.sizes[i]
    }

    /// Class of the element with table index `idx`.
    pub fn class_of_index(&self, idx: usize) -> usize {
        self.class_of[idx] as usize
    }

    pub fn class_map(&self) -> &[u32] {
        &self.class_of
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.element_orders[i]
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    /// Class of `rep_i^p` for a prime `p` dividing the exponent.
    pub fn power_map(&self, p: u64) -> Option<&[usize]> {
        self.power_maps.get(&p).map(|v| v.as_slice())
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    /// Class of `rep_i^k`.
    pub fn power_class(&self, i: usize, k: u64) -> usize {
        let row = &self.powers[i];
        row[(k % row.len() as u64) as usize]
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.element_orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o))
    }

    pub fn class_of_element(&self, g: &PermGroup, x: &Permutation) -> Option<usize> {
        let t = g.elements().ok()?;
        t.index_of(x).map(|i| self.class_of[i] as usize)
    }
}
