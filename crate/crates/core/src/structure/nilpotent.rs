//! Conjugacy classes of p-subgroups and of nilpotent subgroups.
//!
//! A nilpotent `Y` is the direct product of its Sylow subgroups, so for the
//! least prime `p` of a prime set `π`, `Y = Y_p × Y'` with `Y'` a nilpotent
//! `π∖{p}`-subgroup of `C(Y_p)`. Every search below runs over that
//! decomposition, with `Y_p` ranging over class representatives.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::perm::{are_conjugate_subgroups, centralizer_of, normalizer, PermGroup, Permutation, SubgroupHandle};

use super::classes::conjugacy_classes;
use super::fitting::{is_nilpotent, p_part, prime_divisors, sylow_subgroup};

fn is_p_element(x: &Permutation, p: u64) -> bool {
    let o = x.order();
    p_part(o, p) == o
}

fn pi_part(n: u64, primes: &[u64]) -> u64 {
    primes.iter().map(|&p| p_part(n, p)).product()
}

fn join(degree: usize, a: &PermGroup, b: &PermGroup) -> Arc<PermGroup> {
    let gens = a.generators().iter().chain(b.generators()).cloned().collect();
    Arc::new(PermGroup::new(degree, gens).unwrap())
}

/// Subgroups of a fixed context group, deduplicated up to conjugacy in it.
struct ClassRegistry<'a> {
    context: &'a Arc<PermGroup>,
    reps: Vec<(Arc<PermGroup>, Vec<u32>)>,
}

impl<'a> ClassRegistry<'a> {
    fn new(context: &'a Arc<PermGroup>) -> Self {
        ClassRegistry { context, reps: Vec::new() }
    }

    // Number of elements of `y` in each class of the context: a conjugacy
    // invariant that settles most comparisons without a scan.
    fn profile(&self, y: &PermGroup) -> Result<Vec<u32>> {
        let classes = conjugacy_classes(self.context)?;
        let table = self.context.elements()?;
        let mut out = vec![0u32; classes.len()];
        for x in y.chain_elements() {
            out[classes.class_of_index(table.index_of(&x).expect("subgroup of context"))] += 1;
        }
        Ok(out)
    }

    fn insert(&mut self, y: Arc<PermGroup>) -> Result<bool> {
        let prof = self.profile(&y)?;
        for (r, rp) in &self.reps {
            if r.order() == y.order() && *rp == prof && are_conjugate_subgroups(self.context, r, &y)?.is_some() {
                return Ok(false);
            }
        }
        self.reps.push((y, prof));
        Ok(true)
    }

    fn into_sorted(self) -> Vec<Arc<PermGroup>> {
        let mut reps = self.reps;
        reps.sort_by(|a, b| a.0.order().cmp(&b.0.order()).then_with(|| b.1.cmp(&a.1)));
        reps.into_iter().map(|r| r.0).collect()
    }
}

/// Searches over one top group, with memo tables keyed by the element set
/// of the context subgroup.
pub struct NilpotentSearch {
    top: Arc<PermGroup>,
    p_classes: HashMap<(FixedBitSet, u64), Arc<Vec<Arc<PermGroup>>>>,
    best: HashMap<(FixedBitSet, Vec<u64>), (u64, Arc<PermGroup>)>,
    maximal: HashMap<(FixedBitSet, Vec<u64>), Arc<Vec<Arc<PermGroup>>>>,
    all: HashMap<(FixedBitSet, Vec<u64>), Arc<Vec<Arc<PermGroup>>>>,
}

impl NilpotentSearch {
    pub fn new(top: Arc<PermGroup>) -> Self {
        NilpotentSearch {
            top,
            p_classes: HashMap::new(),
            best: HashMap::new(),
            maximal: HashMap::new(),
            all: HashMap::new(),
        }
    }

    pub fn top(&self) -> &Arc<PermGroup> {
        &self.top
    }

    fn key(&self, c: &PermGroup) -> Result<FixedBitSet> {
        if c.order() == self.top.order() {
            let mut all = FixedBitSet::with_capacity(c.order() as usize);
            all.insert_range(..);
            return Ok(all);
        }
        c.member_set_in(&self.top)
    }

    /// Class representatives of the nontrivial `p`-subgroups of `c`,
    /// ordered by order.
    pub fn p_subgroups(&mut self, c: &Arc<PermGroup>, p: u64) -> Result<Arc<Vec<Arc<PermGroup>>>> {
        if !c.order().is_multiple_of(p) {
            return Ok(Arc::new(Vec::new()));
        }
        let key = (self.key(c)?, p);
        if let Some(v) = self.p_classes.get(&key) {
            return Ok(v.clone());
        }
        let out = Arc::new(enumerate_p_subgroups(c, p)?);
        self.p_classes.insert(key, out.clone());
        Ok(out)
    }

    /// Largest order of a nilpotent `π`-subgroup of `c`, with a witness.
    pub fn best(&mut self, c: &Arc<PermGroup>, primes: &[u64]) -> Result<(u64, Arc<PermGroup>)> {
        let primes: Vec<u64> = primes.iter().copied().filter(|&p| c.order().is_multiple_of(p)).collect();
        let degree = c.degree();
        if primes.is_empty() {
            return Ok((1, Arc::new(PermGroup::trivial(degree))));
        }
        if primes.len() == 1 {
            let s = sylow_subgroup(c, primes[0])?;
            return Ok((s.order(), s.group().clone()));
        }
        if is_nilpotent(c) {
            return Ok((pi_part(c.order(), &primes), hall(c, &primes)?));
        }
        let key = (self.key(c)?, primes.clone());
        if let Some(v) = self.best.get(&key) {
            return Ok(v.clone());
        }
        let p = primes[0];
        let rest = &primes[1..];
        let (mut b, mut w) = self.best(c, rest)?;
        let classes = self.p_subgroups(c, p)?;
        let rest_part = pi_part(c.order(), rest);
        for pg in classes.iter().rev() {
            if pg.order() * rest_part <= b {
                continue;
            }
            let cent = centralizer_of(c, pg)?.group().clone();
            if pg.order() * pi_part(cent.order(), rest) <= b {
                continue;
            }
            let (b2, w2) = self.best(&cent, rest)?;
            if pg.order() * b2 > b {
                b = pg.order() * b2;
                w = join(degree, pg, &w2);
            }
        }
        self.best.insert(key, (b, w.clone()));
        Ok((b, w))
    }

    /// Class representatives of the nilpotent `π`-subgroups of `c` that are
    /// maximal among nilpotent `π`-subgroups.
    pub fn maximal(&mut self, c: &Arc<PermGroup>, primes: &[u64]) -> Result<Arc<Vec<Arc<PermGroup>>>> {
        let primes: Vec<u64> = primes.iter().copied().filter(|&p| c.order().is_multiple_of(p)).collect();
        if primes.is_empty() {
            return Ok(Arc::new(vec![Arc::new(PermGroup::trivial(c.degree()))]));
        }
        if is_nilpotent(c) {
            return Ok(Arc::new(vec![hall(c, &primes)?]));
        }
        let key = (self.key(c)?, primes.clone());
        if let Some(v) = self.maximal.get(&key) {
            return Ok(v.clone());
        }
        let p = primes[0];
        let rest = &primes[1..];
        let mut registry = ClassRegistry::new(c);
        let mut candidates: Vec<Arc<PermGroup>> = self.maximal(c, rest)?.to_vec();
        for pg in self.p_subgroups(c, p)?.iter() {
            let cent = centralizer_of(c, pg)?.group().clone();
            for y in self.maximal(&cent, rest)?.iter() {
                candidates.push(join(c.degree(), pg, y));
            }
        }
        for y in candidates {
            if is_locally_maximal(c, &y, &primes)? {
                registry.insert(y)?;
            }
        }
        let out = Arc::new(registry.into_sorted());
        self.maximal.insert(key, out.clone());
        Ok(out)
    }

    /// Class representatives of all nilpotent `π`-subgroups of `c`,
    /// including the trivial one.
    pub fn all(&mut self, c: &Arc<PermGroup>, primes: &[u64]) -> Result<Arc<Vec<Arc<PermGroup>>>> {
        let primes: Vec<u64> = primes.iter().copied().filter(|&p| c.order().is_multiple_of(p)).collect();
        let degree = c.degree();
        if primes.is_empty() {
            return Ok(Arc::new(vec![Arc::new(PermGroup::trivial(degree))]));
        }
        let key = (self.key(c)?, primes.clone());
        if let Some(v) = self.all.get(&key) {
            return Ok(v.clone());
        }
        let p = primes[0];
        let rest = &primes[1..];
        let mut registry = ClassRegistry::new(c);
        for y in self.all(c, rest)?.iter() {
            registry.insert(y.clone())?;
        }
        for pg in self.p_subgroups(c, p)?.iter() {
            let cent = centralizer_of(c, pg)?.group().clone();
            for y in self.all(&cent, rest)?.iter() {
                registry.insert(join(degree, pg, y))?;
            }
        }
        let out = Arc::new(registry.into_sorted());
        self.all.insert(key, out.clone());
        Ok(out)
    }
}

/// Product of the Sylow subgroups of a nilpotent group for the given primes.
fn hall(c: &Arc<PermGroup>, primes: &[u64]) -> Result<Arc<PermGroup>> {
    let mut gens = Vec::new();
    for &p in primes {
        if c.order().is_multiple_of(p) {
            gens.extend(sylow_subgroup(c, p)?.generators().iter().cloned());
        }
    }
    Ok(Arc::new(PermGroup::new(c.degree(), gens)?))
}

/// A nilpotent `π`-subgroup `y` of `c` lies in a larger one iff some
/// `r`-element `x` (`r` in `π`) of `N_c(y)` outside `y`, with `x^r` in `y`,
/// centralizes the `r'`-part of `y`.
pub fn is_locally_maximal(c: &Arc<PermGroup>, y: &PermGroup, primes: &[u64]) -> Result<bool> {
    let n = normalizer(c, y)?;
    if n.order() == y.order() {
        return Ok(true);
    }
    let elements = y.chain_elements();
    for &r in primes {
        if !(n.order() / y.order()).is_multiple_of(r) {
            continue;
        }
        let r_prime: Vec<&Permutation> = elements.iter().filter(|x| x.order() % r != 0 && !x.is_identity()).collect();
        for x in n.group().chain_elements() {
            if !is_p_element(&x, r) || y.contains(&x) || !y.contains(&x.pow(r as i64)) {
                continue;
            }
            if r_prime.iter().all(|z| z.commutes_with(&x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Level-wise ascent: order-`p` subgroups from class representatives, then
/// each representative `P` extended by the `p`-elements `x` of `N(P)` with
/// `x^p` in `P`.
fn enumerate_p_subgroups(c: &Arc<PermGroup>, p: u64) -> Result<Vec<Arc<PermGroup>>> {
    let degree = c.degree();
    let classes = conjugacy_classes(c)?;
    let mut level = ClassRegistry::new(c);
    for i in 1..classes.len() {
        if classes.element_order(i) == p {
            level.insert(Arc::new(PermGroup::new(degree, vec![classes.rep(i).clone()])?))?;
        }
    }
    let mut out = Vec::new();
    let mut current = level.into_sorted();
    while !current.is_empty() {
        let mut next = ClassRegistry::new(c);
        for pg in &current {
            let n = normalizer(c, pg)?;
            if (n.order() / pg.order()) % p != 0 {
                continue;
            }
            let mut xs = n.group().chain_elements();
            xs.sort_unstable();
            let mut formed: Vec<Arc<PermGroup>> = Vec::new();
            for x in xs {
                if !is_p_element(&x, p) || pg.contains(&x) || !pg.contains(&x.pow(p as i64)) {
                    continue;
                }
                if formed.iter().any(|f| f.contains(&x)) {
                    continue;
                }
                let mut gens = pg.generators().to_vec();
                gens.push(x);
                let q = Arc::new(PermGroup::new(degree, gens)?);
                formed.push(q.clone());
                next.insert(q)?;
            }
        }
        out.append(&mut current);
        current = next.into_sorted();
    }
    Ok(out)
}

fn to_handles(g: &Arc<PermGroup>, v: &[Arc<PermGroup>]) -> Vec<SubgroupHandle> {
    v.iter()
        .map(|y| {
            if y.order() == g.order() {
                SubgroupHandle::whole(g.clone())
            } else {
                SubgroupHandle::from_parts(g.clone(), y.clone())
            }
        })
        .collect()
}

/// Class representatives of the nontrivial `p`-subgroups of `G`.
pub fn p_subgroup_classes(g: &Arc<PermGroup>, p: u64) -> Result<Vec<SubgroupHandle>> {
    let mut s = NilpotentSearch::new(g.clone());
    let v = s.p_subgroups(g, p)?;
    Ok(to_handles(g, &v))
}

/// `m(G)`, the largest order of a nilpotent subgroup, with a witness; with
/// `restrict_to`, the search runs inside that subgroup.
pub fn max_nilpotent_order(g: &Arc<PermGroup>, restrict_to: Option<&SubgroupHandle>) -> Result<(u64, SubgroupHandle)> {
    let context = restrict_to.map(|h| h.group().clone()).unwrap_or_else(|| g.clone());
    let mut s = NilpotentSearch::new(context.clone());
    let (m, w) = s.best(&context, &prime_divisors(context.order()))?;
    Ok((m, to_handles(g, &[w]).remove(0)))
}

/// Class representatives of the maximal nilpotent subgroups.
pub fn maximal_nilpotent_classes(g: &Arc<PermGroup>) -> Result<Vec<SubgroupHandle>> {
    let mut s = NilpotentSearch::new(g.clone());
    let v = s.maximal(g, &prime_divisors(g.order()))?;
    Ok(to_handles(g, &v))
}

/// Class representatives of all nilpotent subgroups, trivial group first.
pub fn nilpotent_subgroup_classes(g: &Arc<PermGroup>) -> Result<Vec<SubgroupHandle>> {
    let mut s = NilpotentSearch::new(g.clone());
    let v = s.all(g, &prime_divisors(g.order()))?;
    Ok(to_handles(g, &v))
}
