use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::{centralizer_of, normal_closure, normalizer, PermGroup, Permutation, SubgroupHandle};

use super::classes::{conjugacy_classes, primes_of};
use super::normal::{is_normal, normal_subgroups};

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// Prime divisors in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    primes_of(n)
}

fn is_p_element(x: &Permutation, p: u64) -> bool {
    let o = x.order();
    p_part(o, p) == o
}

/// A Sylow `p`-subgroup, by ascent through normalizers from the least
/// element of order `p`.
pub fn sylow_subgroup(g: &Arc<PermGroup>, p: u64) -> Result<SubgroupHandle> {
    if !crate::gfmat::is_prime(p) || !g.order().is_multiple_of(p) {
        return Err(Error::PrimeDoesNotDivide(p));
    }
    let target = p_part(g.order(), p);
    let table = g.elements()?;
    let first = table.elements().iter().find(|x| x.order() == p).expect("Cauchy").clone();
    let mut current = PermGroup::new(g.degree(), vec![first])?;
    while current.order() < target {
        let n = normalizer(g, &current)?;
        let x = n
            .group()
            .chain_elements()
            .into_iter()
            .filter(|x| is_p_element(x, p) && !current.contains(x) && current.contains(&x.pow(p as i64)))
            .min()
            .expect("normalizer grows in a p-group that is not Sylow");
        let mut gens = current.generators().to_vec();
        gens.push(x);
        current = PermGroup::new(g.degree(), gens)?;
    }
    SubgroupHandle::from_group(g.clone(), Arc::new(current))
}

/// Union of the classes lying entirely in a Sylow `p`-subgroup: the
/// intersection of all its conjugates.
pub fn o_p(g: &Arc<PermGroup>, p: u64) -> Result<SubgroupHandle> {
    if !g.order().is_multiple_of(p) {
        return Ok(SubgroupHandle::trivial(g.clone()));
    }
    let sylow = sylow_subgroup(g, p)?;
    let members = sylow.members()?;
    let classes = conjugacy_classes(g)?;
    let mut inside = vec![true; classes.len()];
    for (idx, &c) in classes.class_map().iter().enumerate() {
        if !members.contains(idx) {
            inside[c as usize] = false;
        }
    }
    let gens: Vec<Permutation> = (1..classes.len()).filter(|&c| inside[c]).map(|c| classes.rep(c).clone()).collect();
    let core = normal_closure(g, &PermGroup::new(g.degree(), gens)?);
    Ok(SubgroupHandle::from_parts(g.clone(), Arc::new(core)))
}

/// Every Sylow subgroup is normal, tested by counting `p`-elements.
pub fn is_nilpotent(g: &PermGroup) -> bool {
    let order = g.order();
    let primes = prime_divisors(order);
    if primes.len() <= 1 {
        return true;
    }
    let elements = g.chain_elements();
    primes.iter().all(|&p| {
        let count = elements.iter().filter(|x| is_p_element(x, p)).count() as u64;
        count == p_part(order, p)
    })
}

pub fn center(g: &Arc<PermGroup>) -> Result<SubgroupHandle> {
    centralizer_of(g, g)
}

/// Normal closure of the commutators of the generators.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    let seed = PermGroup::new(g.degree(), comms).unwrap();
    normal_closure(g, &seed)
}

pub fn is_perfect(g: &PermGroup) -> bool {
    derived_subgroup(g).order() == g.order()
}

pub fn is_solvable(g: &PermGroup) -> bool {
    let mut current = derived_subgroup(g);
    let mut order = g.order();
    while current.order() < order {
        order = current.order();
        current = derived_subgroup(&current);
    }
    order == 1
}

/// Product of the `O_p(G)`; checked normal, nilpotent and maximal among
/// the normal nilpotent subgroups.
pub fn fitting(g: &Arc<PermGroup>) -> Result<SubgroupHandle> {
    let mut gens = Vec::new();
    for p in prime_divisors(g.order()) {
        gens.extend(o_p(g, p)?.generators().iter().cloned());
    }
    let f = SubgroupHandle::new(g.clone(), gens)?;
    if !is_normal(g, f.group()) || !is_nilpotent(f.group()) {
        return Err(Error::SelfCheckFailed("Fitting subgroup is not normal nilpotent".into()));
    }
    let lattice = normal_subgroups(g)?;
    for m in lattice.members() {
        if is_nilpotent(m.group()) && !f.group().contains_group(m.group()) {
            return Err(Error::SelfCheckFailed("a normal nilpotent subgroup escapes the Fitting subgroup".into()));
        }
    }
    Ok(f)
}

/// Perfect, and every normal subgroup is the whole group or central.
pub fn is_quasisimple(g: &Arc<PermGroup>) -> Result<bool> {
    if g.order() == 1 || !is_perfect(g) {
        return Ok(false);
    }
    let z = center(g)?;
    let lattice = normal_subgroups(g)?;
    Ok(lattice.members().iter().all(|m| m.is_whole() || z.group().contains_group(m.group())))
}

fn sorted_key(set: &FixedBitSet) -> Vec<usize> {
    set.ones().collect()
}

struct ComponentSearch<'a> {
    top: &'a Arc<PermGroup>,
    memo: HashMap<Vec<usize>, Vec<Arc<PermGroup>>>,
}

impl ComponentSearch<'_> {
    fn run(&mut self, k: &Arc<PermGroup>) -> Result<Vec<Arc<PermGroup>>> {
        if k.order() == 1 || is_solvable(k) {
            return Ok(Vec::new());
        }
        let key = sorted_key(&k.member_set_in(self.top)?);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let out = if is_quasisimple(k)? {
            vec![k.clone()]
        } else {
            let lattice = normal_subgroups(k)?;
            let mut out: Vec<Arc<PermGroup>> = Vec::new();
            for m in lattice.members() {
                if m.is_whole() || m.is_trivial() {
                    continue;
                }
                for c in self.run(m.group())? {
                    if !out.iter().any(|o| o.same_group(&c)) {
                        out.push(c);
                    }
                }
            }
            out
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// Subnormal quasisimple subgroups, by descent through normal lattices.
/// Ordered by their sorted element-index sets.
pub fn components(g: &Arc<PermGroup>) -> Result<Vec<SubgroupHandle>> {
    let mut search = ComponentSearch { top: g, memo: HashMap::new() };
    let found = search.run(g)?;
    let mut keyed = found.into_iter().map(|c| Ok((sorted_key(&c.member_set_in(g)?), c))).collect::<Result<Vec<_>>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, c)| SubgroupHandle::from_parts(g.clone(), c)).collect())
}

/// `E(G)`, generated by the components.
pub fn layer(g: &Arc<PermGroup>) -> Result<SubgroupHandle> {
    let gens = components(g)?.iter().flat_map(|c| c.generators().to_vec()).collect();
    SubgroupHandle::new(g.clone(), gens)
}

/// `F*(G) = F(G) E(G)`, checked against `C_G(F*(G)) <= F*(G)`.
pub fn generalized_fitting(g: &Arc<PermGroup>) -> Result<SubgroupHandle> {
    let f = fitting(g)?;
    let e = layer(g)?;
    let gens = f.generators().iter().chain(e.generators()).cloned().collect();
    let fstar = SubgroupHandle::new(g.clone(), gens)?;
    let c = centralizer_of(g, fstar.group())?;
    if !fstar.group().contains_group(c.group()) {
        return Err(Error::SelfCheckFailed("the centralizer of F*(G) is not contained in F*(G)".into()));
    }
    Ok(fstar)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylow_and_op() {
        let s4 = Arc::new(PermGroup::symmetric(4));
        assert_eq!(sylow_subgroup(&s4, 2).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&s4, 3).unwrap().order(), 3);
        assert!(sylow_subgroup(&s4, 5).is_err());
        assert_eq!(o_p(&s4, 2).unwrap().order(), 4);
        assert_eq!(o_p(&s4, 3).unwrap().order(), 1);
        let s5 = Arc::new(PermGroup::symmetric(5));
        assert_eq!(sylow_subgroup(&s5, 2).unwrap().order(), 8);
        let a5 = Arc::new(PermGroup::alternating(5));
        assert_eq!(sylow_subgroup(&a5, 5).unwrap().order(), 5);
        assert_eq!(o_p(&a5, 5).unwrap().order(), 1);
    }

    #[test]
    fn fitting_and_components() {
        let s4 = Arc::new(PermGroup::symmetric(4));
        assert_eq!(fitting(&s4).unwrap().order(), 4);
        assert!(components(&s4).unwrap().is_empty());
        assert_eq!(generalized_fitting(&s4).unwrap().order(), 4);
        let a5 = Arc::new(PermGroup::alternating(5));
        assert_eq!(fitting(&a5).unwrap().order(), 1);
        assert_eq!(components(&a5).unwrap().len(), 1);
        assert_eq!(generalized_fitting(&a5).unwrap().order(), 60);
        let s5 = Arc::new(PermGroup::symmetric(5));
        let c = components(&s5).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].order(), 60);
    }

    #[test]
    fn nilpotency() {
        assert!(!is_nilpotent(&PermGroup::symmetric(3)));
        assert!(is_nilpotent(&PermGroup::symmetric(2)));
        let c6 = PermGroup::new(5, vec![Permutation::parse_cycles(5, "[[0,1,2],[3,4]]").unwrap()]).unwrap();
        assert!(is_nilpotent(&c6));
        assert!(is_solvable(&PermGroup::symmetric(4)));
        assert!(!is_solvable(&PermGroup::alternating(5)));
    }
}
