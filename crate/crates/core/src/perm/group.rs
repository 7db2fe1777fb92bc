use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use super::chain::StabChain;
use super::Permutation;
use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::structure::ClassData;
use crate::ELEMENT_TABLE_CAP;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Orders up to this size also get a full multiplication table.
const MULT_TABLE_CAP: usize = 2048;

/// All elements of a group, sorted by image array, with an index map.
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mult: OnceLock<Vec<u16>>,
    inverses: OnceLock<Vec<u32>>,
}

impl ElementTable {
    fn new(mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        let index = elements.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        ElementTable { elements, index, mult: OnceLock::new(), inverses: OnceLock::new() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    fn mult_table(&self) -> Option<&Vec<u16>> {
        let n = self.elements.len();
        if n > MULT_TABLE_CAP {
            return None;
        }
        Some(self.mult.get_or_init(|| {
            let mut t = vec![0u16; n * n];
            for (i, a) in self.elements.iter().enumerate() {
                for (j, b) in self.elements.iter().enumerate() {
                    t[i * n + j] = self.index[&a.mul(b)] as u16;
                }
            }
            t
        }))
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match self.mult_table() {
            Some(t) => t[i * self.elements.len() + j] as usize,
            None => self.index[&self.elements[i].mul(&self.elements[j])] as usize,
        }
    }

    pub fn inv(&self, i: usize) -> usize {
        let t = self.inverses.get_or_init(|| self.elements.iter().map(|g| self.index[&g.inverse()]).collect());
        t[i] as usize
    }

    /// Index of `elements[i]^elements[g] = g^-1 x g`.
    pub fn conj(&self, i: usize, g: usize) -> usize {
        match self.mult_table() {
            Some(_) => self.mul(self.mul(self.inv(g), i), g),
            None => self.index[&self.elements[i].conjugate_by(&self.elements[g])] as usize,
        }
    }
}

/// A permutation group given by generators, with an eagerly built
/// stabilizer chain and lazily built element table, classes and
/// character table.
pub struct PermGroup {
    id: u64,
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u64,
    elements: OnceLock<ElementTable>,
    classes: OnceLock<Arc<ClassData>>,
    table: OnceLock<std::result::Result<Arc<CharacterTable>, Error>>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Build from generators; an empty list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!("generator {g} has degree {} not {degree}", g.degree())));
        }
        let chain = StabChain::build(degree, &generators);
        let order = chain.order();
        Ok(PermGroup {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            degree,
            generators,
            chain,
            order,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
            table: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).unwrap()
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap());
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        Self::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n as u32).map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap()).collect();
        Self::new(n, gens).unwrap()
    }

    /// Process-unique identity of this group object.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_lengths(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.chain.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Equality as sets, by mutual membership of generators.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.order == other.order && self.contains_group(other)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().enumerate().all(|(i, a)| g[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn has_element_table(&self) -> bool {
        self.order <= ELEMENT_TABLE_CAP
    }

    pub fn elements(&self) -> Result<&ElementTable> {
        if self.order > ELEMENT_TABLE_CAP {
            return Err(Error::OrderTooLarge(self.order, ELEMENT_TABLE_CAP));
        }
        Ok(self.elements.get_or_init(|| ElementTable::new(self.chain.all_elements())))
    }

    /// Every element in chain order, without building the sorted table.
    pub fn chain_elements(&self) -> Vec<Permutation> {
        self.chain.all_elements()
    }

    /// Enumerate all elements; alias kept for the operation name.
    pub fn enumerate_elements(&self) -> Result<&ElementTable> {
        self.elements()
    }

    pub(crate) fn class_cache(&self) -> &OnceLock<Arc<ClassData>> {
        &self.classes
    }

    pub(crate) fn table_cache(&self) -> &OnceLock<std::result::Result<Arc<CharacterTable>, Error>> {
        &self.table
    }

    /// Bitset over `parent`'s element table marking the elements of `self`.
    pub fn member_set_in(&self, parent: &PermGroup) -> Result<FixedBitSet> {
        let table = parent.elements()?;
        let mut set = FixedBitSet::with_capacity(table.len());
        for g in self.chain.all_elements() {
            let i = table
                .index_of(&g)
                .ok_or_else(|| Error::SelfCheckFailed(format!("{g} is not an element of the parent group")))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Subgroup generated by `gens`, choosing a small generating set greedily.
    pub fn generated_by<'a, I>(degree: usize, elements: I) -> PermGroup
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(degree);
        for g in elements {
            if !current.contains(g) {
                gens.push(g.clone());
                current = PermGroup::new(degree, gens.clone()).unwrap();
            }
        }
        current
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> Result<u64> {
        use num_integer::Integer;
        let t = self.elements()?;
        Ok(t.elements().iter().fold(1u64, |acc, g| acc.lcm(&g.order())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_small_groups() {
        let a5 = PermGroup::new(
            5,
            vec![
                Permutation::parse_cycles(5, "[[0,1,2,3,4]]").unwrap(),
                Permutation::parse_cycles(5, "[[0,1,2]]").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(PermGroup::new(5, vec![]).unwrap().order(), 1);
        for n in 1..=7 {
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(PermGroup::symmetric(n).order(), fact);
            assert_eq!(PermGroup::alternating(n).order(), fact.div_ceil(2).max(1));
        }
    }

    #[test]
    fn element_table_is_sorted_and_complete() {
        let s3 = PermGroup::symmetric(3);
        let t = s3.elements().unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.get(0).is_identity());
        assert!(t.elements().windows(2).all(|w| w[0] < w[1]));
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(t.get(t.mul(i, j)), &t.get(i).mul(t.get(j)));
            }
            assert!(t.get(t.mul(i, t.inv(i))).is_identity());
        }
        let triv = PermGroup::trivial(4);
        assert_eq!(triv.elements().unwrap().len(), 1);
    }

    #[test]
    fn membership() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        let t = Permutation::parse_cycles(5, "[[0,1]]").unwrap();
        assert!(s5.contains(&t));
        assert!(!a5.contains(&t));
        let w = a5.generators()[0].mul(&a5.generators()[1]).pow(7);
        assert!(a5.contains(&w));
    }
}
