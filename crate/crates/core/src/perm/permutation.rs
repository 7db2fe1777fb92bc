use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{0, .., d-1}`, acting on the right: `x^(gh) = (x^g)^h`.
///
/// Ordering is lexicographic on the image array, which is the canonical
/// order used for every representative choice in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let x = x as usize;
                if x >= degree || used[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on {degree} points"
                    )));
                }
                used[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parse the cycle-list notation `[[0,1,2],[3,4]]`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let cycles: Vec<Vec<u32>> =
            serde_json::from_str(text).map_err(|e| Error::InvalidPermutation(format!("`{text}`: {e}")))?;
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| other.images[x as usize] == self.images[other.images[i] as usize])
    }

    /// Least `n >= 1` with `self^n = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i as u32 != x)
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Restrict to the block `offset..offset+len`, which must be invariant.
    pub fn restrict_block(&self, offset: usize, len: usize) -> Permutation {
        Permutation { images: (offset..offset + len).map(|i| self.images[i] - offset as u32).collect() }
    }

    /// Cycle-list text, e.g. `[[0,1,2],[3,4]]`; the identity is `[]`.
    pub fn to_cycle_string(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("[{}]", pts.join(","))
            })
            .collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

/// Serialized as its cycle list.
impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.cycles().serialize(s)
    }
}

/// Deserialized from a cycle list; the degree is the largest point plus one.
impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let cycles = Vec::<Vec<u32>>::deserialize(d)?;
        let degree = cycles.iter().flatten().map(|&x| x as usize + 1).max().unwrap_or(0);
        Permutation::from_cycles(degree, &cycles).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(d, s).unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(p(5, "[[0,1,2,3,4]]").order(), 5);
        assert_eq!(p(5, "[[0,1,2],[3,4]]").order(), 6);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let g = p(7, "[[0,1,2,3,4],[5,6]]");
        assert_eq!(g.to_cycle_string(), "[[0,1,2,3,4],[5,6]]");
        assert_eq!(Permutation::identity(3).to_cycle_string(), "[]");
        let js = serde_json::to_string(&g).unwrap();
        assert_eq!(js, "[[0,1,2,3,4],[5,6]]");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::parse_cycles(3, "[[0,1],[1,2]]").is_err());
        assert!(Permutation::parse_cycles(3, "[[0,5]]").is_err());
        assert!(Permutation::parse_cycles(3, "[[0,1").is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn right_action_composition() {
        let a = p(3, "[[0,1]]");
        let b = p(3, "[[1,2]]");
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!(a.conjugate_by(&b), b.inverse().mul(&a).mul(&b));
        assert!(a.mul(&a.inverse()).is_identity());
        assert_eq!(a.pow(-3), a);
    }
}
