//! Stabilizer chains by the deterministic Schreier-Sims algorithm.

use super::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    /// Strong generators fixing all earlier base points.
    pub gens: Vec<Permutation>,
    /// Orbit of `base` in discovery order.
    pub orbit: Vec<usize>,
    /// `transversal[b]` maps `base` to `b`, for every `b` in the orbit.
    pub transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        Level { base, gens: Vec::new(), orbit: Vec::new(), transversal: vec![None; degree] }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let b = self.orbit[i];
            for g in &self.gens {
                let c = g.image(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap().mul(g);
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    /// Base points are the first points moved by generators that fix all
    /// earlier base points, in generator order.
    pub fn build(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain { degree, levels: Vec::new() };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g.image(l.base) == l.base) {
                let b = g.first_moved_point().unwrap();
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in &gens {
            for level in chain.levels.iter_mut() {
                level.gens.push(g.clone());
                if g.image(level.base) != level.base {
                    break;
                }
            }
        }
        for level in chain.levels.iter_mut() {
            level.rebuild_orbit(degree);
        }
        chain.complete();
        chain
    }

    // Schreier-Sims main loop: every Schreier generator at level i must sift
    // through levels i+1.. to the identity.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            let mut added = None;
            'scan: for oi in 0..self.levels[lvl].orbit.len() {
                let b = self.levels[lvl].orbit[oi];
                for gi in 0..self.levels[lvl].gens.len() {
                    let level = &self.levels[lvl];
                    let g = &level.gens[gi];
                    let ub = level.transversal[b].as_ref().unwrap();
                    let c = g.image(b);
                    let uc = level.transversal[c].as_ref().unwrap();
                    let schreier = ub.mul(g).mul(&uc.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip_from(schreier, lvl + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        added = Some((h, j));
                        break 'scan;
                    }
                }
            }
            match added {
                None => i -= 1,
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = h.first_moved_point().unwrap();
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].rebuild_orbit(self.degree);
                    }
                    i = j + 1;
                }
            }
        }
    }

    /// Sift `g` starting at `start`; returns the residue and the level where
    /// sifting stopped (`levels.len()` if it went all the way through).
    pub fn strip_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let b = g.image(level.base);
            match &level.transversal[b] {
                None => return (g, l),
                Some(u) => {
                    if b != level.base {
                        g = g.mul(&u.inverse());
                    }
                }
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip_from(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    /// Every element, as products of transversal elements (unsorted).
    pub fn all_elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for x in &out {
                for &b in &level.orbit {
                    next.push(x.mul(level.transversal[b].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out
    }
}
