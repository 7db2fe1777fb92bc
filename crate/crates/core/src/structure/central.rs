use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, SubgroupHandle};

use super::quotient::{quotient, QuotientGroup};

/// Factors `X_i`, each with central elements `glue[k][i]`; for each `k`
/// the tuple `(glue[k][0], .., glue[k][n-1])` names one generator of the
/// amalgamated centre in every factor, so `z ↦ glue[k][i]` defines the
/// identification `Z_1 → Z_i`.
#[derive(Debug, Clone)]
pub struct CentralProductSpec {
    pub factors: Vec<Arc<PermGroup>>,
    pub glue: Vec<Vec<Permutation>>,
}

/// `E = (X_1 × .. × X_n)/A` with its factor embeddings and centre `Z`.
#[derive(Debug)]
pub struct CentralProduct {
    direct: Arc<PermGroup>,
    offsets: Vec<usize>,
    factors: Vec<Arc<PermGroup>>,
    quotient: QuotientGroup,
    embeddings: Vec<SubgroupHandle>,
    center: SubgroupHandle,
}

fn embed(x: &Permutation, offset: usize, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &y) in x.images().iter().enumerate() {
        images[offset + i] = y + offset as u32;
    }
    Permutation::from_images(images).expect("block embedding")
}

/// Build the central product and check it: pairwise commuting factor
/// images, injective embeddings, and the factor images meeting in `Z`.
pub fn central_product(spec: &CentralProductSpec) -> Result<CentralProduct> {
    let n = spec.factors.len();
    if n == 0 {
        return Err(Error::SpecInvalid("no factors".into()));
    }
    for (k, tuple) in spec.glue.iter().enumerate() {
        if tuple.len() != n {
            return Err(Error::SpecInvalid(format!("glue tuple {k} has {} entries, not {n}", tuple.len())));
        }
        for (i, z) in tuple.iter().enumerate() {
            let x = &spec.factors[i];
            if !x.contains(z) || !x.generators().iter().all(|g| g.commutes_with(z)) {
                return Err(Error::SpecInvalid(format!("glue element {z} is not central in factor {i}")));
            }
        }
    }
    let zs: Vec<PermGroup> = (0..n)
        .map(|i| PermGroup::new(spec.factors[i].degree(), spec.glue.iter().map(|t| t[i].clone()).collect()))
        .collect::<Result<_>>()?;
    // the identification is an isomorphism iff its graph in Z_1 × Z_i has
    // the order of both factors
    for i in 1..n {
        let (d1, di) = (zs[0].degree(), zs[i].degree());
        let graph = PermGroup::new(
            d1 + di,
            spec.glue.iter().map(|t| embed(&t[0], 0, d1 + di).mul(&embed(&t[i], d1, d1 + di))).collect(),
        )?;
        if graph.order() != zs[0].order() || zs[i].order() != zs[0].order() {
            return Err(Error::SpecInvalid(format!("identification of centres 0 and {i} is not an isomorphism")));
        }
    }
    let mut offsets = Vec::with_capacity(n);
    let mut degree = 0;
    for x in &spec.factors {
        offsets.push(degree);
        degree += x.degree();
    }
    let embed_in = |x: &Permutation, i: usize| embed(x, offsets[i], degree);
    let direct_gens: Vec<Permutation> = spec
        .factors
        .iter()
        .enumerate()
        .flat_map(|(i, x)| x.generators().iter().map(move |g| (i, g.clone())))
        .map(|(i, g)| embed_in(&g, i))
        .collect();
    let direct = Arc::new(PermGroup::new(degree, direct_gens)?);
    let mut a_gens = Vec::new();
    for t in &spec.glue {
        for i in 1..n {
            a_gens.push(embed_in(&t[0].inverse(), 0).mul(&embed_in(&t[i], i)));
        }
    }
    let a = SubgroupHandle::new(direct.clone(), a_gens)?;
    let q = quotient(&direct, &a)?;
    let e = q.group().clone();
    let mut embeddings = Vec::with_capacity(n);
    for (i, x) in spec.factors.iter().enumerate() {
        let gens = x.generators().iter().map(|g| q.project(&embed_in(g, i))).collect::<Result<Vec<_>>>()?;
        let image = SubgroupHandle::new(e.clone(), gens)?;
        if image.order() != x.order() {
            return Err(Error::SpecInvalid(format!("factor {i} does not embed")));
        }
        embeddings.push(image);
    }
    let zgens = zs[0].generators().iter().map(|z| q.project(&embed_in(z, 0))).collect::<Result<Vec<_>>>()?;
    let center = SubgroupHandle::new(e.clone(), zgens)?;

    for i in 0..n {
        for j in i + 1..n {
            let commute = embeddings[i]
                .generators()
                .iter()
                .all(|a| embeddings[j].generators().iter().all(|b| a.commutes_with(b)));
            if !commute {
                return Err(Error::SelfCheckFailed(format!("factors {i} and {j} do not commute")));
            }
        }
    }
    if n > 1 {
        let mut meet: Option<FixedBitSet> = None;
        for emb in &embeddings {
            let m = emb.members()?.clone();
            meet = Some(match meet {
                None => m,
                Some(mut acc) => {
                    acc.intersect_with(&m);
                    acc
                }
            });
        }
        if meet.unwrap().count_ones(..) as u64 != center.order() {
            return Err(Error::SelfCheckFailed("factor images do not meet in the centre".into()));
        }
    }
    let expected = spec.factors.iter().map(|x| x.order()).product::<u64>() / zs[0].order().pow(n as u32 - 1);
    if e.order() != expected {
        return Err(Error::SelfCheckFailed(format!("order {} is not {expected}", e.order())));
    }
    Ok(CentralProduct { direct, offsets, factors: spec.factors.clone(), quotient: q, embeddings, center })
}

impl CentralProduct {
    pub fn group(&self) -> &Arc<PermGroup> {
        self.quotient.group()
    }

    pub fn direct_product(&self) -> &Arc<PermGroup> {
        &self.direct
    }

    pub fn quotient(&self) -> &QuotientGroup {
        &self.quotient
    }

    pub fn factors(&self) -> &[Arc<PermGroup>] {
        &self.factors
    }

    /// Image of `X_i` in `E`.
    pub fn embedding(&self, i: usize) -> &SubgroupHandle {
        &self.embeddings[i]
    }

    pub fn embeddings(&self) -> &[SubgroupHandle] {
        &self.embeddings
    }

    /// The amalgamated centre `Z`.
    pub fn center(&self) -> &SubgroupHandle {
        &self.center
    }

    /// Image in `E` of an element of factor `i`.
    pub fn embed_element(&self, i: usize, x: &Permutation) -> Result<Permutation> {
        if !self.factors[i].contains(x) {
            return Err(Error::NotMember(x.to_string()));
        }
        self.quotient.project(&embed(x, self.offsets[i], self.direct.degree()))
    }

    /// Image in `E` of a tuple `(x_1, .., x_n)`, i.e. `x_1 ⋯ x_n`.
    pub fn embed_tuple(&self, xs: &[Permutation]) -> Result<Permutation> {
        let mut acc = self.direct.identity();
        for (i, x) in xs.iter().enumerate() {
            if !self.factors[i].contains(x) {
                return Err(Error::NotMember(x.to_string()));
            }
            acc = acc.mul(&embed(x, self.offsets[i], self.direct.degree()));
        }
        self.quotient.project(&acc)
    }

    /// Image in `E` of a subgroup `K_i` of factor `i`.
    pub fn embed_subgroup(&self, i: usize, k: &PermGroup) -> Result<SubgroupHandle> {
        let gens = k.generators().iter().map(|x| self.embed_element(i, x)).collect::<Result<Vec<_>>>()?;
        SubgroupHandle::new(self.group().clone(), gens)
    }

    /// The component of a direct-product element in factor `i`.
    pub fn factor_part(&self, i: usize, x: &Permutation) -> Permutation {
        x.restrict_block(self.offsets[i], self.factors[i].degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(d, s).unwrap()
    }

    #[test]
    fn q8_with_c4() {
        // Q8 regular on 8 points, C4 on 4 points
        let i = p(8, "[[0,1,2,3],[4,5,6,7]]");
        let j = p(8, "[[0,4,2,6],[1,7,3,5]]");
        let q8 = Arc::new(PermGroup::new(8, vec![i.clone(), j]).unwrap());
        assert_eq!(q8.order(), 8);
        let c = p(4, "[[0,1,2,3]]");
        let c4 = Arc::new(PermGroup::new(4, vec![c.clone()]).unwrap());
        let spec = CentralProductSpec { factors: vec![q8, c4], glue: vec![vec![i.pow(2), c.pow(2)]] };
        let e = central_product(&spec).unwrap();
        assert_eq!(e.group().order(), 16);
        assert_eq!(e.center().order(), 2);
        assert_eq!(e.embedding(0).order(), 8);
        assert_eq!(e.embedding(1).order(), 4);
    }

    #[test]
    fn single_factor_and_bad_glue() {
        let s3 = Arc::new(PermGroup::symmetric(3));
        let spec = CentralProductSpec { factors: vec![s3.clone()], glue: vec![] };
        assert_eq!(central_product(&spec).unwrap().group().order(), 6);
        let bad = CentralProductSpec {
            factors: vec![s3.clone(), s3.clone()],
            glue: vec![vec![p(3, "[[0,1]]"), p(3, "[[0,1]]")]],
        };
        assert!(matches!(central_product(&bad), Err(Error::SpecInvalid(_))));
    }
}
