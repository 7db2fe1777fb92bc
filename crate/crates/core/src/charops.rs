//! Class functions and the operations on them: inner products, restriction,
//! induction, decomposition, kernels and central-product characters.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::chartab::{compute_character_table, CharacterTable, Cyclotomic, RootSum};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, SubgroupHandle};
use crate::structure::{conjugacy_classes, CentralProduct, ClassData};

/// A function constant on the conjugacy classes of one group.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group_id: u64,
    classes: Arc<ClassData>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group_id == other.group_id && self.values == other.values
    }
}

/// Irreducible constituents as `(index into the table, multiplicity)`.
pub type ConstituentList = Vec<(usize, u64)>;

impl ClassFunction {
    pub(crate) fn from_parts(group_id: u64, classes: Arc<ClassData>, values: Vec<Cyclotomic>) -> Self {
        debug_assert_eq!(values.len(), classes.len());
        ClassFunction { group_id, classes, values }
    }

    /// A class function from its values on the classes of `g`.
    pub fn new(g: &PermGroup, values: Vec<Cyclotomic>) -> Result<Self> {
        let classes = conjugacy_classes(g)?;
        if values.len() != classes.len() {
            return Err(Error::DimensionMismatch(format!("{} values for {} classes", values.len(), classes.len())));
        }
        Ok(Self::from_parts(g.id(), classes, values))
    }

    pub fn trivial(g: &PermGroup) -> Result<Self> {
        let n = conjugacy_classes(g)?.len();
        Self::new(g, vec![Cyclotomic::one(); n])
    }

    /// `|G|` at the identity and zero elsewhere.
    pub fn regular(g: &PermGroup) -> Result<Self> {
        let n = conjugacy_classes(g)?.len();
        let mut values = vec![Cyclotomic::zero(); n];
        values[0] = Cyclotomic::from_int(g.order() as i64);
        Self::new(g, values)
    }

    /// Number of fixed points on `{0, .., degree-1}`.
    pub fn permutation_character(g: &PermGroup) -> Result<Self> {
        let classes = conjugacy_classes(g)?;
        let values = classes
            .reps()
            .iter()
            .map(|r| Cyclotomic::from_int((0..r.degree()).filter(|&x| r.image(x) == x).count() as i64))
            .collect();
        Self::new(g, values)
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Value at the identity as an integer (0 if it is not a nonnegative integer).
    pub fn degree_u64(&self) -> u64 {
        self.values[0].to_i64().filter(|&d| d >= 0).unwrap_or(0) as u64
    }

    fn check_same(&self, other: &ClassFunction) -> Result<()> {
        if self.group_id != other.group_id {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Ok(Self::from_parts(self.group_id, self.classes.clone(), values))
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.sub(b)).collect();
        Ok(Self::from_parts(self.group_id, self.classes.clone(), values))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.mul(b)).collect();
        Ok(Self::from_parts(self.group_id, self.classes.clone(), values))
    }

    pub fn scale_int(&self, c: i64) -> ClassFunction {
        let values = self.values.iter().map(|a| a.scale_int(c)).collect();
        Self::from_parts(self.group_id, self.classes.clone(), values)
    }

    pub fn conj(&self) -> ClassFunction {
        let values = self.values.iter().map(|a| a.conj()).collect();
        Self::from_parts(self.group_id, self.classes.clone(), values)
    }

    /// Image under `ζ ↦ ζ^k`.
    pub fn galois(&self, k: u64) -> ClassFunction {
        let values = self.values.iter().map(|a| a.galois(k)).collect();
        Self::from_parts(self.group_id, self.classes.clone(), values)
    }

    /// True iff every value is zero.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Values rendered as in the table dump.
    pub fn value_strings(&self) -> Vec<String> {
        self.values.iter().map(|v| v.to_string()).collect()
    }
}

fn common_conductor<'a, I: IntoIterator<Item = &'a Cyclotomic>>(values: I) -> u32 {
    values.into_iter().fold(1u32, |acc, v| num_integer::lcm(acc, v.conductor()))
}

/// `⟨α, β⟩ = (1/|G|) Σ |class_i| α(g_i) conj(β(g_i))`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
    a.check_same(b)?;
    let classes = &a.classes;
    let e = common_conductor(a.values.iter().chain(&b.values));
    let fast: Option<(Vec<RootSum>, Vec<RootSum>)> = (|| {
        let ra = a.values.iter().map(|v| RootSum::from_cyclotomic(v, e)).collect::<Option<Vec<_>>>()?;
        let rb = b.values.iter().map(|v| RootSum::from_cyclotomic(v, e)).collect::<Option<Vec<_>>>()?;
        Some((ra, rb))
    })();
    let sum = match fast {
        Some((ra, rb)) => {
            let mut acc = RootSum::zero(e);
            for i in 0..classes.len() {
                acc.add_product(classes.size(i) as i128, &ra[i], &rb[i], true);
            }
            acc.to_cyclotomic()
        }
        None => (0..classes.len()).fold(Cyclotomic::zero(), |acc, i| {
            acc.add(&a.values[i].mul(&b.values[i].conj()).scale_int(classes.size(i) as i64))
        }),
    };
    Ok(sum.scale(&BigRational::new(BigInt::one(), BigInt::from(classes.group_order()))))
}

/// `⟨α, β⟩` as an integer, or `NotACharacter` when it is not one.
pub fn integer_inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<i64> {
    let v = inner_product(a, b)?;
    v.to_i64().ok_or_else(|| Error::NotACharacter(format!("inner product {v} is not an integer")))
}

/// Restriction to a subgroup, transported along the cached class fusion.
pub fn restrict(chi: &ClassFunction, s: &SubgroupHandle) -> Result<ClassFunction> {
    if chi.group_id != s.parent().id() {
        return Err(Error::GroupMismatch);
    }
    let fusion = s.fusion()?;
    let values = fusion.iter().map(|&c| chi.values[c].clone()).collect();
    Ok(ClassFunction::from_parts(s.group().id(), conjugacy_classes(s.group())?, values))
}

/// Induction to the parent by the class-intersection formula
/// `γ^G(g_i) = |C_G(g_i)|/|H| Σ_{h ∈ class_i ∩ H} γ(h)`.
pub fn induce(gamma: &ClassFunction, h: &SubgroupHandle) -> Result<ClassFunction> {
    if gamma.group_id != h.group().id() {
        return Err(Error::GroupMismatch);
    }
    let top = conjugacy_classes(h.parent())?;
    let fusion = h.fusion()?;
    let own = &gamma.classes;
    let e = common_conductor(&gamma.values);
    let fast: Option<Vec<RootSum>> = gamma.values.iter().map(|v| RootSum::from_cyclotomic(v, e)).collect();
    let sums: Vec<Cyclotomic> = match fast {
        Some(rs) => {
            let mut acc = vec![RootSum::zero(e); top.len()];
            for (j, r) in rs.iter().enumerate() {
                acc[fusion[j]].add_scaled(own.size(j) as i128, r);
            }
            acc.iter().map(|a| a.to_cyclotomic()).collect()
        }
        None => {
            let mut acc = vec![Cyclotomic::zero(); top.len()];
            for (j, v) in gamma.values.iter().enumerate() {
                acc[fusion[j]] = acc[fusion[j]].add(&v.scale_int(own.size(j) as i64));
            }
            acc
        }
    };
    let hord = BigInt::from(h.order());
    let values = sums
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if s.is_zero() {
                return Cyclotomic::zero();
            }
            s.scale(&BigRational::new(BigInt::from(top.centralizer_order(i)), hord.clone()))
        })
        .collect();
    Ok(ClassFunction::from_parts(h.parent().id(), top, values))
}

/// Multiplicities `⟨χ, χ_i⟩` against every irreducible; integers, possibly
/// negative for virtual characters.
pub fn virtual_multiplicities(chi: &ClassFunction, table: &CharacterTable) -> Result<Vec<i64>> {
    if chi.group_id != table.group_id() {
        return Err(Error::GroupMismatch);
    }
    table.irreducibles().iter().map(|irr| integer_inner_product(chi, irr)).collect()
}

/// Decomposition of a character into irreducibles, verified by exact
/// reconstruction.
pub fn constituents(chi: &ClassFunction, table: &CharacterTable) -> Result<ConstituentList> {
    let mults = virtual_multiplicities(chi, table)?;
    if let Some((i, m)) = mults.iter().enumerate().find(|(_, &m)| m < 0) {
        return Err(Error::NotACharacter(format!("constituent {i} has multiplicity {m}")));
    }
    let mut rebuilt = vec![Cyclotomic::zero(); chi.len()];
    for (i, &m) in mults.iter().enumerate() {
        if m == 0 {
            continue;
        }
        for (c, v) in table.irr(i).values().iter().enumerate() {
            rebuilt[c] = rebuilt[c].add(&v.scale_int(m));
        }
    }
    if rebuilt != chi.values {
        return Err(Error::NotACharacter("not a combination of irreducibles".into()));
    }
    Ok(mults.into_iter().enumerate().filter(|(_, m)| *m > 0).map(|(i, m)| (i, m as u64)).collect())
}

/// True iff `⟨χ, χ⟩ = 1` for a character `χ`.
pub fn is_irreducible(chi: &ClassFunction) -> Result<bool> {
    let n = inner_product(chi, chi)?;
    match n.to_rational() {
        Some(q) if q.is_integer() && q.is_positive() => Ok(q.is_one()),
        _ => Err(Error::NotACharacter(format!("⟨χ, χ⟩ = {n}"))),
    }
}

/// `{g : χ(g) = χ(1)}` as a subgroup of `g`.
pub fn kernel(chi: &ClassFunction, g: &Arc<PermGroup>) -> Result<SubgroupHandle> {
    if chi.group_id != g.id() {
        return Err(Error::GroupMismatch);
    }
    if chi.degree().to_i64().filter(|&d| d > 0).is_none() {
        return Err(Error::NotACharacter(format!("degree {}", chi.degree())));
    }
    let classes = &chi.classes;
    let inside: Vec<bool> = chi.values.iter().map(|v| v == chi.degree()).collect();
    let table = g.elements()?;
    let group = PermGroup::generated_by(
        g.degree(),
        table.elements().iter().enumerate().filter(|(i, _)| inside[classes.class_of_index(*i)]).map(|(_, x)| x),
    );
    let handle = SubgroupHandle::from_parts(g.clone(), Arc::new(group));
    let size: u64 = (0..classes.len()).filter(|&i| inside[i]).map(|i| classes.size(i)).sum();
    if handle.order() != size {
        return Err(Error::NotACharacter("kernel classes do not form a subgroup".into()));
    }
    Ok(handle)
}

/// True iff `χ - ψ` has only nonnegative multiplicities; either may be virtual.
pub fn contains_character(chi: &ClassFunction, psi: &ClassFunction, table: &CharacterTable) -> Result<bool> {
    chi.check_same(psi)?;
    let diff = chi.sub(psi)?;
    Ok(virtual_multiplicities(&diff, table)?.iter().all(|&m| m >= 0))
}

/// Regular character of a group as a combination of its irreducibles.
pub fn regular_from_table(table: &CharacterTable) -> ClassFunction {
    let first = table.irr(0);
    let mut values = vec![Cyclotomic::zero(); first.len()];
    values[0] = Cyclotomic::from_int(table.group_order() as i64);
    ClassFunction::from_parts(first.group_id, first.classes.clone(), values)
}

fn check_central(z: &SubgroupHandle) -> Result<()> {
    let central = z.generators().iter().all(|x| z.parent().generators().iter().all(|g| g.commutes_with(x)));
    if central {
        Ok(())
    } else {
        Err(Error::NotCentral)
    }
}

/// `χ|_Z = χ(1)·λ` for a central subgroup `Z` and a class function `λ` of `Z`.
pub fn lies_over(chi: &ClassFunction, z: &SubgroupHandle, lambda: &ClassFunction) -> Result<bool> {
    check_central(z)?;
    if lambda.group_id != z.group().id() {
        return Err(Error::GroupMismatch);
    }
    let res = restrict(chi, z)?;
    let d = chi.degree();
    Ok(res.values.iter().zip(&lambda.values).all(|(a, b)| *a == b.mul(d)))
}

/// The class function `χ_1 ⋯ χ_n` of the central product, where `χ_i` is a
/// class function of factor `i` and every `χ_i` lies over `λ` (a class
/// function of the amalgamated centre).
pub fn central_product_character(
    cp: &CentralProduct,
    parts: &[ClassFunction],
    lambda: &ClassFunction,
) -> Result<ClassFunction> {
    let n = cp.factors().len();
    if parts.len() != n {
        return Err(Error::DimensionMismatch(format!("{} parts for {n} factors", parts.len())));
    }
    let zc = cp.center();
    if lambda.group_id != zc.group().id() {
        return Err(Error::GroupMismatch);
    }
    let zclasses = conjugacy_classes(zc.group())?;
    let e_group = cp.group();
    for (i, (x, chi)) in cp.factors().iter().zip(parts).enumerate() {
        if chi.group_id != x.id() {
            return Err(Error::GroupMismatch);
        }
        let xclasses = &chi.classes;
        let d = chi.degree();
        for y in x.elements()?.elements() {
            let img = cp.embed_element(i, y)?;
            if !zc.contains(&img) {
                continue;
            }
            let zc_i = zclasses.class_of_element(zc.group(), &img).expect("centre element");
            let xc = xclasses.class_of_element(x, y).expect("factor element");
            if chi.values[xc] != lambda.values[zc_i].mul(d) {
                return Err(Error::IncompatibleCentralCharacter(i));
            }
        }
    }
    let eclasses = conjugacy_classes(e_group)?;
    let mut values = Vec::with_capacity(eclasses.len());
    for rep in eclasses.reps() {
        let pre = cp.quotient().section(rep)?;
        let mut v = Cyclotomic::one();
        for (i, (x, chi)) in cp.factors().iter().zip(parts).enumerate() {
            let xi = cp.factor_part(i, &pre);
            let c = chi.classes.class_of_element(x, &xi).ok_or_else(|| Error::NotMember(xi.to_string()))?;
            v = v.mul(&chi.values[c]);
        }
        values.push(v);
    }
    Ok(ClassFunction::from_parts(e_group.id(), eclasses, values))
}

/// Frobenius reciprocity `⟨γ^G, χ⟩_G = ⟨γ, χ|_H⟩_H` against every
/// irreducible of the parent.
pub fn frobenius_reciprocity_holds(gamma: &ClassFunction, h: &SubgroupHandle) -> Result<bool> {
    let table = compute_character_table(h.parent())?;
    let up = induce(gamma, h)?;
    for chi in table.irreducibles() {
        if inner_product(&up, chi)? != inner_product(gamma, &restrict(chi, h)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Irreducibles of a subgroup as class functions on its own group.
pub fn subgroup_irreducibles(h: &SubgroupHandle) -> Result<Arc<CharacterTable>> {
    compute_character_table(h.group())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_and_trivial() {
        let a5 = Arc::new(PermGroup::alternating(5));
        let t = compute_character_table(&a5).unwrap();
        let reg = ClassFunction::regular(&a5).unwrap();
        for chi in t.irreducibles() {
            assert_eq!(inner_product(&reg, chi).unwrap(), chi.degree().clone());
            assert!(is_irreducible(chi).unwrap());
        }
        let pi = ClassFunction::permutation_character(&a5).unwrap();
        let one = ClassFunction::trivial(&a5).unwrap();
        assert_eq!(inner_product(&one, &pi).unwrap(), Cyclotomic::one());
        assert!(!is_irreducible(&reg).unwrap());
        assert_eq!(kernel(&one, &a5).unwrap().order(), 60);
        assert_eq!(kernel(t.irr(1), &a5).unwrap().order(), 1);
    }

    #[test]
    fn induce_from_trivial_subgroup() {
        let s4 = Arc::new(PermGroup::symmetric(4));
        let h = SubgroupHandle::trivial(s4.clone());
        let one = ClassFunction::trivial(h.group()).unwrap();
        let up = induce(&one, &h).unwrap();
        assert_eq!(up, ClassFunction::regular(&s4).unwrap());
        let whole = SubgroupHandle::whole(s4.clone());
        let t = compute_character_table(&s4).unwrap();
        assert_eq!(induce(t.irr(3), &whole).unwrap(), *t.irr(3));
        assert!(frobenius_reciprocity_holds(&one, &h).unwrap());
    }
}
