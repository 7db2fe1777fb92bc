//! Induction in central products: `(γ_1 ⋯ γ_n)^E = γ_1^{X_1} ⋯ γ_n^{X_n}`.

use std::sync::Arc;

use charind::charops::{central_product_character, induce, ClassFunction};
use charind::chartab::{compute_character_table, Cyclotomic};
use charind::structure::{conjugacy_classes, is_nilpotent, nilpotent_subgroup_classes, CentralProduct};
use charind::{PermGroup, Permutation, Result, SubgroupHandle};

use super::{describe_group, Outcome};

/// Subgroups `Z_i ≤ K ≤ X_i` considered for factor `i`: the nilpotent
/// class representatives containing `Z_i`, and `X_i` itself.
fn candidates(x: &Arc<PermGroup>, zi: &PermGroup) -> Result<Vec<Arc<PermGroup>>> {
    let mut out: Vec<Arc<PermGroup>> = nilpotent_subgroup_classes(x)?
        .into_iter()
        .filter(|k| k.group().contains_group(zi))
        .map(|k| k.group().clone())
        .collect();
    if !is_nilpotent(x) {
        out.push(x.clone());
    }
    Ok(out)
}

/// Elements of `X_i` mapping into the amalgamated centre, with the class
/// of their image there.
fn central_elements(cp: &CentralProduct, i: usize) -> Result<Vec<(Permutation, usize)>> {
    let z = cp.center().group();
    let zc = conjugacy_classes(z)?;
    let x = &cp.factors()[i];
    let mut out = Vec::new();
    for y in x.elements()?.elements() {
        let img = cp.embed_element(i, y)?;
        if z.contains(&img) {
            out.push((y.clone(), zc.class_of_element(z, &img).expect("central element")));
        }
    }
    Ok(out)
}

/// `Irr(K | λ)`: irreducibles of `K` restricting to a multiple of `λ` on `Z_i`.
fn lying_over(
    k: &Arc<PermGroup>,
    central: &[(Permutation, usize)],
    lambda: &ClassFunction,
) -> Result<Vec<ClassFunction>> {
    let table = compute_character_table(k)?;
    let classes = conjugacy_classes(k)?;
    Ok(table
        .irreducibles()
        .iter()
        .filter(|gamma| {
            let d = gamma.degree();
            central.iter().all(|(y, zc)| {
                let c = classes.class_of_element(k, y).expect("Z_i lies in K");
                *gamma.value(c) == lambda.value(*zc).mul(d)
            })
        })
        .cloned()
        .collect())
}

/// `γ_1 ⋯ γ_n` as a class function of `K_1 ∘ ⋯ ∘ K_n ≤ E`.
fn product_on(
    cp: &CentralProduct,
    k: &Arc<PermGroup>,
    ks: &[Arc<PermGroup>],
    parts: &[ClassFunction],
) -> Result<ClassFunction> {
    let classes = conjugacy_classes(k)?;
    let mut values = Vec::with_capacity(classes.len());
    for rep in classes.reps() {
        let pre = cp.quotient().section(rep)?;
        let mut v = Cyclotomic::one();
        for (i, (ki, gamma)) in ks.iter().zip(parts).enumerate() {
            let xi = cp.factor_part(i, &pre);
            let c =
                gamma.classes().class_of_element(ki, &xi).ok_or_else(|| charind::Error::NotMember(xi.to_string()))?;
            v = v.mul(gamma.value(c));
        }
        values.push(v);
    }
    ClassFunction::new(k, values)
}

/// Both sides of the central-product induction identity over the first
/// `budget` tuples `(K_1, .., K_n)`, every `λ ∈ Irr(Z)` and every choice
/// of `γ_i ∈ Irr(K_i | λ)`.
pub fn check_central_product_induction(cp: &CentralProduct, budget: usize) -> Result<Outcome> {
    let mut out = Outcome::new();
    let n = cp.factors().len();
    let e = cp.group();
    let z = cp.center().group();
    let lambdas = compute_character_table(z)?;
    let mut centrals = Vec::with_capacity(n);
    let mut cands = Vec::with_capacity(n);
    for i in 0..n {
        let central = central_elements(cp, i)?;
        let zi = PermGroup::new(cp.factors()[i].degree(), central.iter().map(|(y, _)| y.clone()).collect())?;
        cands.push(candidates(&cp.factors()[i], &zi)?);
        centrals.push(central);
    }
    let total: usize = cands.iter().map(|c| c.len()).product();
    let mut tuples = Vec::new();
    let mut idx = vec![0usize; n];
    while tuples.len() < budget.min(total) {
        tuples.push(idx.clone());
        for i in (0..n).rev() {
            idx[i] += 1;
            if idx[i] < cands[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
    let mut comparisons = 0u64;
    for t in &tuples {
        let ks: Vec<Arc<PermGroup>> = t.iter().enumerate().map(|(i, &j)| cands[i][j].clone()).collect();
        let mut gens = Vec::new();
        for (i, ki) in ks.iter().enumerate() {
            for y in ki.generators() {
                gens.push(cp.embed_element(i, y)?);
            }
        }
        let k = SubgroupHandle::new(e.clone(), gens)?;
        let handles: Vec<SubgroupHandle> = ks
            .iter()
            .enumerate()
            .map(|(i, ki)| SubgroupHandle::from_group(cp.factors()[i].clone(), ki.clone()))
            .collect::<Result<_>>()?;
        for lambda in lambdas.irreducibles() {
            let over: Vec<Vec<ClassFunction>> =
                (0..n).map(|i| lying_over(&ks[i], &centrals[i], lambda)).collect::<Result<_>>()?;
            let induced: Vec<Vec<ClassFunction>> = over
                .iter()
                .zip(&handles)
                .map(|(gs, h)| gs.iter().map(|g| induce(g, h)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            let count: usize = over.iter().map(|v| v.len()).product();
            let mut choice = vec![0usize; n];
            for _ in 0..count {
                let parts: Vec<ClassFunction> = (0..n).map(|i| over[i][choice[i]].clone()).collect();
                let ups: Vec<ClassFunction> = (0..n).map(|i| induced[i][choice[i]].clone()).collect();
                let lhs = induce(&product_on(cp, k.group(), &ks, &parts)?, &k)?;
                let rhs = central_product_character(cp, &ups, lambda)?;
                comparisons += 1;
                if lhs.values() != rhs.values() {
                    let kd: Vec<String> = ks.iter().map(|x| describe_group(x)).collect();
                    let degs: Vec<u64> = parts.iter().map(|g| g.degree_u64()).collect();
                    out.fail(format!(
                        "K = ({}), gamma degrees {degs:?}: induced product {:?} differs from product of induced {:?}",
                        kd.join(", "),
                        lhs.value_strings(),
                        rhs.value_strings()
                    ));
                }
                for i in (0..n).rev() {
                    choice[i] += 1;
                    if choice[i] < over[i].len() {
                        break;
                    }
                    choice[i] = 0;
                }
            }
        }
    }
    let sizes: Vec<usize> = cands.iter().map(|c| c.len()).collect();
    out.put("factors", n);
    out.put("candidates", format!("{sizes:?}"));
    out.put("tuples", tuples.len());
    out.put("tuples_total", total);
    out.put("comparisons", comparisons);
    out.summarize(format!(
        "{comparisons} exact comparisons over {} of {total} subgroup tuples and {} central characters",
        tuples.len(),
        lambdas.len()
    ));
    Ok(out)
}
