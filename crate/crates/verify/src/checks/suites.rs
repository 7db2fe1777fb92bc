//! Irreducible induction from nilpotent subgroups of arbitrary groups.

use std::sync::Arc;

use charind::chartab::compute_character_table;
use charind::perm::subnormal_depth;
use charind::structure::{
    center, fitting, generalized_fitting, is_nilpotent, maximal_nilpotent_classes, nilpotent_subgroup_classes,
    normal_subgroups, sylow_subgroup,
};
use charind::{PermGroup, Result, SubgroupHandle};

use super::{describe, irreducible_induction, Outcome};

/// Irreducibly inducing `(index in Irr(H), induced degree)` pairs.
fn inducing(h: &SubgroupHandle) -> Result<Vec<(usize, u64)>> {
    let table = compute_character_table(h.group())?;
    let mut out = Vec::new();
    for (i, gamma) in table.irreducibles().iter().enumerate() {
        if let Some(up) = irreducible_induction(gamma, h)? {
            out.push((i, up.degree_u64()));
        }
    }
    Ok(out)
}

/// Over every nilpotent `H` and `γ ∈ Irr(H)` with `γ^G` irreducible:
/// `F*(G) = F(G)`, and `F*(G) ⊆ H` when `H` is maximal nilpotent.
pub fn check_theorem_a(g: &Arc<PermGroup>) -> Result<Outcome> {
    let mut out = Outcome::new();
    let f = fitting(g)?;
    let fstar = generalized_fitting(g)?;
    let all = nilpotent_subgroup_classes(g)?;
    let maximal = maximal_nilpotent_classes(g)?;
    let mut witnesses = 0;
    for h in &all {
        for (i, d) in inducing(h)? {
            witnesses += 1;
            if f.order() != fstar.order() {
                out.fail(format!(
                    "H = {}, gamma = X.{} induces irreducibly (degree {d}) but |F(G)| = {} < |F*(G)| = {}",
                    describe(h),
                    i + 1,
                    f.order(),
                    fstar.order()
                ));
            }
        }
    }
    let mut maximal_witnesses = 0;
    for h in &maximal {
        for (i, d) in inducing(h)? {
            maximal_witnesses += 1;
            if !h.group().contains_group(fstar.group()) {
                out.fail(format!(
                    "H = {}, gamma = X.{} induces irreducibly (degree {d}) but F*(G) = {} is not contained in H",
                    describe(h),
                    i + 1,
                    describe(&fstar)
                ));
            }
        }
    }
    out.put("nilpotent_classes", all.len());
    out.put("maximal_classes", maximal.len());
    out.put("witnesses", witnesses);
    out.put("maximal_witnesses", maximal_witnesses);
    out.put("fitting_order", f.order());
    out.put("generalized_fitting_order", fstar.order());
    out.summarize(format!(
        "{witnesses} inducing pairs over {} nilpotent classes, {maximal_witnesses} over {} maximal ones; |F| = {}, |F*| = {}",
        all.len(),
        maximal.len(),
        f.order(),
        fstar.order()
    ));
    Ok(out)
}

/// For `P ∈ Syl_p(G)` and `γ ∈ Irr(P)` with `γ^G` irreducible, `Z(P)` is
/// subnormal in `G`.
pub fn check_corollary_b(g: &Arc<PermGroup>, p: u64) -> Result<Outcome> {
    let mut out = Outcome::new();
    let sylow = sylow_subgroup(g, p)?;
    let zp = center(sylow.group())?;
    let pairs = inducing(&sylow)?;
    let depth = if pairs.is_empty() { None } else { Some(subnormal_depth(g, zp.group())?) };
    if let Some(None) = depth {
        let (i, d) = pairs[0];
        out.fail(format!(
            "P = {}, gamma = X.{} induces irreducibly (degree {d}) but Z(P) = {} is not subnormal",
            describe(&sylow),
            i + 1,
            describe(&zp)
        ));
    }
    out.put("p", p);
    out.put("sylow_order", sylow.order());
    out.put("center_order", zp.order());
    out.put("witnesses", pairs.len());
    if let Some(Some(k)) = depth {
        out.put("subnormal_depth", k);
    }
    out.summarize(format!(
        "p = {p}: {} of {} characters of P = {} induce irreducibly",
        pairs.len(),
        compute_character_table(sylow.group())?.len(),
        describe(&sylow)
    ));
    Ok(out)
}

/// For nilpotent `H`, nilpotent `N ⊴ G` and `γ ∈ Irr(H)` with `γ^{HN}`
/// irreducible, `HN` is nilpotent. Pairs with `HN` nilpotent satisfy the
/// conclusion outright; the others are checked to admit no such `γ`.
pub fn check_nilpotent_extension(g: &Arc<PermGroup>) -> Result<Outcome> {
    let mut out = Outcome::new();
    let all = nilpotent_subgroup_classes(g)?;
    let lattice = normal_subgroups(g)?;
    let normals: Vec<&SubgroupHandle> = lattice.members().iter().filter(|n| is_nilpotent(n.group())).collect();
    let (mut pairs, mut contained, mut nilpotent_products, mut checked) = (0, 0, 0, 0);
    for h in &all {
        for n in &normals {
            pairs += 1;
            if h.group().contains_group(n.group()) {
                contained += 1;
                continue;
            }
            let gens = h.generators().iter().chain(n.generators()).cloned().collect();
            let hn = Arc::new(PermGroup::new(g.degree(), gens)?);
            if is_nilpotent(&hn) {
                nilpotent_products += 1;
                continue;
            }
            checked += 1;
            let inner = SubgroupHandle::from_group(hn.clone(), h.group().clone())?;
            for (i, d) in inducing(&inner)? {
                out.fail(format!(
                    "H = {}, N = {}, gamma = X.{} induces irreducibly (degree {d}) to HN of order {}, which is not nilpotent",
                    describe(h),
                    describe(n),
                    i + 1,
                    hn.order()
                ));
            }
        }
    }
    out.put("nilpotent_classes", all.len());
    out.put("nilpotent_normal", normals.len());
    out.put("pairs", pairs);
    out.put("pairs_n_in_h", contained);
    out.put("pairs_hn_nilpotent", nilpotent_products);
    out.put("pairs_hn_not_nilpotent", checked);
    out.summarize(format!(
        "{pairs} pairs (H, N): {contained} with N <= H, {nilpotent_products} with HN nilpotent, {checked} checked to admit no irreducibly inducing character"
    ));
    Ok(out)
}
