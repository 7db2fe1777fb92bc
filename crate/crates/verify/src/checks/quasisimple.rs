//! Characters induced from Sylow preimages `H ≥ Z(G)` in quasisimple groups.

use std::collections::BTreeSet;
use std::sync::Arc;

use charind::charops::{constituents, induce, inner_product, restrict, ClassFunction, ConstituentList};
use charind::chartab::{compute_character_table, CharacterTable, Cyclotomic};
use charind::structure::{center, is_nilpotent, p_part, sylow_subgroup};
use charind::{PermGroup, Result, SubgroupHandle};
use num_integer::Integer;

use super::{describe, subgroup, Outcome};

/// `H = P Z(G)` for `P ∈ Syl_p(G)`: the preimage of a Sylow subgroup of
/// `G/Z(G)`. All such preimages are conjugate.
struct Preimage {
    h: SubgroupHandle,
    z: SubgroupHandle,
    p: SubgroupHandle,
}

fn sylow_preimage(g: &Arc<PermGroup>, p: u64) -> Result<Preimage> {
    let z = center(g)?;
    let sylow = sylow_subgroup(g, p)?;
    let gens = sylow.generators().iter().chain(z.generators()).cloned().collect();
    let h = subgroup(g, gens)?;
    debug_assert_eq!(h.order() / z.order(), p_part(g.order() / z.order(), p));
    Ok(Preimage { h, z, p: sylow })
}

fn constituent_degrees(table: &CharacterTable, cons: &ConstituentList) -> Vec<(u64, u64)> {
    cons.iter().map(|&(i, m)| (table.degree(i), m)).collect()
}

fn distinct_degrees(table: &CharacterTable, cons: &ConstituentList) -> BTreeSet<u64> {
    cons.iter().map(|&(i, _)| table.degree(i)).collect()
}

/// Every `γ^G`, `γ ∈ Irr(H)`, has constituents of two different degrees.
pub fn check_theorem_qs(g: &Arc<PermGroup>, p: u64) -> Result<Outcome> {
    let mut out = Outcome::new();
    let pre = sylow_preimage(g, p)?;
    out.put("p", p);
    out.put("h_order", pre.h.order());
    if !is_nilpotent(pre.h.group()) {
        out.put("h_not_nilpotent", 1);
        out.put("characters", 0);
        out.summarize(format!("H = {} is not nilpotent; hypothesis vacuous", describe(&pre.h)));
        return Ok(out);
    }
    out.put("h_not_nilpotent", 0);
    let table = compute_character_table(g)?;
    let sub = compute_character_table(pre.h.group())?;
    let mut fewest = usize::MAX;
    for (i, gamma) in sub.irreducibles().iter().enumerate() {
        let cons = constituents(&induce(gamma, &pre.h)?, &table)?;
        let distinct = distinct_degrees(&table, &cons);
        fewest = fewest.min(distinct.len());
        if distinct.len() < 2 {
            out.fail(format!(
                "H = {}, gamma = X.{} of degree {}: gamma^G has constituent (degree, multiplicity) {:?}",
                describe(&pre.h),
                i + 1,
                gamma.degree_u64(),
                constituent_degrees(&table, &cons)
            ));
        }
    }
    out.put("characters", sub.len());
    out.put("fewest_distinct_degrees", fewest);
    out.summarize(format!(
        "H = {}: all {} induced characters have at least {fewest} distinct constituent degrees",
        describe(&pre.h),
        sub.len()
    ));
    Ok(out)
}

/// The character `γ` of `H = P × Z(G)` trivial on `P` and faithful on
/// `Z(G)`.
fn remark_character(pre: &Preimage) -> Result<Option<ClassFunction>> {
    let sub = compute_character_table(pre.h.group())?;
    let in_h_p = SubgroupHandle::from_group(pre.h.group().clone(), pre.p.group().clone())?;
    let in_h_z = SubgroupHandle::from_group(pre.h.group().clone(), pre.z.group().clone())?;
    for gamma in sub.irreducibles() {
        if gamma.degree_u64() != 1 {
            continue;
        }
        let on_p = restrict(gamma, &in_h_p)?;
        let on_z = restrict(gamma, &in_h_z)?;
        let trivial_on_p = on_p.values().iter().all(|v| *v == Cyclotomic::one());
        let faithful_on_z = on_z.values().iter().skip(1).all(|v| *v != Cyclotomic::one());
        if trivial_on_p && faithful_on_z {
            return Ok(Some(gamma.clone()));
        }
    }
    Ok(None)
}

/// For `γ = 1_P × λ` with `λ` faithful on `Z(G)`, `γ^G` is `mult` times the
/// sum of `count` distinct irreducibles of degree `degree`.
pub fn check_remark(g: &Arc<PermGroup>, p: u64, count: usize, degree: u64, mult: u64) -> Result<Outcome> {
    let mut out = Outcome::new();
    let pre = sylow_preimage(g, p)?;
    out.put("p", p);
    out.put("h_order", pre.h.order());
    let Some(gamma) = remark_character(&pre)? else {
        out.fail(format!("H = {} has no linear character trivial on P and faithful on Z(G)", describe(&pre.h)));
        return Ok(out);
    };
    let table = compute_character_table(g)?;
    let up = induce(&gamma, &pre.h)?;
    let cons = constituents(&up, &table)?;
    let degs = constituent_degrees(&table, &cons);
    let expected = vec![(degree, mult); count];
    if degs != expected {
        out.fail(format!(
            "H = {}: gamma^G has (degree, multiplicity) {degs:?}, expected {expected:?}",
            describe(&pre.h)
        ));
    }
    let index = g.order() / pre.h.order();
    if up.degree_u64() != index {
        out.fail(format!("gamma^G has degree {}, not |G:H| = {index}", up.degree_u64()));
    }
    let names: Vec<String> = cons.iter().map(|&(i, m)| format!("{m}*X.{}", i + 1)).collect();
    out.put("index", index);
    out.put("constituents", format!("{degs:?}"));
    out.summarize(format!("gamma^G = {} with degrees {degs:?}", names.join(" + ")));
    Ok(out)
}

/// Smallest `k ≥ 1` with `x^k ∈ Z`.
fn order_mod(x: &charind::Permutation, z: &PermGroup) -> u64 {
    let mut k = 1;
    let mut y = x.clone();
    while !z.contains(&y) {
        y = y.mul(x);
        k += 1;
    }
    k
}

/// Whether `{a, b}` is stable under `Gal(Q_e/Q)` with `b` conjugate to `a`.
fn galois_pair(a: &Cyclotomic, b: &Cyclotomic, e: u64) -> bool {
    let units: Vec<u64> = (1..=e.max(1)).filter(|k| k.gcd(&e) == 1).collect();
    let conjugate = units.iter().any(|&k| a.galois(k) == *b);
    let stable = units.iter().all(|&k| {
        let (x, y) = (a.galois(k), b.galois(k));
        (x == *a || x == *b) && (y == *a || y == *b)
    });
    conjugate && stable
}

/// For `γ ∈ Irr(H)` whose `γ^G` has constituents of one degree `D`:
/// vanishing off the conjugates of `H` and on cosets of `p'`-order,
/// `α + α* = 0` at vanishing classes where the degree-`D` values are
/// `{α, α*}`, and one degree over `γ|_P` and `γ|_Z` when `p ∤ |Z|`.
pub fn check_lemma_key(g: &Arc<PermGroup>, p: u64) -> Result<Outcome> {
    let mut out = Outcome::new();
    let pre = sylow_preimage(g, p)?;
    out.put("p", p);
    out.put("h_order", pre.h.order());
    if !is_nilpotent(pre.h.group()) {
        out.put("equal_degree_characters", 0);
        out.summarize(format!("H = {} is not nilpotent; hypothesis vacuous", describe(&pre.h)));
        return Ok(out);
    }
    let table = compute_character_table(g)?;
    let classes = table.classes().clone();
    let sub = compute_character_table(pre.h.group())?;
    let fused: BTreeSet<usize> = pre.h.fusion()?.iter().copied().collect();
    let central: Vec<bool> = classes.reps().iter().map(|r| pre.z.contains(r)).collect();
    let coprime = p_part(pre.z.order(), p) == 1;
    let (in_h_p, in_h_z, in_g_p, in_g_z) = (
        SubgroupHandle::from_group(pre.h.group().clone(), pre.p.group().clone())?,
        SubgroupHandle::from_group(pre.h.group().clone(), pre.z.group().clone())?,
        SubgroupHandle::from_group(g.clone(), pre.p.group().clone())?,
        SubgroupHandle::from_group(g.clone(), pre.z.group().clone())?,
    );
    let (mut equal, mut vanish_checks, mut pair_checks, mut pair_vanishing, mut over_checks) = (0, 0, 0, 0, 0);
    for (i, gamma) in sub.irreducibles().iter().enumerate() {
        let up = induce(gamma, &pre.h)?;
        let cons = constituents(&up, &table)?;
        let degrees = distinct_degrees(&table, &cons);
        if degrees.len() != 1 {
            continue;
        }
        equal += 1;
        let d = *degrees.iter().next().unwrap();
        let label = format!("H = {}, gamma = X.{}, D = {d}", describe(&pre.h), i + 1);
        for c in 0..classes.len() {
            if central[c] {
                continue;
            }
            let outside = !fused.contains(&c);
            let p_prime = order_mod(classes.rep(c), pre.z.group()).gcd(&p) == 1;
            if outside || p_prime {
                vanish_checks += 1;
                if !up.value(c).is_zero() {
                    out.fail(format!(
                        "{label}: gamma^G = {} at class {} (outside conjugates of H: {outside}, p'-coset: {p_prime})",
                        up.value(c),
                        c + 1
                    ));
                }
            }
            let mut values: Vec<&Cyclotomic> = Vec::new();
            for j in (0..table.len()).filter(|&j| table.degree(j) == d) {
                if !values.contains(&table.value(j, c)) {
                    values.push(table.value(j, c));
                }
            }
            let pair = match values.as_slice() {
                [a] => Some(((*a).clone(), (*a).clone())),
                [a, b] if galois_pair(a, b, table.exponent() as u64) => Some(((*a).clone(), (*b).clone())),
                _ => None,
            };
            if let Some((a, b)) = pair {
                pair_checks += 1;
                if up.value(c).is_zero() {
                    pair_vanishing += 1;
                    if !a.add(&b).is_zero() {
                        out.fail(format!(
                            "{label}: gamma^G vanishes at class {} where degree-{d} values are {{{a}, {b}}} with nonzero sum",
                            c + 1
                        ));
                    }
                }
            }
        }
        if coprime {
            let gp = restrict(gamma, &in_h_p)?;
            let gz = restrict(gamma, &in_h_z)?;
            let mut over = BTreeSet::new();
            for chi in table.irreducibles() {
                if !inner_product(&restrict(chi, &in_g_p)?, &gp)?.is_zero()
                    && !inner_product(&restrict(chi, &in_g_z)?, &gz)?.is_zero()
                {
                    over.insert(chi.degree_u64());
                }
            }
            over_checks += 1;
            if over.len() > 1 {
                out.fail(format!("{label}: irreducibles over gamma|P and gamma|Z have degrees {over:?}"));
            }
        }
    }
    out.put("characters", sub.len());
    out.put("equal_degree_characters", equal);
    out.put("vanishing_checks", vanish_checks);
    out.put("pair_checks", pair_checks);
    out.put("pair_vanishing", pair_vanishing);
    out.put("over_checks", over_checks);
    out.summarize(format!(
        "{equal} of {} characters of H = {} induce with equal constituent degrees",
        sub.len(),
        describe(&pre.h)
    ));
    Ok(out)
}
