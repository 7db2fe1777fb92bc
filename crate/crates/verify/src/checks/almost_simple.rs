//! Orders of nilpotent subgroups of almost simple and symmetric groups.

use std::sync::Arc;

use charind::catalog::solvable_residual;
use charind::structure::{max_nilpotent_order, maximal_nilpotent_classes, nilpotent_subgroup_classes, p_part};
use charind::{PermGroup, Result};

use super::{describe, describe_group, intersection, prime_of_power, Outcome};

/// `m(X)^2 < |X|`.
pub fn check_theorem_c(x: &Arc<PermGroup>) -> Result<Outcome> {
    let mut out = Outcome::new();
    let (m, y) = max_nilpotent_order(x, None)?;
    let order = x.order();
    if (m as u128) * (m as u128) >= order as u128 {
        out.fail(format!("Y = {} has |Y|^2 = {} >= |X| = {order}", describe(&y), m * m));
    }
    out.put("m", m);
    out.put("order", order);
    out.summarize(format!("m = {m}, m^2 = {} < {order}; Y = {}", m * m, describe(&y)));
    Ok(out)
}

/// For nilpotent `Y` with `Y ∩ S` a `p`-group: `2|Y|^2 <= |X|`, except
/// when `S` is on the exceptional list and `Y ∩ S ∈ Syl_p(S)` (with
/// `p = 2` for the two alternating socles).
pub fn check_theorem_almost_simple(
    x: &Arc<PermGroup>,
    socle_in_list: bool,
    socle_alternating: bool,
) -> Result<Outcome> {
    let mut out = Outcome::new();
    let s = solvable_residual(x);
    let order = x.order() as u128;
    let all = nilpotent_subgroup_classes(x)?;
    let maximal = maximal_nilpotent_classes(x)?;
    let (mut in_hypothesis, mut exceptions) = (0, Vec::new());
    for y in &all {
        let ys = intersection(y.group(), &s);
        let Some(p) = prime_of_power(ys.order()) else { continue };
        in_hypothesis += 1;
        let yo = y.order() as u128;
        if 2 * yo * yo <= order {
            continue;
        }
        let sylow = p > 1 && ys.order() == p_part(s.order(), p);
        let ok = socle_in_list && sylow && (!socle_alternating || p == 2);
        let w = format!("Y = {} with 2|Y|^2 = {} > {order}, Y ∩ S = {}", describe(y), 2 * yo * yo, describe_group(&ys));
        if ok {
            exceptions.push(format!("|Y| = {}, |Y ∩ S| = {} (p = {p})", y.order(), ys.order()));
        } else {
            out.fail(format!("{w}: not an allowed exception (socle on list: {socle_in_list}, Sylow: {sylow})"));
        }
    }
    let mut maximal_orders: Vec<u64> = maximal.iter().map(|y| y.order()).collect();
    maximal_orders.sort_unstable();
    out.put("nilpotent_classes", all.len());
    out.put("in_hypothesis", in_hypothesis);
    out.put("maximal_orders", format!("{maximal_orders:?}"));
    out.put("exceptions", exceptions.len());
    out.put("socle_order", s.order());
    out.summarize(if exceptions.is_empty() {
        format!("2|Y|^2 <= |X| for all {in_hypothesis} classes with Y ∩ S of prime-power order")
    } else {
        format!("list exceptions: {}", exceptions.join(", "))
    });
    Ok(out)
}

/// A nilpotent subgroup of `Sym(k)` has order at most `2^(k-1)`.
pub fn check_dixon_bound(x: &Arc<PermGroup>, k: usize) -> Result<Outcome> {
    let mut out = Outcome::new();
    let bound = 1u64 << (k.max(1) - 1);
    let maximal = maximal_nilpotent_classes(x)?;
    for y in &maximal {
        if y.order() > bound {
            out.fail(format!("Y = {} exceeds 2^{} = {bound}", describe(y), k - 1));
        }
    }
    let m = maximal.iter().map(|y| y.order()).max().unwrap_or(1);
    out.put("k", k);
    out.put("bound", bound);
    out.put("m", m);
    out.summarize(format!("m = {m} <= 2^{} = {bound} over {} maximal classes", k.max(1) - 1, maximal.len()));
    Ok(out)
}
