//! `PSL(2,q)`, `q ≡ 3 (mod 4)`: a linear character of the Sylow normalizer
//! inducing an irreducible of degree `q + 1`.

use std::sync::Arc;

use charind::charops::{induce, integer_inner_product, is_irreducible, ClassFunction};
use charind::chartab::compute_character_table;
use charind::perm::normalizer;
use charind::structure::{is_nilpotent, sylow_subgroup};
use charind::{PermGroup, Result};

use super::{describe, Outcome};

pub fn check_intro_example(g: &Arc<PermGroup>, q: u64) -> Result<Outcome> {
    let mut out = Outcome::new();
    let sylow = sylow_subgroup(g, q)?;
    let h = normalizer(g, sylow.group())?;
    let expected = q * (q - 1) / 2;
    if h.order() != expected {
        out.fail(format!("N(P) = {} does not have order {expected}", describe(&h)));
    }
    if is_nilpotent(h.group()) {
        out.fail(format!("N(P) = {} is nilpotent", describe(&h)));
    }
    let table = compute_character_table(h.group())?;
    let mut inducing = Vec::new();
    let mut linear = 0;
    for (i, gamma) in table.irreducibles().iter().enumerate() {
        if gamma.degree_u64() != 1 {
            continue;
        }
        linear += 1;
        let up = induce(gamma, &h)?;
        if is_irreducible(&up)? && up.degree_u64() == q + 1 {
            inducing.push(i + 1);
        }
    }
    if inducing.is_empty() {
        out.fail(format!("no linear character of N(P) = {} induces irreducibly", describe(&h)));
    }
    let trivial_up = induce(&ClassFunction::trivial(h.group())?, &h)?;
    let g_trivial = ClassFunction::trivial(g)?;
    if is_irreducible(&trivial_up)? || integer_inner_product(&trivial_up, &g_trivial)? != 1 {
        out.fail("1_H^G is irreducible or does not contain 1_G exactly once".to_string());
    }
    out.put("q", q);
    out.put("normalizer_order", h.order());
    out.put("linear_characters", linear);
    out.put("inducing", inducing.len());
    out.put("degree", q + 1);
    out.summarize(format!(
        "N(P) = {} is not nilpotent; linear characters {} induce irreducibly of degree {}",
        describe(&h),
        inducing.iter().map(|i| format!("X.{i}")).collect::<Vec<_>>().join(", "),
        q + 1
    ));
    Ok(out)
}
