//! The individual checks. Each returns an [`Outcome`] or an engine error;
//! the runner turns errors into skipped records.

mod almost_simple;
mod central;
mod intro;
mod quasisimple;
mod suites;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::sync::Arc;

use charind::charops::{induce, is_irreducible, ClassFunction};
use charind::{PermGroup, Result, SubgroupHandle};

pub use almost_simple::{check_dixon_bound, check_theorem_almost_simple, check_theorem_c};
pub use central::check_central_product_induction;
pub use intro::check_intro_example;
pub use quasisimple::{check_lemma_key, check_remark, check_theorem_qs};
pub use suites::{check_corollary_b, check_nilpotent_extension, check_theorem_a};

/// Verdict, witness and payload of one check on one group.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    failures: Vec<String>,
    summary: String,
    pub data: BTreeMap<String, String>,
}

impl Outcome {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Display) {
        self.data.insert(key.to_string(), value.to_string());
    }

    /// Record a counterexample with everything needed to reproduce it.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.failures.push(witness.into());
    }

    pub fn summarize(&mut self, text: impl Into<String>) {
        self.summary = text.into();
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn witness(&self) -> String {
        if self.failures.is_empty() {
            self.summary.clone()
        } else {
            let mut w = self.failures.join("; ");
            if self.failures.len() > 1 {
                w = format!("{} failures: {w}", self.failures.len());
            }
            w
        }
    }
}

/// `<g1, g2, ..>` in cycle-list notation.
pub(crate) fn describe(h: &SubgroupHandle) -> String {
    format!("<{}> of order {}", h.generator_strings().join(", "), h.order())
}

pub(crate) fn describe_group(g: &PermGroup) -> String {
    let gens: Vec<String> = g.generators().iter().map(|x| x.to_cycle_string()).collect();
    format!("<{}> of order {}", gens.join(", "), g.order())
}

/// `γ^G` when it can be irreducible, `None` when `(γ(1)|G:H|)^2 > |G|`
/// already rules that out or it is reducible.
pub(crate) fn irreducible_induction(gamma: &ClassFunction, h: &SubgroupHandle) -> Result<Option<ClassFunction>> {
    let d = gamma.degree_u64() as u128 * (h.parent().order() / h.order()) as u128;
    if d * d > h.parent().order() as u128 {
        return Ok(None);
    }
    let up = induce(gamma, h)?;
    Ok(if is_irreducible(&up)? { Some(up) } else { None })
}

/// Subgroup generated by `gens` inside `parent`.
pub(crate) fn subgroup(parent: &Arc<PermGroup>, gens: Vec<charind::Permutation>) -> Result<SubgroupHandle> {
    SubgroupHandle::new(parent.clone(), gens)
}

/// `A ∩ B` for subgroups of a common group.
pub(crate) fn intersection(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    PermGroup::generated_by(small.degree(), small.chain_elements().iter().filter(|x| big.contains(x)))
}

/// The prime of a nontrivial prime power, `Some(1)` for 1, `None` otherwise.
pub(crate) fn prime_of_power(n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    let ps = charind::structure::prime_divisors(n);
    (ps.len() == 1).then(|| ps[0])
}
