//! Exhaustive checks of statements about irreducible induction from
//! nilpotent subgroups, run over the group catalog.
//!
//! A run plans one task per (check, group, parameter), executes the tasks
//! on a thread pool and assembles a report ordered by (check, group).

pub mod checks;
pub mod report;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;

use charind::catalog::{Catalog, CatalogEntry, Construction, Role};
use charind::structure::prime_divisors;
use charind::Error;

pub use report::{catalog_hash, CheckResult, Status, Summary, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    TheoremA,
    CorollaryB,
    TheoremC,
    TheoremAlmostSimple,
    TheoremQs,
    RemarkCounterexamples,
    LemmaKey,
    NilpotentExtension,
    LemmaCentralInduction,
    IntroExample,
    DixonBound,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::TheoremA,
        Check::CorollaryB,
        Check::TheoremC,
        Check::TheoremAlmostSimple,
        Check::TheoremQs,
        Check::RemarkCounterexamples,
        Check::LemmaKey,
        Check::NilpotentExtension,
        Check::LemmaCentralInduction,
        Check::IntroExample,
        Check::DixonBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::TheoremA => "theorem-a",
            Check::CorollaryB => "corollary-b",
            Check::TheoremC => "theorem-c",
            Check::TheoremAlmostSimple => "theorem-almost-simple",
            Check::TheoremQs => "theorem-qs",
            Check::RemarkCounterexamples => "remark-counterexamples",
            Check::LemmaKey => "lemma-key",
            Check::NilpotentExtension => "nilpotent-extension",
            Check::LemmaCentralInduction => "lemma-central-induction",
            Check::IntroExample => "intro-example",
            Check::DixonBound => "dixon-bound",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Enumeration limits, settable as `KEY=VALUE`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest group order for the nilpotent-subgroup suites.
    pub max_order: u64,
    /// Subgroup tuples `(K_1, .., K_n)` per central product.
    pub central_tuples: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_order: 20160, central_tuples: 64 }
    }
}

impl Budget {
    pub const KEYS: [&'static str; 2] = ["max-order", "central-pairs"];

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let bad = |_| format!("budget `{key}` needs a nonnegative integer, got `{value}`");
        match key {
            "max-order" => self.max_order = value.parse().map_err(bad)?,
            "central-pairs" => self.central_tuples = value.parse().map_err(bad)?,
            _ => return Err(format!("unknown budget key `{key}` (known: {})", Self::KEYS.join(", "))),
        }
        Ok(())
    }
}

/// What to run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub checks: Vec<Check>,
    /// Entry names; `None` selects every entry enabled by default.
    pub groups: Option<Vec<String>>,
    pub jobs: usize,
    pub budget: Budget,
    pub allow_oversized: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            checks: Check::ALL.to_vec(),
            groups: None,
            jobs: 1,
            budget: Budget::default(),
            allow_oversized: false,
        }
    }
}

/// One unit of work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub check: Check,
    pub group: String,
    pub param: Option<u64>,
    pub skip: Option<String>,
}

/// The socle, when it is an entry on the exceptional list.
fn list_socle<'a>(catalog: &'a Catalog, e: &CatalogEntry) -> Option<&'a CatalogEntry> {
    let s = catalog.entry(e.socle.as_deref()?).ok()?;
    s.list_member.then_some(s.as_ref())
}

fn is_small_alternating(name: &str) -> bool {
    name == "Alt5" || name == "Alt6"
}

/// `q` for an entry titled `PSL(2,q)` with `q` a prime `≡ 3 (mod 4)`.
fn intro_prime(e: &CatalogEntry) -> Option<u64> {
    let q: u64 = e.title.strip_prefix("PSL(2,")?.strip_suffix(')')?.parse().ok()?;
    (q > 3 && q % 4 == 3 && prime_divisors(q) == vec![q]).then_some(q)
}

/// Expected `(count, degree, multiplicity)` of the remark's induced
/// character for a double cover with the given socle and prime.
fn remark_expectation(socle: &str, p: u64) -> Option<(usize, u64, u64)> {
    match (socle, p) {
        ("Alt5", 5) => Some((1, 6, 2)),
        ("Alt6", 3) => Some((2, 10, 2)),
        _ => None,
    }
}

/// Parameters of each task for `check` on `e`; `None` if not applicable.
fn parameters(catalog: &Catalog, check: Check, e: &CatalogEntry) -> Option<Vec<Option<u64>>> {
    let quotient_primes = || prime_divisors(e.order / e.center_order.unwrap_or(1).max(1));
    match check {
        Check::TheoremA | Check::NilpotentExtension => Some(vec![None]),
        Check::CorollaryB => {
            let ps = prime_divisors(e.order);
            (!ps.is_empty()).then(|| ps.into_iter().map(Some).collect())
        }
        Check::TheoremC | Check::TheoremAlmostSimple => e.has_role(Role::AlmostSimple).then(|| vec![None]),
        Check::TheoremQs | Check::LemmaKey => {
            if !e.has_role(Role::Quasisimple) {
                return None;
            }
            let s = list_socle(catalog, e)?;
            let restrict = check == Check::TheoremQs && is_small_alternating(&s.name);
            Some(quotient_primes().into_iter().filter(|&p| !restrict || p == 2).map(Some).collect())
        }
        Check::RemarkCounterexamples => {
            if !e.has_role(Role::Quasisimple) || e.center_order != Some(2) {
                return None;
            }
            let s = e.socle.as_deref()?;
            let ps: Vec<Option<u64>> =
                quotient_primes().into_iter().filter(|&p| remark_expectation(s, p).is_some()).map(Some).collect();
            (!ps.is_empty()).then_some(ps)
        }
        Check::LemmaCentralInduction => e.has_role(Role::CentralProduct).then(|| vec![None]),
        Check::IntroExample => intro_prime(e).map(|q| vec![Some(q)]),
        Check::DixonBound => match e.construction {
            Construction::Symmetric(n) if n <= 7 => Some(vec![None]),
            _ => None,
        },
    }
}

/// Expand the configuration into tasks. Unknown group names are errors.
pub fn plan(catalog: &Catalog, cfg: &VerifyConfig) -> Result<Vec<Task>, Error> {
    let explicit = cfg.groups.is_some();
    let entries: Vec<&CatalogEntry> = match &cfg.groups {
        Some(names) => names.iter().map(|n| catalog.entry(n).map(|e| e.as_ref())).collect::<Result<_, _>>()?,
        None => catalog.entries().iter().filter(|e| e.default).map(|e| e.as_ref()).collect(),
    };
    let mut tasks = Vec::new();
    for &check in &cfg.checks {
        for e in &entries {
            let Some(params) = parameters(catalog, check, e) else {
                if explicit {
                    tasks.push(Task { check, group: e.name.clone(), param: None, skip: Some("not-applicable".into()) });
                }
                continue;
            };
            let suite = matches!(check, Check::TheoremA | Check::CorollaryB | Check::NilpotentExtension);
            let skip = if e.oversized && !cfg.allow_oversized {
                Some("oversized".to_string())
            } else if suite && e.order > cfg.budget.max_order {
                Some("budget".to_string())
            } else {
                None
            };
            for param in params {
                tasks.push(Task { check, group: e.name.clone(), param, skip: skip.clone() });
            }
        }
    }
    Ok(tasks)
}

fn dispatch(catalog: &Catalog, task: &Task, budget: &Budget) -> Result<checks::Outcome, Error> {
    let built = catalog.build(&task.group)?;
    let g = &built.group;
    let e = &built.entry;
    let p = task.param.unwrap_or(0);
    match task.check {
        Check::TheoremA => checks::check_theorem_a(g),
        Check::CorollaryB => checks::check_corollary_b(g, p),
        Check::NilpotentExtension => checks::check_nilpotent_extension(g),
        Check::TheoremC => checks::check_theorem_c(g),
        Check::TheoremAlmostSimple => {
            let socle = e.socle.as_deref().unwrap_or("");
            let in_list = catalog.entry(socle).map(|s| s.list_member).unwrap_or(false);
            checks::check_theorem_almost_simple(g, in_list, is_small_alternating(socle))
        }
        Check::TheoremQs => checks::check_theorem_qs(g, p),
        Check::LemmaKey => checks::check_lemma_key(g, p),
        Check::RemarkCounterexamples => {
            let (count, degree, mult) =
                remark_expectation(e.socle.as_deref().unwrap_or(""), p).expect("planned with an expectation");
            checks::check_remark(g, p, count, degree, mult)
        }
        Check::LemmaCentralInduction => {
            let cp = built.central.as_ref().ok_or_else(|| Error::SpecInvalid("not a central product".into()))?;
            checks::check_central_product_induction(cp, budget.central_tuples)
        }
        Check::IntroExample => checks::check_intro_example(g, p),
        Check::DixonBound => match e.construction {
            Construction::Symmetric(n) => checks::check_dixon_bound(g, n),
            _ => Err(Error::SpecInvalid("not a symmetric group".into())),
        },
    }
}

/// Run one task, turning engine errors and panics into skipped records.
pub fn run_task(catalog: &Catalog, task: &Task, budget: &Budget) -> CheckResult {
    let mut data = std::collections::BTreeMap::new();
    if let Some(p) = task.param {
        data.insert("p".to_string(), p.to_string());
    }
    if let Some(reason) = &task.skip {
        return CheckResult::skipped(task.check.name(), &task.group, reason.clone(), data);
    }
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| dispatch(catalog, task, budget)));
    let wall_ms = start.elapsed().as_millis() as u64;
    let mut r = match result {
        Ok(Ok(outcome)) => CheckResult {
            check: task.check.name().to_string(),
            group: task.group.clone(),
            witness: outcome.witness(),
            status: if outcome.passed() { Status::Passed } else { Status::Failed },
            skip_reason: None,
            data: outcome.data,
            wall_ms,
        },
        Ok(Err(Error::Oversized(_))) => CheckResult::skipped(task.check.name(), &task.group, "oversized", data),
        Ok(Err(e)) => CheckResult::skipped(task.check.name(), &task.group, format!("error: {e}"), data),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            CheckResult::skipped(task.check.name(), &task.group, format!("panic: {msg}"), data)
        }
    };
    r.wall_ms = wall_ms;
    r
}

/// Plan and run on `cfg.jobs` threads.
pub fn run_verification(catalog: &Catalog, cfg: &VerifyConfig) -> Result<VerificationReport, Error> {
    let tasks = plan(catalog, cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::SpecInvalid(format!("thread pool: {e}")))?;
    let results: Vec<CheckResult> =
        pool.install(|| tasks.par_iter().map(|t| run_task(catalog, t, &cfg.budget)).collect());
    Ok(VerificationReport::new(catalog_hash(catalog), results))
}
