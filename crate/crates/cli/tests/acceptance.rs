//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/common/brute.rs"]
mod brute;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::Value;

use charind::catalog::{Catalog, CatalogEntry, Role};
use charind::charops::{integer_inner_product, restrict, subgroup_irreducibles, ClassFunction};
use charind::chartab::{compute_character_table, CharacterTable, Cyclotomic};
use charind::structure::{center, conjugacy_classes, max_nilpotent_order, sylow_subgroup};
use charind::{PermGroup, SubgroupHandle};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Ctx {
    catalog: Catalog,
}

impl Ctx {
    fn group(&self, name: &str) -> Result<Arc<PermGroup>, String> {
        Ok(self.catalog.build(name).map_err(err)?.group.clone())
    }

    fn table(&self, name: &str) -> Result<Arc<CharacterTable>, String> {
        let g = self.group(name)?;
        compute_character_table(&g).map_err(err)
    }

    /// Default entries that are actually built.
    fn in_scope(&self) -> Vec<&CatalogEntry> {
        self.catalog.entries().iter().filter(|e| e.default && !e.oversized).map(|e| e.as_ref()).collect()
    }
}

fn int(n: i64) -> Cyclotomic {
    Cyclotomic::from_int(n)
}

fn classes_of_order(t: &CharacterTable, n: u64) -> Vec<usize> {
    (0..t.len()).filter(|&c| t.classes().element_order(c) == n).collect()
}

fn faithful_on_center(g: &Arc<PermGroup>, t: &CharacterTable) -> Result<Vec<usize>, String> {
    let z = center(g).map_err(err)?;
    let classes = conjugacy_classes(g).map_err(err)?;
    let zc: Vec<usize> = z.group().chain_elements().iter().filter_map(|x| classes.class_of_element(g, x)).collect();
    Ok((0..t.len()).filter(|&i| zc.iter().any(|&c| t.value(i, c) != &int(t.degree(i) as i64))).collect())
}

/// `chi|_P - reg_P - shift * 1_P` is a character.
fn contains_regular(chi: &ClassFunction, p: &SubgroupHandle, shift: i64) -> Result<bool, String> {
    let down = restrict(chi, p).map_err(err)?;
    let trivial = ClassFunction::trivial(p.group()).map_err(err)?;
    let irr = subgroup_irreducibles(p).map_err(err)?;
    for psi in irr.irreducibles() {
        let extra = if psi.values() == trivial.values() { shift } else { 0 };
        if integer_inner_product(&down, psi).map_err(err)? < psi.degree_u64() as i64 + extra {
            return Ok(false);
        }
    }
    Ok(true)
}

fn tables_exact(ctx: &Ctx) -> Outcome {
    let start = Instant::now();
    let alt5 = ctx.table("Alt5")?;
    alt5.verify().map_err(err)?;
    let alt5_time = start.elapsed();
    ensure(alt5_time < Duration::from_secs(1), format!("Alt5 took {alt5_time:?}"))?;
    let entries = ctx.in_scope();
    for e in &entries {
        let g = ctx.group(&e.name)?;
        let t = compute_character_table(&g).map_err(err)?;
        t.verify().map_err(|x| format!("{}: {x}", e.name))?;
        let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
        ensure(sum == g.order(), format!("{}: sum of squared degrees {sum} != {}", e.name, g.order()))?;
    }
    let total = start.elapsed();
    ensure(total < Duration::from_secs(600), format!("catalog took {total:?}"))?;
    Ok(format!(
        "{} tables verified in {:.1}s, Alt5 in {} ms",
        entries.len(),
        total.as_secs_f64(),
        alt5_time.as_millis()
    ))
}

fn published_values(ctx: &Ctx) -> Outcome {
    let b5 = Cyclotomic::b5();
    let b7 = Cyclotomic::b7();
    ensure(b5.add(&b5.galois(2)) == int(-1), "b5 + b5* != -1")?;
    ensure(b7.add(&b7.conj()) == int(-1), "b7 + b7* != -1")?;

    let t = ctx.table("Alt5")?;
    let mut d = t.degrees();
    d.sort_unstable();
    ensure(d == [1, 3, 3, 4, 5], format!("Alt5 degrees {d:?}"))?;
    let chi5 = (0..t.len()).find(|&i| t.degree(i) == 5).ok_or("Alt5 has no degree 5")?;
    ensure(classes_of_order(&t, 3).iter().all(|&c| t.value(chi5, c) == &int(-1)), "Alt5 chi5 on order 3")?;

    let t = ctx.table("PSL27")?;
    let chi7 = (0..t.len()).find(|&i| t.degree(i) == 7).ok_or("PSL27 has no degree 7")?;
    ensure(classes_of_order(&t, 2).iter().all(|&c| t.value(chi7, c) == &int(-1)), "PSL27 chi7 on involutions")?;

    let g = ctx.group("SL27")?;
    let t = compute_character_table(&g).map_err(err)?;
    let faithful = faithful_on_center(&g, &t)?;
    let mut fd: Vec<u64> = faithful.iter().map(|&i| t.degree(i)).collect();
    fd.sort_unstable();
    fd.dedup();
    ensure(fd == [4, 6, 8], format!("SL27 faithful degrees {fd:?}"))?;
    let p = sylow_subgroup(&g, 7).map_err(err)?;
    let of = |d| faithful.iter().copied().find(|&i| t.degree(i) == d).unwrap();
    ensure(contains_regular(t.irr(of(8)), &p, 0)?, "SL27 degree 8 does not contain reg_P")?;
    ensure(contains_regular(t.irr(of(6)), &p, -1)?, "SL27 degree 6 does not contain reg_P - 1_P")?;
    let down = restrict(t.irr(of(4)), &p).map_err(err)?;
    let ones = integer_inner_product(&down, &ClassFunction::trivial(p.group()).map_err(err)?).map_err(err)?;
    ensure(ones >= 1, "SL27 degree 4 does not contain 1_P")?;

    let t = ctx.table("Alt6")?;
    let fives: Vec<usize> = (0..t.len()).filter(|&i| t.degree(i) == 5).collect();
    let threes = classes_of_order(&t, 3);
    ensure(fives.len() == 2 && threes.len() == 2, "Alt6 degree-5 pair or order-3 classes missing")?;
    let mut pairs: Vec<(Option<i64>, Option<i64>)> =
        fives.iter().map(|&i| (t.value(i, threes[0]).to_i64(), t.value(i, threes[1]).to_i64())).collect();
    pairs.sort();
    ensure(pairs == [(Some(-1), Some(2)), (Some(2), Some(-1))], format!("Alt6 pair values {pairs:?}"))?;

    let g = ctx.group("3Alt6")?;
    let t = compute_character_table(&g).map_err(err)?;
    let p = sylow_subgroup(&g, 2).map_err(err)?;
    let mut nine = false;
    for i in faithful_on_center(&g, &t)?.into_iter().filter(|&i| t.degree(i) == 9) {
        nine |= contains_regular(t.irr(i), &p, 0)?;
    }
    ensure(nine, "3Alt6: no faithful degree 9 containing reg_P")?;

    let t = ctx.table("PSL34")?;
    let (g2, g3) = (classes_of_order(&t, 2), classes_of_order(&t, 3));
    let chis: Vec<usize> = (0..t.len()).filter(|&i| t.degree(i) == 35).collect();
    ensure(!chis.is_empty() && g2.len() == 1 && g3.len() == 1, "PSL34 classes or degree 35 missing")?;
    for i in chis {
        ensure(t.value(i, g2[0]) == &int(3) && t.value(i, g3[0]) == &int(-1), "PSL34 degree 35 values")?;
    }
    Ok("Alt5, PSL27, SL27, Alt6, 3Alt6, PSL34 values and b5, b7 identities match".into())
}

fn m_table(ctx: &Ctx) -> Outcome {
    let expected = [("Alt5", 5), ("Alt6", 9), ("Alt7", 12), ("Alt8", 64), ("PSU33", 32)];
    let mut got = Vec::new();
    for (name, m) in expected {
        let g = ctx.group(name)?;
        let start = Instant::now();
        let found = max_nilpotent_order(&g, None).map_err(err)?.0;
        let took = start.elapsed();
        ensure(found == m, format!("m({name}) = {found}, expected {m}"))?;
        ensure(took < Duration::from_secs(300), format!("{name} took {took:?}"))?;
        got.push(format!("{name}={found}"));
    }
    let order = ctx.group("PSU33")?.order();
    ensure(order == 6048, format!("|PSU33| = {order}"))?;
    Ok(format!("{}; |PSU33| = 6048", got.join(" ")))
}

/// Records of a structured report keyed by (check, group, p).
struct Report {
    records: BTreeMap<(String, String, String), Value>,
}

impl Report {
    fn load(path: &Path) -> Result<(Report, Value), String> {
        let text = std::fs::read_to_string(path).map_err(err)?;
        let json: Value = serde_json::from_str(&text).map_err(err)?;
        let mut records = BTreeMap::new();
        for r in json["results"].as_array().ok_or("report has no results")? {
            let key = (
                r["check"].as_str().unwrap_or_default().to_string(),
                r["group"].as_str().unwrap_or_default().to_string(),
                r["data"]["p"].as_str().unwrap_or_default().to_string(),
            );
            records.insert(key, r.clone());
        }
        Ok((Report { records }, json))
    }

    fn get(&self, check: &str, group: &str, p: &str) -> Result<&Value, String> {
        self.records
            .get(&(check.into(), group.into(), p.into()))
            .ok_or_else(|| format!("no {check} record for {group} p={p}"))
    }

    fn passed(&self, check: &str, group: &str, p: &str) -> Result<&Value, String> {
        let r = self.get(check, group, p)?;
        ensure(r["status"] == "passed", format!("{check} on {group} p={p}: {}", r["status"]))?;
        Ok(r)
    }

    fn of_check<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Value> + 'a {
        self.records.iter().filter(move |(k, _)| k.0 == check).map(|(_, v)| v)
    }
}

fn data<'a>(r: &'a Value, key: &str) -> &'a str {
    r["data"][key].as_str().unwrap_or_default()
}

fn almost_simple(ctx: &Ctx, rep: &Report) -> Outcome {
    let mut exceptions = Vec::new();
    let mut checked = 0;
    for e in ctx.in_scope().into_iter().filter(|e| e.has_role(Role::AlmostSimple)) {
        let r = rep.passed("theorem-almost-simple", &e.name, "")?;
        checked += 1;
        if data(r, "exceptions") != "0" {
            exceptions.push(e.name.clone());
        }
    }
    ensure(rep.of_check("theorem-almost-simple").all(|r| r["status"] != "failed"), "a record failed")?;
    let sym5 = rep.get("theorem-almost-simple", "Sym5", "")?;
    let w = sym5["witness"].as_str().unwrap_or_default();
    ensure(w.contains("|Y| = 8") && w.contains("p = 2"), format!("Sym5 witness: {w}"))?;
    Ok(format!("{checked} entries; exceptions on {} all in LIST with Sylow Y∩S", exceptions.join(", ")))
}

fn theorem_qs(rep: &Report) -> Outcome {
    let cases: [(&str, &[&str]); 8] = [
        ("Alt5", &["2"]),
        ("Alt6", &["2"]),
        ("PSL27", &["2", "3", "7"]),
        ("PSL34", &["2", "3", "5", "7"]),
        ("SL25", &["2"]),
        ("SL29", &["2"]),
        ("SL27", &["2", "3", "7"]),
        ("3Alt6", &["2"]),
    ];
    let mut n = 0;
    let mut characters = 0u64;
    for (g, ps) in cases {
        for p in ps {
            let r = rep.passed("theorem-qs", g, p)?;
            characters += data(r, "characters").parse::<u64>().unwrap_or(0);
            n += 1;
        }
    }
    ensure(rep.of_check("theorem-qs").all(|r| r["status"] != "failed"), "a theorem-qs record failed")?;
    Ok(format!("{n} (group, p) cases, {characters} induced characters, each with >= 2 constituent degrees"))
}

fn remark(rep: &Report) -> Outcome {
    let a = rep.passed("remark-counterexamples", "SL25", "5")?;
    ensure(data(a, "constituents") == "[(6, 2)]", format!("SL25: {}", data(a, "constituents")))?;
    let b = rep.passed("remark-counterexamples", "SL29", "3")?;
    ensure(data(b, "constituents") == "[(10, 2), (10, 2)]", format!("SL29: {}", data(b, "constituents")))?;
    Ok(format!("SL25: {}; SL29: {}", a["witness"].as_str().unwrap_or(""), b["witness"].as_str().unwrap_or("")))
}

fn intro(rep: &Report) -> Outcome {
    let mut out = Vec::new();
    for (g, q) in [("PSL27", 7u64), ("PSL211", 11)] {
        let r = rep.passed("intro-example", g, "")?;
        ensure(data(r, "degree") == (q + 1).to_string(), format!("{g}: degree {}", data(r, "degree")))?;
        ensure(data(r, "inducing") != "0", format!("{g}: no inducing character"))?;
        ensure(r["witness"].as_str().unwrap_or("").contains("is not nilpotent"), format!("{g}: normalizer"))?;
        out.push(format!("{g}: |N| = {}, degree {}", data(r, "normalizer_order"), q + 1));
    }
    Ok(out.join("; "))
}

fn central_induction(rep: &Report) -> Outcome {
    let mut out = Vec::new();
    for g in ["Q8C4", "SL25oSL25"] {
        let r = rep.passed("lemma-central-induction", g, "")?;
        ensure(data(r, "tuples") == data(r, "tuples_total"), format!("{g}: enumeration truncated"))?;
        ensure(data(r, "comparisons") != "0", format!("{g}: nothing compared"))?;
        out.push(format!("{g}: {} comparisons", data(r, "comparisons")));
    }
    Ok(out.join("; "))
}

fn suites(ctx: &Ctx, rep: &Report) -> Outcome {
    let mut runs = 0;
    let mut vacuous = 0;
    for e in ctx.in_scope().into_iter().filter(|e| e.order <= brute::ORACLE_MAX_ORDER) {
        for check in ["theorem-a", "nilpotent-extension"] {
            let r = rep.passed(check, &e.name, "")?;
            runs += 1;
            if data(r, "witnesses") == "0" {
                vacuous += 1;
            }
        }
        for p in charind::structure::prime_divisors(e.order) {
            rep.passed("corollary-b", &e.name, &p.to_string())?;
            runs += 1;
        }
    }
    for check in ["theorem-a", "nilpotent-extension", "corollary-b"] {
        ensure(rep.of_check(check).all(|r| r["status"] != "failed"), format!("a {check} record failed"))?;
    }
    Ok(format!("{runs} suite runs passed on groups of order <= 2000 ({vacuous} vacuous)"))
}

fn oracles(ctx: &Ctx) -> Outcome {
    let mut small = 0;
    let entries = ctx.in_scope();
    for e in &entries {
        let g = ctx.group(&e.name)?;
        if g.order() <= brute::ORACLE_MAX_ORDER {
            brute::check_subgroups(&e.name, &g)?;
            small += 1;
        }
        brute::check_classes(&e.name, &g)?;
    }
    Ok(format!("subgroup oracles on {small} groups, class oracle on {}", entries.len()))
}

fn verify_run(out: &Path, jobs: usize) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_charind"))
        .args(["verify", "--all", "--format", "structured", "--jobs", &jobs.to_string(), "--out"])
        .arg(out)
        .status()
        .map_err(err)?;
    ensure(status.code() == Some(0), format!("verify --jobs {jobs} exited with {status}"))
}

fn without_timing(mut v: Value) -> Value {
    if let Some(results) = v["results"].as_array_mut() {
        for r in results {
            r["wall_ms"] = Value::from(0);
        }
    }
    v
}

fn main() {
    let ctx = Ctx { catalog: Catalog::builtin().expect("built-in catalog loads") };
    let dir = tempfile::tempdir().expect("temporary directory");
    let serial = dir.path().join("jobs1.json");
    let parallel = dir.path().join("jobs8.json");
    let runs = verify_run(&serial, 1).and_then(|_| verify_run(&parallel, 8));
    let loaded = runs.and_then(|_| Ok((Report::load(&serial)?, Report::load(&parallel)?.1)));

    let report = |f: &dyn Fn(&Report) -> Outcome| -> Outcome {
        match &loaded {
            Ok(((rep, _), _)) => f(rep),
            Err(e) => Err(e.clone()),
        }
    };
    let criteria: Vec<(&str, Outcome)> = vec![
        ("character tables are exact", tables_exact(&ctx)),
        ("published character values", published_values(&ctx)),
        ("largest nilpotent subgroup orders", m_table(&ctx)),
        ("almost simple bound and exceptions", report(&|r| almost_simple(&ctx, r))),
        ("quasisimple induction has several degrees", report(&theorem_qs)),
        ("double cover counterexamples", report(&remark)),
        ("Sylow normalizer example", report(&intro)),
        ("central product induction identity", report(&central_induction)),
        ("nilpotent subgroup property suites", report(&|r| suites(&ctx, r))),
        ("brute-force oracle agreement", oracles(&ctx)),
        (
            "reports independent of --jobs",
            match &loaded {
                Ok(((_, a), b)) => {
                    let (a, b) = (without_timing(a.clone()), without_timing(b.clone()));
                    ensure(a == b, "jobs 1 and jobs 8 reports differ")
                        .map(|_| format!("{} records identical", a["results"].as_array().map_or(0, |v| v.len())))
                }
                Err(e) => Err(e.clone()),
            },
        ),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in criteria.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
