//! `charind`: character tables, structural summaries and verification runs
//! over the group catalog.
//!
//! Exit codes: 0 success, 1 a check failed, 2 configuration error or
//! unknown group, 3 oversized group.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use charind::catalog::{Catalog, Filter};
use charind::chartab::compute_character_table;
use charind::structure::{
    center, conjugacy_classes, fitting, generalized_fitting, is_nilpotent, is_quasisimple, is_solvable, layer,
    max_nilpotent_order, normal_subgroups,
};
use charind::Error;
use charind_verify::{run_verification, Budget, Check, VerifyConfig};

const EXIT_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_OVERSIZED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "charind", version, about = "Exact character tables and induction checks for small finite groups")]
struct Cli {
    /// Directory of `*.group` files replacing the built-in catalog.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the character table of a catalog group.
    Table {
        group: String,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Print a structural summary of a catalog group.
    Info { group: String },
    /// List catalog entries.
    List {
        /// Include entries disabled by default and oversized stubs.
        #[arg(long)]
        all: bool,
    },
    /// Run checks and write a report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// Checks to run (default: all).
    #[arg(long = "check", value_name = "NAME", num_args = 1.., value_delimiter = ',')]
    checks: Vec<String>,
    /// Groups to run on.
    #[arg(long = "group", value_name = "NAME", num_args = 1.., value_delimiter = ',', conflicts_with = "all")]
    groups: Vec<String>,
    /// Every entry enabled by default (the default when no group is named).
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here (atomically) instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Attempt entries marked oversized instead of skipping them.
    #[arg(long)]
    allow_oversized: bool,
    /// Enumeration limits, `KEY=VALUE` (max-order, central-pairs).
    #[arg(long = "budget", value_name = "KEY=VAL")]
    budget: Vec<String>,
    /// Reserved; every algorithm is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Validated verification settings.
#[derive(Debug)]
struct Config {
    verify: VerifyConfig,
    format: Format,
    out: Option<PathBuf>,
    #[allow(dead_code)]
    seed: u64,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("charind: {msg}");
    ExitCode::from(code)
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Oversized(_) | Error::OrderTooLarge(..) => EXIT_OVERSIZED,
        _ => EXIT_CONFIG,
    }
}

/// Write to standard output; a closed pipe ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("charind: {e}");
    }
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog, Error> {
    match path {
        Some(p) => Catalog::load_dir(p),
        None => Catalog::builtin(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let catalog = match load_catalog(cli.catalog.as_deref()) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    match cli.command {
        Command::Table { group, json } => cmd_table(&catalog, &group, json),
        Command::Info { group } => cmd_info(&catalog, &group),
        Command::List { all } => cmd_list(&catalog, all),
        Command::Verify(args) => match config(&catalog, args) {
            Ok(cfg) => cmd_verify(&catalog, &cfg),
            Err(msg) => fail(EXIT_CONFIG, msg),
        },
    }
}

fn cmd_table(catalog: &Catalog, name: &str, as_json: bool) -> ExitCode {
    let result = catalog.build(name).and_then(|b| Ok((b.clone(), compute_character_table(&b.group)?)));
    let (built, table) = match result {
        Ok(x) => x,
        Err(e) => return fail(error_code(&e), e),
    };
    if as_json {
        let classes = table.classes();
        let doc = json!({
            "group": built.entry.name,
            "title": built.entry.title,
            "order": table.group_order(),
            "classes": (0..classes.len()).map(|c| json!({
                "representative": classes.rep(c).to_cycle_string(),
                "size": classes.size(c),
                "element_order": classes.element_order(c),
                "centralizer_order": classes.centralizer_order(c),
            })).collect::<Vec<_>>(),
            "degrees": table.degrees(),
            "characters": table.irreducibles().iter().map(|chi| chi.value_strings()).collect::<Vec<_>>(),
        });
        emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("table serializes")));
    } else {
        emit(&format!(
            "{} ({}), order {}\n{}",
            built.entry.name,
            built.entry.title,
            table.group_order(),
            table.render()
        ));
    }
    ExitCode::SUCCESS
}

fn cmd_info(catalog: &Catalog, name: &str) -> ExitCode {
    let summary = || -> Result<Vec<(&'static str, String)>, Error> {
        let b = catalog.build(name)?;
        let g = &b.group;
        let (m, _) = max_nilpotent_order(g, None)?;
        Ok(vec![
            ("group", b.entry.name.clone()),
            ("title", b.entry.title.clone()),
            ("order", g.order().to_string()),
            ("degree", g.degree().to_string()),
            ("classes", conjugacy_classes(g)?.len().to_string()),
            ("center", center(g)?.order().to_string()),
            ("fitting", fitting(g)?.order().to_string()),
            ("layer", layer(g)?.order().to_string()),
            ("generalized_fitting", generalized_fitting(g)?.order().to_string()),
            ("max_nilpotent_order", m.to_string()),
            ("nilpotent", is_nilpotent(g).to_string()),
            ("solvable", is_solvable(g).to_string()),
            ("quasisimple", is_quasisimple(g)?.to_string()),
            ("normal_subgroups", normal_subgroups(g)?.len().to_string()),
        ])
    };
    match summary() {
        Ok(rows) => {
            emit(&rows.iter().map(|(k, v)| format!("{k}: {v}\n")).collect::<String>());
            ExitCode::SUCCESS
        }
        Err(e) => fail(error_code(&e), e),
    }
}

fn cmd_list(catalog: &Catalog, all: bool) -> ExitCode {
    let mut text = String::new();
    for e in catalog.entries() {
        if !all && !Filter::Default.matches(e) {
            continue;
        }
        let roles: Vec<&str> = e.roles.iter().map(|r| r.as_str()).collect();
        let mut flags = Vec::new();
        if e.list_member {
            flags.push("list");
        }
        if e.oversized {
            flags.push("oversized");
        }
        if !e.default {
            flags.push("disabled");
        }
        let line = format!("{:<12} {:<16} {:>8}  {}  {}", e.name, e.title, e.order, roles.join(","), flags.join(","));
        text.push_str(line.trim_end());
        text.push('\n');
    }
    emit(&text);
    ExitCode::SUCCESS
}

fn config(catalog: &Catalog, args: VerifyArgs) -> Result<Config, String> {
    let checks = if args.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        args.checks
            .iter()
            .map(|c| {
                Check::parse(c).ok_or_else(|| {
                    let known: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                    format!("unknown check `{c}` (known: {})", known.join(", "))
                })
            })
            .collect::<Result<_, _>>()?
    };
    let groups = if args.all || args.groups.is_empty() {
        None
    } else {
        let names = args
            .groups
            .iter()
            .map(|g| catalog.entry(g).map(|e| e.name.clone()).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        Some(names)
    };
    let mut budget = Budget::default();
    for kv in &args.budget {
        let (k, v) = kv.split_once('=').ok_or_else(|| format!("budget `{kv}` is not KEY=VALUE"))?;
        budget.set(k.trim(), v.trim())?;
    }
    if args.jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    Ok(Config {
        verify: VerifyConfig { checks, groups, jobs: args.jobs, budget, allow_oversized: args.allow_oversized },
        format: args.format,
        out: args.out,
        seed: args.seed,
    })
}

/// Write through a temporary file in the target directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn cmd_verify(catalog: &Catalog, cfg: &Config) -> ExitCode {
    let report = match run_verification(catalog, &cfg.verify) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let text = match cfg.format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_json(),
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &text) {
                return fail(EXIT_CONFIG, format!("cannot write {}: {e}", path.display()));
            }
            let s = &report.summary;
            eprintln!("{} results: {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, s.skipped);
        }
        None => emit(&text),
    }
    if report.has_failures() {
        ExitCode::from(EXIT_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}
