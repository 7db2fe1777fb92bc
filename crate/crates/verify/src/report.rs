//! Check results and the assembled report, in key=value text or JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use charind::catalog::Catalog;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Passed => "passed",
            Status::Failed => "failed",
            Status::Skipped => "skipped",
        }
    }
}

/// One (check, group) record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub group: String,
    pub witness: String,
    pub status: Status,
    pub skip_reason: Option<String>,
    pub data: BTreeMap<String, String>,
    pub wall_ms: u64,
}

impl CheckResult {
    pub fn skipped(check: &str, group: &str, reason: impl Into<String>, data: BTreeMap<String, String>) -> Self {
        CheckResult {
            check: check.to_string(),
            group: group.to_string(),
            witness: String::new(),
            status: Status::Skipped,
            skip_reason: Some(reason.into()),
            data,
            wall_ms: 0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub catalog_hash: String,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Sorts results by (check, group); the sort is stable, so records of
    /// one (check, group) keep their planned order.
    pub fn new(catalog_hash: String, mut results: Vec<CheckResult>) -> Self {
        results.sort_by(|a, b| (&a.check, &a.group).cmp(&(&b.check, &b.group)));
        let mut summary = Summary { total: results.len(), ..Summary::default() };
        for r in &results {
            match r.status {
                Status::Passed => summary.passed += 1,
                Status::Failed => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        VerificationReport {
            tool: "charind-verify".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            catalog_hash,
            results,
            summary,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.failed > 0
    }

    /// Zero every wall time.
    pub fn normalize_timing(&mut self) {
        for r in &mut self.results {
            r.wall_ms = 0;
        }
    }

    /// One `key=value` record per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "tool={} version={} catalog_hash={}", self.tool, self.version, self.catalog_hash).unwrap();
        for r in &self.results {
            let mut line = format!("check={} group={} status={}", quote(&r.check), quote(&r.group), r.status.as_str());
            if let Some(reason) = &r.skip_reason {
                write!(line, " skip_reason={}", quote(reason)).unwrap();
            }
            write!(line, " witness={}", quote(&r.witness)).unwrap();
            for (k, v) in &r.data {
                write!(line, " data.{k}={}", quote(v)).unwrap();
            }
            write!(line, " wall_ms={}", r.wall_ms).unwrap();
            writeln!(out, "{line}").unwrap();
        }
        let s = &self.summary;
        writeln!(out, "summary total={} passed={} failed={} skipped={}", s.total, s.passed, s.failed, s.skipped)
            .unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn quote(v: &str) -> String {
    let plain = !v.is_empty() && v.chars().all(|c| !c.is_whitespace() && c != '"' && c != '\\' && c != '=');
    if plain {
        v.to_string()
    } else {
        serde_json::to_string(v).expect("string serializes")
    }
}

/// SHA-256 over the catalog's definition files in name order.
pub fn catalog_hash(catalog: &Catalog) -> String {
    let mut h = Sha256::new();
    for (file, text) in catalog.sources() {
        h.update(file.as_bytes());
        h.update([0u8]);
        h.update(text.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
