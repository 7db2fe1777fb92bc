use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// How an entry's group is constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Symmetric(usize),
    Alternating(usize),
    /// Explicit permutation generators.
    Permutations {
        degree: usize,
        gens: Vec<Permutation>,
    },
    /// Matrix generators over `GF(p^k)` acting on nonzero vectors or on
    /// projective points.
    Matrices {
        p: u64,
        k: u32,
        modulus: Vec<u64>,
        action: MatrixAction,
        gens: Vec<Vec<Vec<u64>>>,
    },
    /// Central product of other entries; each glue tuple holds one
    /// permutation (in cycle notation) per factor.
    CentralProduct {
        factors: Vec<String>,
        glue: Vec<(usize, Vec<String>)>,
    },
    /// Quotient of another entry by a normal subgroup.
    Quotient {
        source: String,
        kernel: KernelSpec,
    },
    /// Action of another entry on the right cosets of a subgroup.
    Coset {
        source: String,
        stabilizer: Vec<(usize, String)>,
    },
    /// Subgroup of another entry given by generators in its action.
    Subgroup {
        source: String,
        gens: Vec<(usize, String)>,
    },
    /// Metadata only; never built.
    Stub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixAction {
    Vector,
    Projective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelSpec {
    Center,
    Generators(Vec<(usize, String)>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Simple,
    Quasisimple,
    AlmostSimple,
    SolvableTest,
    CentralProduct,
}

impl Role {
    pub fn parse(s: &str) -> Option<Role> {
        Some(match s {
            "simple" => Role::Simple,
            "quasisimple" => Role::Quasisimple,
            "almost-simple" => Role::AlmostSimple,
            "solvable-test" => Role::SolvableTest,
            "central-product" => Role::CentralProduct,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Simple => "simple",
            Role::Quasisimple => "quasisimple",
            Role::AlmostSimple => "almost-simple",
            Role::SolvableTest => "solvable-test",
            Role::CentralProduct => "central-product",
        }
    }
}

/// One named group with its construction and recorded metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub title: String,
    pub file: String,
    pub construction: Construction,
    pub order: u64,
    pub socle: Option<String>,
    pub center_order: Option<u64>,
    pub out_order: Option<u64>,
    pub list_member: bool,
    pub roles: BTreeSet<Role>,
    pub default: bool,
    pub oversized: bool,
}

impl CatalogEntry {
    pub fn has_role(&self, r: Role) -> bool {
        self.roles.contains(&r)
    }

    /// Names of the entries this one is built from.
    pub fn dependencies(&self) -> Vec<&str> {
        match &self.construction {
            Construction::CentralProduct { factors, .. } => factors.iter().map(|s| s.as_str()).collect(),
            Construction::Quotient { source, .. }
            | Construction::Coset { source, .. }
            | Construction::Subgroup { source, .. } => vec![source.as_str()],
            _ => Vec::new(),
        }
    }
}

const REPEATABLE: &[&str] = &["gen", "glue"];
const KEYS: &[&str] = &[
    "name",
    "title",
    "kind",
    "order",
    "degree",
    "n",
    "field",
    "action",
    "gen",
    "factors",
    "glue",
    "source",
    "kernel",
    "socle",
    "center",
    "out",
    "list",
    "roles",
    "default",
    "oversized",
];

struct Fields {
    file: String,
    last_line: usize,
    single: Vec<(String, usize, String)>,
    repeated: Vec<(String, usize, String)>,
}

impl Fields {
    fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { file: self.file.clone(), line, msg: msg.into() }
    }

    fn get(&self, key: &str) -> Option<(usize, &str)> {
        self.single.iter().find(|(k, _, _)| k == key).map(|(_, l, v)| (*l, v.as_str()))
    }

    fn require(&self, key: &str) -> Result<(usize, &str)> {
        self.get(key).ok_or_else(|| self.err(self.last_line, format!("missing key `{key}`")))
    }

    fn all(&self, key: &str) -> Vec<(usize, String)> {
        self.repeated.iter().filter(|(k, _, _)| k == key).map(|(_, l, v)| (*l, v.clone())).collect()
    }

    fn number(&self, key: &str) -> Result<Option<u64>> {
        match self.get(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse::<u64>()
                .map(Some)
                .map_err(|_| self.err(line, format!("`{key}` must be a nonnegative integer, got `{v}`"))),
        }
    }

    fn flag(&self, key: &str, default: bool) -> Result<bool> {
        match self.get(key) {
            None => Ok(default),
            Some((_, "true")) => Ok(true),
            Some((_, "false")) => Ok(false),
            Some((line, v)) => Err(self.err(line, format!("`{key}` must be true or false, got `{v}`"))),
        }
    }
}

fn tokenize(file: &str, text: &str) -> Result<Fields> {
    let mut fields = Fields { file: file.to_string(), last_line: 0, single: Vec::new(), repeated: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        fields.last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (k, v) = t.split_once('=').ok_or_else(|| fields.err(line, format!("expected key=value, got `{t}`")))?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(fields.err(line, format!("unknown key `{k}`")));
        }
        if REPEATABLE.contains(&k) {
            fields.repeated.push((k.to_string(), line, v.to_string()));
        } else {
            if fields.get(k).is_some() {
                return Err(fields.err(line, format!("duplicate key `{k}`")));
            }
            fields.single.push((k.to_string(), line, v.to_string()));
        }
    }
    Ok(fields)
}

fn parse_matrix(f: &Fields, line: usize, text: &str) -> Result<Vec<Vec<u64>>> {
    serde_json::from_str::<Vec<Vec<u64>>>(text).map_err(|e| f.err(line, format!("bad matrix `{text}`: {e}")))
}

/// Parse one group definition file.
pub fn parse_entry(file: &str, text: &str) -> Result<CatalogEntry> {
    let f = tokenize(file, text)?;
    let name = f.require("name")?.1.to_string();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric()) {
        let line = f.get("name").unwrap().0;
        return Err(f.err(line, format!("name `{name}` must be alphanumeric")));
    }
    let title = f.get("title").map_or(name.clone(), |(_, t)| t.to_string());
    let (kind_line, kind) = f.require("kind")?;
    let order = f.number("order")?.ok_or_else(|| f.err(f.last_line, "missing key `order`"))?;
    if order == 0 {
        return Err(f.err(f.get("order").unwrap().0, "order must be positive"));
    }
    let gens = f.all("gen");
    let only_with = |key: &str, kinds: &[&str]| -> Result<()> {
        if !kinds.contains(&kind) {
            if let Some((line, _)) = f.get(key) {
                return Err(f.err(line, format!("`{key}` is not valid for kind `{kind}`")));
            }
            if let Some((line, _)) = f.all(key).first() {
                return Err(f.err(*line, format!("`{key}` is not valid for kind `{kind}`")));
            }
        }
        Ok(())
    };
    only_with("n", &["symmetric", "alternating"])?;
    only_with("degree", &["perm"])?;
    only_with("field", &["matrix"])?;
    only_with("action", &["matrix"])?;
    only_with("factors", &["central_product"])?;
    only_with("glue", &["central_product"])?;
    only_with("source", &["quotient", "coset", "subgroup"])?;
    only_with("kernel", &["quotient"])?;
    only_with("gen", &["perm", "matrix", "quotient", "coset", "subgroup"])?;

    let construction = match kind {
        "symmetric" | "alternating" => {
            let n = f.number("n")?.ok_or_else(|| f.err(kind_line, "missing key `n`"))? as usize;
            if n == 0 || n > 1000 {
                return Err(f.err(f.get("n").unwrap().0, "n must be between 1 and 1000"));
            }
            if kind == "symmetric" {
                Construction::Symmetric(n)
            } else {
                Construction::Alternating(n)
            }
        }
        "perm" => {
            let degree = f.number("degree")?.ok_or_else(|| f.err(kind_line, "missing key `degree`"))? as usize;
            let gens = gens
                .iter()
                .map(|(line, g)| Permutation::parse_cycles(degree, g).map_err(|e| f.err(*line, e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            Construction::Permutations { degree, gens }
        }
        "matrix" => {
            let (fline, field) = f.require("field")?;
            let mut parts = field.splitn(3, ',');
            let (p, k, m) = (parts.next(), parts.next(), parts.next());
            let bad = || f.err(fline, format!("field must be `p,k,[modulus]`, got `{field}`"));
            let p: u64 = p.and_then(|x| x.trim().parse().ok()).ok_or_else(bad)?;
            let k: u32 = k.and_then(|x| x.trim().parse().ok()).ok_or_else(bad)?;
            let modulus: Vec<u64> = m.and_then(|x| serde_json::from_str(x.trim()).ok()).ok_or_else(bad)?;
            let action = match f.get("action") {
                None | Some((_, "vector")) => MatrixAction::Vector,
                Some((_, "projective")) => MatrixAction::Projective,
                Some((line, a)) => return Err(f.err(line, format!("unknown action `{a}`"))),
            };
            if gens.is_empty() {
                return Err(f.err(kind_line, "matrix entries need at least one `gen`"));
            }
            let gens = gens.iter().map(|(line, g)| parse_matrix(&f, *line, g)).collect::<Result<Vec<_>>>()?;
            Construction::Matrices { p, k, modulus, action, gens }
        }
        "central_product" => {
            let (_, factors) = f.require("factors")?;
            let factors: Vec<String> = factors.split(',').map(|s| s.trim().to_string()).collect();
            let glue = f
                .all("glue")
                .into_iter()
                .map(|(line, g)| {
                    let parts: Vec<String> = g.split('|').map(|s| s.trim().to_string()).collect();
                    if parts.len() != factors.len() {
                        return Err(
                            f.err(line, format!("glue has {} parts for {} factors", parts.len(), factors.len()))
                        );
                    }
                    Ok((line, parts))
                })
                .collect::<Result<Vec<_>>>()?;
            Construction::CentralProduct { factors, glue }
        }
        "quotient" => {
            let source = f.require("source")?.1.to_string();
            let kernel = match f.get("kernel") {
                Some((_, "center")) => KernelSpec::Center,
                Some((_, "gens")) | None => KernelSpec::Generators(gens),
                Some((line, k)) => return Err(f.err(line, format!("unknown kernel `{k}`"))),
            };
            Construction::Quotient { source, kernel }
        }
        "coset" => Construction::Coset { source: f.require("source")?.1.to_string(), stabilizer: gens },
        "subgroup" => Construction::Subgroup { source: f.require("source")?.1.to_string(), gens },
        "stub" => Construction::Stub,
        other => return Err(f.err(kind_line, format!("unknown kind `{other}`"))),
    };
    let roles = match f.get("roles") {
        None => BTreeSet::new(),
        Some((line, r)) => r
            .split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| Role::parse(s).ok_or_else(|| f.err(line, format!("unknown role `{s}`"))))
            .collect::<Result<_>>()?,
    };
    let oversized = f.flag("oversized", false)?;
    if oversized != (construction == Construction::Stub) {
        return Err(f.err(kind_line, "exactly the `stub` entries are oversized"));
    }
    Ok(CatalogEntry {
        name,
        title,
        file: file.to_string(),
        construction,
        order,
        socle: f.get("socle").map(|(_, s)| s.to_string()),
        center_order: f.number("center")?,
        out_order: f.number("out")?,
        list_member: f.flag("list", false)?,
        roles,
        default: f.flag("default", true)?,
        oversized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_permutation_entry() {
        let e = parse_entry("d8", "# comment\nname=D8\nkind=perm\ndegree=4\norder=8\ngen=[[0,1,2,3]]\ngen=[[1,3]]\n")
            .unwrap();
        assert_eq!(e.order, 8);
        assert!(matches!(e.construction, Construction::Permutations { degree: 4, ref gens } if gens.len() == 2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_entry("x", "name=X\nkind=perm\ndegree=3\norder=6\ngen=[[0,1,5]]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, .. }), "{err}");
        let err = parse_entry("x", "name=X\n\nbogus line\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_entry("x", "name=X\nkind=perm\norder=2\norder=3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = parse_entry("x", "name=X\nkind=weird\norder=2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_entry("x", "name=X\nkind=matrix\norder=2\nfield=3,x,[0,1]\ngen=[[1]]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
    }
}
