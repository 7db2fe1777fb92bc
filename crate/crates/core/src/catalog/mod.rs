//! Named groups: construction recipes and metadata read from group
//! definition files, built on demand and verified against their metadata.
//!
//! Keys are alphanumeric (`Alt5`, `Sym4`, `SL27`, `PSL34`, `3Alt6`, `PSU33`,
//! `Q8C4`, `SL25oSL25`, `C1`, ...); lookups also accept the display title
//! (`Alt(5)`, `SL(2,7)`, `3.Alt(6)`, ...).
//!
//! A definition file is UTF-8 text of `key=value` lines; `#` starts a
//! comment. Header keys: `name`, `title`, `kind`
//! (`symmetric|alternating|perm|matrix|central_product|quotient|coset|subgroup|stub`),
//! `order`, and metadata `socle`, `center`, `out`, `list`, `roles`,
//! `default`, `oversized`. For an almost-simple entry `socle` names its
//! simple normal subgroup; for a quasisimple entry it names `G/Z(G)`. Bodies: `n=` for symmetric and alternating
//! groups; `degree=` and repeated `gen=[[0,1,2],[3,4]]` for permutations;
//! `field=p,k,[modulus]`, `action=vector|projective` and row-major
//! `gen=[[1,1],[0,1]]` for matrices; `factors=A,B` and
//! `glue=<perm in A> | <perm in B>` for central products; `source=` with
//! `kernel=center` or generators for quotients, cosets and subgroups.

mod parse;

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, OnceLock};

pub use parse::{parse_entry, CatalogEntry, Construction, KernelSpec, MatrixAction, Role};

use crate::error::{Error, Result};
use crate::gfmat::{field_make, projective_action_to_perm, vector_action_to_perm, Matrix};
use crate::perm::{centralizer_of, PermGroup, Permutation, SubgroupHandle};
use crate::structure::{
    center, central_product, derived_subgroup, is_quasisimple, is_solvable, normal_subgroups, quotient, CentralProduct,
    CentralProductSpec,
};

macro_rules! builtin_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../catalog/", $name, ".group")))),*]
    };
}

const BUILTIN: &[(&str, &str)] = builtin_files!(
    "Sym3",
    "Sym4",
    "Sym5",
    "Sym6",
    "Sym7",
    "Alt4",
    "Alt5",
    "Alt6",
    "Alt7",
    "Alt8",
    "PSL25",
    "PSL27",
    "PSL28",
    "PSL29",
    "PSL211",
    "PSL213",
    "PGL27",
    "PGL29",
    "M10",
    "AutA6",
    "PSL34",
    "PSU33",
    "SL23",
    "SL24",
    "SL25",
    "SL25Z",
    "SL27",
    "SL29",
    "3Alt6",
    "Q8",
    "C4",
    "Q8C4",
    "SL25oSL25",
    "D8",
    "C2xC2",
    "F21",
    "C1",
    "PSU43",
    "PSp43",
    "PSp43x2",
);

/// A constructed catalog group.
#[derive(Debug)]
pub struct BuiltGroup {
    pub entry: Arc<CatalogEntry>,
    pub group: Arc<PermGroup>,
    /// Present for central-product entries.
    pub central: Option<Arc<CentralProduct>>,
}

/// Entry selectors for [`Catalog::list`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    /// Every entry, including stubs and disabled ones.
    All,
    /// Entries built by default (enabled, not oversized).
    Default,
    Role(Role),
    /// Socles of the exceptional list, including oversized stubs.
    List,
    Oversized,
}

impl Filter {
    pub fn matches(self, e: &CatalogEntry) -> bool {
        match self {
            Filter::All => true,
            Filter::Default => e.default && !e.oversized,
            Filter::Role(r) => e.has_role(r),
            Filter::List => e.list_member,
            Filter::Oversized => e.oversized,
        }
    }
}

/// A set of entries with lazily built, shared groups.
pub struct Catalog {
    entries: Vec<Arc<CatalogEntry>>,
    sources: Vec<(String, String)>,
    index: HashMap<String, usize>,
    cells: Vec<OnceLock<Result<Arc<BuiltGroup>>>>,
}

impl std::fmt::Debug for Catalog {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Catalog").field("entries", &self.entries.len()).finish()
    }
}

impl Catalog {
    /// Parse `(file name, contents)` pairs; entries are ordered by name.
    pub fn from_sources(sources: Vec<(String, String)>) -> Result<Self> {
        let mut sources = sources;
        sources.sort();
        let mut entries: Vec<Arc<CatalogEntry>> = Vec::new();
        for (file, text) in &sources {
            entries.push(Arc::new(parse_entry(file, text)?));
        }
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        let mut index = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            if index.insert(e.name.clone(), i).is_some() {
                return Err(Error::MetadataMismatch { name: e.name.clone(), detail: "duplicate name".into() });
            }
        }
        for (i, e) in entries.iter().enumerate() {
            if e.title != e.name {
                index.entry(e.title.clone()).or_insert(i);
            }
        }
        let catalog = Catalog { cells: entries.iter().map(|_| OnceLock::new()).collect(), entries, sources, index };
        catalog.check_references()?;
        Ok(catalog)
    }

    /// The definition files shipped with the crate.
    pub fn builtin() -> Result<Self> {
        Self::from_sources(BUILTIN.iter().map(|(n, t)| (format!("{n}.group"), t.to_string())).collect())
    }

    /// Every `*.group` file in a directory.
    pub fn load_dir(path: &Path) -> Result<Self> {
        let io = |e: std::io::Error| Error::Parse { file: path.display().to_string(), line: 0, msg: e.to_string() };
        let mut sources = Vec::new();
        for item in std::fs::read_dir(path).map_err(io)? {
            let p = item.map_err(io)?.path();
            if p.extension().is_some_and(|x| x == "group") {
                let text = std::fs::read_to_string(&p).map_err(io)?;
                let name = p.file_name().unwrap().to_string_lossy().to_string();
                sources.push((name, text));
            }
        }
        Self::from_sources(sources)
    }

    fn check_references(&self) -> Result<()> {
        for e in &self.entries {
            for d in e.dependencies() {
                if !self.index.contains_key(d) {
                    return Err(Error::MetadataMismatch {
                        name: e.name.clone(),
                        detail: format!("depends on unknown entry `{d}`"),
                    });
                }
            }
            if let Some(s) = &e.socle {
                if !self.index.contains_key(s.as_str()) {
                    return Err(Error::MetadataMismatch {
                        name: e.name.clone(),
                        detail: format!("socle `{s}` is not an entry"),
                    });
                }
            }
        }
        // dependency cycles
        let mut state = vec![0u8; self.entries.len()];
        fn visit(c: &Catalog, i: usize, state: &mut [u8]) -> Result<()> {
            match state[i] {
                1 => {
                    return Err(Error::MetadataMismatch {
                        name: c.entries[i].name.clone(),
                        detail: "dependency cycle".into(),
                    })
                }
                2 => return Ok(()),
                _ => {}
            }
            state[i] = 1;
            for d in c.entries[i].dependencies() {
                visit(c, c.index[d], state)?;
            }
            state[i] = 2;
            Ok(())
        }
        for i in 0..self.entries.len() {
            visit(self, i, &mut state)?;
        }
        Ok(())
    }

    pub fn entries(&self) -> &[Arc<CatalogEntry>] {
        &self.entries
    }

    /// `(file name, contents)` of every definition, sorted by file name.
    pub fn sources(&self) -> &[(String, String)] {
        &self.sources
    }

    pub fn entry(&self, name: &str) -> Result<&Arc<CatalogEntry>> {
        self.index.get(name).map(|&i| &self.entries[i]).ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    /// Names of the entries matching `filter`, in name order.
    pub fn list(&self, filter: Filter) -> Vec<String> {
        self.entries.iter().filter(|e| filter.matches(e)).map(|e| e.name.clone()).collect()
    }

    /// Build (once) and verify an entry.
    pub fn build(&self, name: &str) -> Result<Arc<BuiltGroup>> {
        let i = *self.index.get(name).ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
        self.cells[i].get_or_init(|| self.construct(i)).clone()
    }

    fn construct(&self, i: usize) -> Result<Arc<BuiltGroup>> {
        let entry = self.entries[i].clone();
        let mismatch = |detail: String| Error::MetadataMismatch { name: entry.name.clone(), detail };
        let perm_in = |degree: usize, line: usize, text: &str| {
            Permutation::parse_cycles(degree, text).map_err(|e| Error::Parse {
                file: entry.file.clone(),
                line,
                msg: e.to_string(),
            })
        };
        let mut central = None;
        let group = match &entry.construction {
            Construction::Stub => return Err(Error::Oversized(entry.name.clone())),
            Construction::Symmetric(n) => Arc::new(PermGroup::symmetric(*n)),
            Construction::Alternating(n) => Arc::new(PermGroup::alternating(*n)),
            Construction::Permutations { degree, gens } => Arc::new(PermGroup::new(*degree, gens.clone())?),
            Construction::Matrices { p, k, modulus, action, gens } => {
                let field = Arc::new(field_make(*p, *k, modulus)?);
                let mats = gens.iter().map(|m| Matrix::from_rows(field.clone(), m)).collect::<Result<Vec<_>>>()?;
                let perms = match action {
                    MatrixAction::Vector => vector_action_to_perm(&mats)?,
                    MatrixAction::Projective => projective_action_to_perm(&mats)?,
                };
                let degree = perms[0].degree();
                Arc::new(PermGroup::new(degree, perms)?)
            }
            Construction::CentralProduct { factors, glue } => {
                let built = factors.iter().map(|f| self.build(f)).collect::<Result<Vec<_>>>()?;
                let glue = glue
                    .iter()
                    .map(|(line, parts)| {
                        parts
                            .iter()
                            .zip(&built)
                            .map(|(t, b)| perm_in(b.group.degree(), *line, t))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let spec = CentralProductSpec { factors: built.iter().map(|b| b.group.clone()).collect(), glue };
                let cp = central_product(&spec)?;
                let g = cp.group().clone();
                central = Some(Arc::new(cp));
                g
            }
            Construction::Quotient { source, kernel } => {
                let src = self.build(source)?;
                let n = match kernel {
                    KernelSpec::Center => center(&src.group)?,
                    KernelSpec::Generators(gens) => {
                        let gens = gens
                            .iter()
                            .map(|(line, t)| perm_in(src.group.degree(), *line, t))
                            .collect::<Result<Vec<_>>>()?;
                        SubgroupHandle::new(src.group.clone(), gens)?
                    }
                };
                let q = quotient(&src.group, &n)?;
                q.group().clone()
            }
            Construction::Coset { source, stabilizer } => {
                let src = self.build(source)?;
                let gens = stabilizer
                    .iter()
                    .map(|(line, t)| perm_in(src.group.degree(), *line, t))
                    .collect::<Result<Vec<_>>>()?;
                let h = SubgroupHandle::new(src.group.clone(), gens)?;
                Arc::new(coset_action(&src.group, &h)?)
            }
            Construction::Subgroup { source, gens } => {
                let src = self.build(source)?;
                let gens =
                    gens.iter().map(|(line, t)| perm_in(src.group.degree(), *line, t)).collect::<Result<Vec<_>>>()?;
                SubgroupHandle::new(src.group.clone(), gens)?.group().clone()
            }
        };
        if group.order() != entry.order {
            return Err(mismatch(format!("order {} is not the recorded {}", group.order(), entry.order)));
        }
        self.verify_metadata(&entry, &group)?;
        Ok(Arc::new(BuiltGroup { entry, group, central }))
    }

    fn verify_metadata(&self, entry: &CatalogEntry, g: &Arc<PermGroup>) -> Result<()> {
        let mismatch = |detail: String| Error::MetadataMismatch { name: entry.name.clone(), detail };
        if let Some(z) = entry.center_order {
            let actual = center(g)?.order();
            if actual != z {
                return Err(mismatch(format!("centre has order {actual}, not {z}")));
            }
        }
        if entry.has_role(Role::Simple) && (g.order() == 1 || normal_subgroups(g)?.len() != 2) {
            return Err(mismatch("not simple".into()));
        }
        if entry.has_role(Role::Quasisimple) {
            if !is_quasisimple(g)? {
                return Err(mismatch("not quasisimple".into()));
            }
            if let Some(socle_name) = &entry.socle {
                let z = center(g)?.order();
                let socle_order = self.entry(socle_name)?.order;
                if g.order() / z != socle_order {
                    return Err(mismatch(format!(
                        "G/Z(G) has order {}, socle `{socle_name}` has order {socle_order}",
                        g.order() / z
                    )));
                }
            }
        }
        if entry.has_role(Role::SolvableTest) && !is_solvable(g) {
            return Err(mismatch("not solvable".into()));
        }
        if entry.has_role(Role::AlmostSimple) {
            let socle_name = entry.socle.as_ref().ok_or_else(|| mismatch("almost simple without a socle".into()))?;
            let socle_order = self.entry(socle_name)?.order;
            let s = solvable_residual(g);
            if s.order() != socle_order {
                return Err(mismatch(format!(
                    "solvable residual has order {}, socle `{socle_name}` has order {socle_order}",
                    s.order()
                )));
            }
            if normal_subgroups(&s)?.len() != 2 {
                return Err(mismatch("socle is not simple".into()));
            }
            if centralizer_of(g, &s)?.order() != 1 {
                return Err(mismatch("socle has a nontrivial centralizer".into()));
            }
        }
        Ok(())
    }
}

/// Last term of the derived series.
pub fn solvable_residual(g: &Arc<PermGroup>) -> Arc<PermGroup> {
    let mut current = g.clone();
    loop {
        let d = derived_subgroup(&current);
        if d.order() == current.order() {
            return current;
        }
        current = Arc::new(d);
    }
}

/// Action of `g` on the right cosets `Hx` of a subgroup, by right
/// multiplication; cosets are numbered in order of their least element.
pub fn coset_action(g: &Arc<PermGroup>, h: &SubgroupHandle) -> Result<PermGroup> {
    let table = g.elements()?;
    let hs: Vec<Permutation> = h.group().chain_elements();
    let mut label = vec![u32::MAX; table.len()];
    let mut reps = Vec::new();
    for x in 0..table.len() {
        if label[x] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        for y in &hs {
            let i = table.index_of(&y.mul(table.get(x))).expect("coset element");
            label[i] = c;
        }
        reps.push(x);
    }
    let gens = g
        .generators()
        .iter()
        .map(|s| {
            let images = reps.iter().map(|&x| label[table.index_of(&table.get(x).mul(s)).unwrap()]).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(reps.len(), gens)
}

fn builtin_catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::builtin().expect("built-in catalog parses"))
}

/// The catalog shipped with the crate.
pub fn default_catalog() -> &'static Catalog {
    builtin_catalog()
}

/// Build an entry of the built-in catalog.
pub fn build(name: &str) -> Result<Arc<BuiltGroup>> {
    builtin_catalog().build(name)
}

/// Names of the built-in entries matching `filter`.
pub fn catalog_list(filter: Filter) -> Vec<String> {
    builtin_catalog().list(filter)
}
