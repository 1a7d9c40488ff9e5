//! Group catalogs, manifest files and the on-disk artifact cache.
//!
//! A manifest is JSON:
//!
//! ```json
//! {"schema_version": 1,
//!  "caps": {"order_cap": 2000, "subgroup_budget": 20000},
//!  "notes": ["free text"],
//!  "groups": [
//!    {"name": "S3", "construction": {"perms": {"degree": 3, "gens": ["(1 2)", "(1 2 3)"]}}},
//!    {"name": "C6", "construction": {"named": {"family": "cyclic", "params": [6]}}},
//!    {"name": "S3xC5", "construction": {"product": [{"named": ...}, {"named": ...}]}},
//!    {"name": "C3:C4", "construction": {"semidirect": {"normal": ..., "acting": ..., "action": [[2]]}}}
//!  ]}
//! ```
//!
//! or the same data as JSON lines: one descriptor per line, optionally preceded
//! by a header line holding the other fields.
//!
//! Permutations are written in cycle notation `(1 2 3)(4 5)` or as 1-based
//! image lists `[2,3,1,5,4]`. A table is the row-major Cayley table over
//! `0..order`. A semidirect action lists, for each generator of the acting
//! group, the images of the generators of the normal group as element indices
//! of the normal group.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, GroupId, Limits, Subgroup};
use crate::lattice::Lattice;
use crate::ElementSet;

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Named { family: String, params: Vec<u64> },
    Perms { degree: usize, gens: Vec<String> },
    Table { order: usize, table: Vec<u32> },
    Product(Box<Construction>, Box<Construction>),
    Semidirect {
        normal: Box<Construction>,
        acting: Box<Construction>,
        action: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub name: String,
    pub construction: Construction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub order_cap: usize,
    pub subgroup_budget: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<Caps>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub groups: Vec<GroupDescriptor>,
}

impl Default for CorpusManifest {
    fn default() -> Self {
        CorpusManifest {
            schema_version: SCHEMA_VERSION,
            caps: None,
            notes: Vec::new(),
            groups: Vec::new(),
        }
    }
}

impl CorpusManifest {
    pub fn limits(&self) -> Limits {
        match self.caps {
            Some(c) => Limits {
                order_cap: c.order_cap,
                subgroup_budget: c.subgroup_budget,
            },
            None => Limits::default(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&GroupDescriptor> {
        self.groups.iter().find(|d| d.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifests serialise")
    }
}

/// A loaded corpus member.
#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: String,
    pub group: Arc<Group>,
}

fn json_error(e: serde_json::Error, line_offset: usize) -> Error {
    Error::Parse {
        line: e.line() + line_offset,
        column: e.column(),
        message: e.to_string(),
    }
}

#[derive(Deserialize)]
struct Header {
    schema_version: u32,
    #[serde(default)]
    caps: Option<Caps>,
    #[serde(default)]
    notes: Vec<String>,
}

/// Parses a manifest in either JSON or JSON-lines form and validates it.
pub fn parse_manifest(text: &str) -> Result<CorpusManifest> {
    if text.trim().is_empty() {
        return Ok(CorpusManifest::default());
    }
    let manifest = match serde_json::from_str::<CorpusManifest>(text) {
        Ok(m) => m,
        Err(whole) => {
            let lines: Vec<(usize, &str)> = text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .collect();
            let first_is_value = lines
                .first()
                .is_some_and(|(_, l)| serde_json::from_str::<serde_json::Value>(l).is_ok());
            if !first_is_value {
                return Err(json_error(whole, 0));
            }
            let mut m = CorpusManifest::default();
            for (i, (lineno, line)) in lines.iter().enumerate() {
                if i == 0 {
                    if let Ok(h) = serde_json::from_str::<Header>(line) {
                        m.schema_version = h.schema_version;
                        m.caps = h.caps;
                        m.notes = h.notes;
                        continue;
                    }
                }
                let d: GroupDescriptor = serde_json::from_str(line).map_err(|e| json_error(e, *lineno))?;
                m.groups.push(d);
            }
            m
        }
    };
    if manifest.schema_version != SCHEMA_VERSION {
        return Err(Error::Validation(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            manifest.schema_version
        )));
    }
    let mut names = HashSet::new();
    for d in &manifest.groups {
        if !names.insert(d.name.as_str()) {
            return Err(Error::Validation(format!("duplicate group name {}", d.name)));
        }
    }
    Ok(manifest)
}

/// Parses one permutation on `degree` points into 0-based images.
pub fn parse_permutation(degree: usize, text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    let bad = |m: &str| Error::Validation(format!("permutation {t:?}: {m}"));
    let images: Vec<u32> = if let Some(inner) = t.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| bad("missing ']'"))?;
        let mut out = Vec::new();
        for part in inner.split(',').filter(|s| !s.trim().is_empty()) {
            let v: usize = part.trim().parse().map_err(|_| bad("expected integers"))?;
            if v == 0 || v > degree {
                return Err(bad("point out of range"));
            }
            out.push(v as u32 - 1);
        }
        out
    } else {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut rest = t;
        let mut moved = vec![false; degree];
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = open.find(')').ok_or_else(|| bad("missing ')'"))?;
            let cycle: Vec<usize> = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("expected integers")))
                .collect::<Result<_>>()?;
            for &x in &cycle {
                if x == 0 || x > degree {
                    return Err(bad("point out of range"));
                }
                if moved[x - 1] {
                    return Err(bad("cycles are not disjoint"));
                }
                moved[x - 1] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(i + 1) % cycle.len()] as u32 - 1;
            }
            rest = open[close + 1..].trim_start();
        }
        images
    };
    crate::group::validate_perm(degree, &images).map_err(|e| bad(&e.to_string()))?;
    Ok(images)
}

fn cyc(points: &[u32], degree: usize) -> Vec<u32> {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &x) in points.iter().enumerate() {
        images[x as usize] = points[(i + 1) % points.len()];
    }
    images
}

fn generalized_quaternion(order: usize, limits: Limits) -> Result<Group> {
    // a^i b^j with a of order 2m, b^2 = a^m, b a b^-1 = a^-1
    let m = order / 4;
    let n = 2 * m;
    let idx = |i: usize, j: usize| (j * n + i % n) as u32;
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (i, j) = (x % n, x / n);
        for y in 0..order {
            let (k, l) = (y % n, y / n);
            table[x * order + y] = match (j, l) {
                (0, _) => idx(i + k, l),
                (1, 0) => idx(i + n - k, 1),
                _ => idx(i + n - k + m, 0),
            };
        }
    }
    Group::from_table(order, &table, limits)
}

/// Permutations of the eight nonzero vectors of `F_3^2` under 2×2 matrices.
fn matrix_group(mats: &[[i64; 4]], limits: Limits) -> Result<Group> {
    let vectors: Vec<(i64, i64)> = (0..9)
        .map(|v| (v / 3, v % 3))
        .filter(|&v| v != (0, 0))
        .collect();
    let pos = |v: (i64, i64)| vectors.iter().position(|&w| w == v).unwrap() as u32;
    let gens: Vec<Vec<u32>> = mats
        .iter()
        .map(|m| {
            vectors
                .iter()
                .map(|&(x, y)| pos(((m[0] * x + m[1] * y).rem_euclid(3), (m[2] * x + m[3] * y).rem_euclid(3))))
                .collect()
        })
        .collect();
    Group::from_permutations(8, &gens, limits)
}

fn named(family: &str, params: &[u64], limits: Limits) -> Result<Group> {
    let bad = |m: String| Error::Validation(format!("named group {family}{params:?}: {m}"));
    let arg = |i: usize| params.get(i).copied().map(|v| v as usize).ok_or_else(|| bad("missing parameter".into()));
    let all: Vec<u32>;
    match family {
        "cyclic" => {
            let n = arg(0)?;
            if n == 0 {
                return Err(bad("order must be positive".into()));
            }
            all = (0..n as u32).collect();
            let gens = if n == 1 { vec![] } else { vec![cyc(&all, n)] };
            Group::from_permutations(n, &gens, limits)
        }
        "elementary_abelian" => {
            let (p, k) = (arg(0)?, arg(1)?);
            if !crate::primes::is_prime(p as u64) {
                return Err(bad("first parameter must be prime".into()));
            }
            let gens: Vec<Vec<u32>> = (0..k)
                .map(|i| cyc(&((i * p) as u32..((i + 1) * p) as u32).collect::<Vec<_>>(), p * k))
                .collect();
            Group::from_permutations(p * k, &gens, limits)
        }
        "dihedral" => {
            let order = arg(0)?;
            if order < 6 || order % 2 == 1 {
                return Err(bad("dihedral groups here have even order at least 6".into()));
            }
            let n = order / 2;
            all = (0..n as u32).collect();
            let reflection: Vec<u32> = (0..n).map(|x| ((n - x) % n) as u32).collect();
            Group::from_permutations(n, &[cyc(&all, n), reflection], limits)
        }
        "quaternion" => {
            let order = arg(0)?;
            if order < 8 || !order.is_power_of_two() {
                return Err(bad("order must be a power of two, at least 8".into()));
            }
            generalized_quaternion(order, limits)
        }
        "symmetric" | "alternating" => {
            let n = arg(0)?;
            if n < 2 {
                return Group::from_permutations(1, &[], limits);
            }
            let full: Vec<u32> = (0..n as u32).collect();
            let gens = if family == "symmetric" {
                vec![cyc(&[0, 1], n), cyc(&full, n)]
            } else if n < 3 {
                vec![]
            } else if n % 2 == 1 {
                vec![cyc(&[0, 1, 2], n), cyc(&full, n)]
            } else {
                vec![cyc(&[0, 1, 2], n), cyc(&full[1..], n)]
            };
            Group::from_permutations(n, &gens, limits)
        }
        "sl23" => matrix_group(&[[1, 1, 0, 1], [0, 2, 1, 0]], limits),
        "gl23" => matrix_group(&[[1, 1, 0, 1], [0, 2, 1, 0], [2, 0, 0, 1]], limits),
        _ => Err(bad("unknown family".into())),
    }
}

fn product_subgroup_gens(g: &Group) -> Vec<usize> {
    g.generators().to_vec()
}

/// Builds a descriptor's group.
pub fn load_group(d: &GroupDescriptor, limits: Limits) -> Result<Group> {
    build(&d.construction, limits).map_err(|e| match e {
        Error::InvalidPermutation(m) | Error::InvalidTable(m) | Error::InvalidAction(m) | Error::InvalidHomomorphism(m) => {
            Error::Validation(format!("{}: {m}", d.name))
        }
        Error::Validation(m) => Error::Validation(format!("{}: {m}", d.name)),
        other => other,
    })
}

fn build(c: &Construction, limits: Limits) -> Result<Group> {
    match c {
        Construction::Named { family, params } => named(family, params, limits),
        Construction::Perms { degree, gens } => {
            let gens: Vec<Vec<u32>> = gens
                .iter()
                .map(|s| parse_permutation(*degree, s))
                .collect::<Result<_>>()?;
            Group::from_permutations((*degree).max(1), &gens, limits)
        }
        Construction::Table { order, table } => Group::from_table(*order, table, limits),
        Construction::Product(a, b) => Group::direct_product(&build(a, limits)?, &build(b, limits)?),
        Construction::Semidirect { normal, acting, action } => {
            let n = build(normal, limits)?;
            let h = build(acting, limits)?;
            let gens = product_subgroup_gens(&n);
            let auts: Vec<Vec<u32>> = action
                .iter()
                .map(|images| {
                    if images.len() != gens.len() {
                        return Err(Error::InvalidAction(format!(
                            "expected images for {} generators of the normal group",
                            gens.len()
                        )));
                    }
                    let hom = n.extend_homomorphism(&n, images)?;
                    Ok(hom.image_of)
                })
                .collect::<Result<_>>()?;
            let full = Group::extend_action(&n, &h, &auts)?;
            Group::semidirect_product(&n, &h, &full)
        }
    }
}

/// Loads every group of a manifest, in manifest order.
pub fn load_corpus(m: &CorpusManifest) -> Result<Vec<NamedGroup>> {
    let limits = m.limits();
    m.groups
        .iter()
        .map(|d| {
            Ok(NamedGroup {
                name: d.name.clone(),
                group: Arc::new(load_group(d, limits)?),
            })
        })
        .collect()
}

fn nm(family: &str, params: &[u64]) -> Construction {
    Construction::Named {
        family: family.into(),
        params: params.to_vec(),
    }
}

fn perms(degree: usize, gens: &[&str]) -> Construction {
    Construction::Perms {
        degree,
        gens: gens.iter().map(|s| s.to_string()).collect(),
    }
}

/// The built-in corpus.
pub fn builtin_catalog() -> CorpusManifest {
    let mut groups = Vec::new();
    let mut add = |name: &str, c: Construction| {
        groups.push(GroupDescriptor {
            name: name.into(),
            construction: c,
        })
    };
    for n in 1..=32 {
        add(&format!("C{n}"), nm("cyclic", &[n]));
    }
    add("C2^2", nm("elementary_abelian", &[2, 2]));
    add("C2^3", nm("elementary_abelian", &[2, 3]));
    add("C2^4", nm("elementary_abelian", &[2, 4]));
    add("C3^2", nm("elementary_abelian", &[3, 2]));
    add("C3^3", nm("elementary_abelian", &[3, 3]));
    for n in 3..=12 {
        add(&format!("D{}", 2 * n), nm("dihedral", &[2 * n]));
    }
    add("Q8", nm("quaternion", &[8]));
    add("Q16", nm("quaternion", &[16]));
    add("S3", perms(3, &["(1 2)", "(1 2 3)"]));
    add("S4", nm("symmetric", &[4]));
    add("S5", nm("symmetric", &[5]));
    add("A4", nm("alternating", &[4]));
    add("A5", nm("alternating", &[5]));
    add("SL(2,3)", nm("sl23", &[]));
    add("GL(2,3)", nm("gl23", &[]));
    add("F20", perms(5, &["(1 2 3 4 5)", "(2 3 5 4)"]));
    add("F21", perms(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]));
    add(
        "S3xC5",
        Construction::Product(Box::new(perms(3, &["(1 2)", "(1 2 3)"])), Box::new(nm("cyclic", &[5]))),
    );
    add(
        "C3:C4",
        Construction::Semidirect {
            normal: Box::new(nm("cyclic", &[3])),
            acting: Box::new(nm("cyclic", &[4])),
            action: vec![vec![2]],
        },
    );
    add(
        "A4xC2",
        Construction::Product(Box::new(nm("alternating", &[4])), Box::new(nm("cyclic", &[2]))),
    );
    add(
        "S3xS3",
        Construction::Product(Box::new(perms(3, &["(1 2)", "(1 2 3)"])), Box::new(perms(3, &["(1 2)", "(1 2 3)"]))),
    );
    CorpusManifest {
        schema_version: SCHEMA_VERSION,
        caps: None,
        notes: vec!["built-in catalog".into()],
        groups,
    }
}

/// Loads one named group from the built-in catalog.
pub fn builtin(name: &str) -> Option<NamedGroup> {
    builtin_with(name, Limits::default())
}

pub fn builtin_with(name: &str, limits: Limits) -> Option<NamedGroup> {
    let cat = builtin_catalog();
    let d = cat.get(name)?;
    Some(NamedGroup {
        name: d.name.clone(),
        group: Arc::new(load_group(d, limits).expect("built-in groups are valid")),
    })
}

// ---- disk cache -----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArtifactKind {
    Lattice,
    ChiefSeries,
    NormResults,
}

impl ArtifactKind {
    fn stem(self) -> &'static str {
        match self {
            ArtifactKind::Lattice => "lattice",
            ArtifactKind::ChiefSeries => "chief_series",
            ArtifactKind::NormResults => "norm_results",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Blob<T> {
    group: String,
    order: usize,
    payload: T,
}

/// `cache/<group id>/<artifact>.v<N>` under a root directory.
#[derive(Debug, Clone)]
pub struct DiskCache {
    root: PathBuf,
}

impl DiskCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        DiskCache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, id: GroupId, kind: ArtifactKind) -> PathBuf {
        self.dir(id).join(format!("{}.v{CACHE_VERSION}", kind.stem()))
    }

    fn dir(&self, id: GroupId) -> PathBuf {
        self.root.join("cache").join(id.to_string())
    }

    fn store<T: Serialize>(&self, g: &Group, kind: ArtifactKind, payload: T) -> Result<()> {
        let dir = self.dir(g.id());
        fs::create_dir_all(&dir)?;
        let blob = Blob {
            group: g.id().to_string(),
            order: g.order(),
            payload,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
        serde_json::to_writer(&mut tmp, &blob).map_err(|e| Error::Io(e.to_string()))?;
        tmp.flush()?;
        tmp.persist(self.path(g.id(), kind)).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }

    fn load<T: for<'de> Deserialize<'de>>(&self, g: &Group, kind: ArtifactKind) -> Result<T> {
        let path = self.path(g.id(), kind);
        if !path.exists() {
            let prefix = format!("{}.v", kind.stem());
            if let Ok(entries) = fs::read_dir(self.dir(g.id())) {
                for e in entries.flatten() {
                    let name = e.file_name().to_string_lossy().to_string();
                    if let Some(v) = name.strip_prefix(&prefix).and_then(|v| v.parse::<u32>().ok()) {
                        return Err(Error::CacheVersionMismatch {
                            found: v,
                            expected: CACHE_VERSION,
                        });
                    }
                }
            }
            return Err(Error::CacheMiss);
        }
        let bytes = fs::read(&path)?;
        let blob: Blob<T> =
            serde_json::from_slice(&bytes).map_err(|e| Error::CorruptCache(format!("{}: {e}", path.display())))?;
        if blob.group != g.id().to_string() || blob.order != g.order() {
            return Err(Error::CorruptCache(format!("{}: wrong group", path.display())));
        }
        Ok(blob.payload)
    }

    fn subgroup(g: &Group, members: &[usize]) -> Result<Subgroup> {
        let bad = || Error::CorruptCache("invalid subgroup record".into());
        if members.first() != Some(&0) || members.iter().any(|&x| x >= g.order()) {
            return Err(bad());
        }
        let set = ElementSet::from_indices(g.order(), members.iter().copied());
        if set.len() != members.len() || !g.order().is_multiple_of(set.len()) {
            return Err(bad());
        }
        Ok(Subgroup::from_members(g.id(), set))
    }

    fn subgroups(g: &Group, records: &[Vec<usize>]) -> Result<Vec<Subgroup>> {
        records.iter().map(|m| Self::subgroup(g, m)).collect()
    }

    pub fn store_lattice(&self, g: &Group, l: &Lattice) -> Result<()> {
        let records: Vec<Vec<usize>> = l.subgroups().iter().map(|s| s.elements()).collect();
        self.store(g, ArtifactKind::Lattice, records)
    }

    /// Loads and structurally re-checks a lattice.
    pub fn load_lattice(&self, g: &Group) -> Result<Lattice> {
        let records: Vec<Vec<usize>> = self.load(g, ArtifactKind::Lattice)?;
        let subs = Self::subgroups(g, &records)?;
        for s in &subs {
            if g.subgroup_from_set(s.members().clone()).is_err() {
                return Err(Error::CorruptCache("listed set is not a subgroup".into()));
            }
        }
        let l = Lattice::from_subgroups_checked(g, subs)?;
        l.sanity_check(g)?;
        Ok(l)
    }

    /// Installs a cached lattice into `g`, or computes and stores it.
    /// Version mismatches and corrupt entries are recomputed.
    pub fn warm_lattice(&self, g: &Group) -> Result<Arc<Lattice>> {
        if let Some(l) = g.lattice_if_computed() {
            return Ok(l);
        }
        match self.load_lattice(g) {
            Ok(l) => {
                g.install_lattice(l);
                return g.lattice();
            }
            Err(Error::CacheMiss) => {}
            Err(e @ Error::CacheVersionMismatch { .. }) => log::info!("{e}; recomputing"),
            Err(e) => log::warn!("{e}; recomputing"),
        }
        let l = g.lattice()?;
        self.store_lattice(g, &l)?;
        Ok(l)
    }

    pub fn store_chief_series(&self, g: &Group, s: &crate::series::ChiefSeries) -> Result<()> {
        let records: Vec<Vec<usize>> = s.terms.iter().map(|t| t.elements()).collect();
        self.store(g, ArtifactKind::ChiefSeries, records)
    }

    pub fn load_chief_series(&self, g: &Group) -> Result<crate::series::ChiefSeries> {
        let records: Vec<Vec<usize>> = self.load(g, ArtifactKind::ChiefSeries)?;
        let terms = Self::subgroups(g, &records)?;
        if terms.windows(2).any(|w| !w[0].is_proper_subgroup_of(&w[1])) || terms.iter().any(|t| !g.is_normal(t)) {
            return Err(Error::CorruptCache("not a normal series".into()));
        }
        Ok(crate::series::ChiefSeries {
            parent: g.id(),
            terms,
        })
    }

    /// Norm-type results keyed by a caller-chosen label such as `"H=1;F=U"`.
    pub fn store_norm_results(&self, g: &Group, results: &BTreeMap<String, Subgroup>) -> Result<()> {
        let records: BTreeMap<&String, Vec<usize>> = results.iter().map(|(k, s)| (k, s.elements())).collect();
        self.store(g, ArtifactKind::NormResults, records)
    }

    pub fn load_norm_results(&self, g: &Group) -> Result<BTreeMap<String, Subgroup>> {
        let records: BTreeMap<String, Vec<usize>> = self.load(g, ArtifactKind::NormResults)?;
        records
            .into_iter()
            .map(|(k, m)| {
                let s = Self::subgroup(g, &m)?;
                if !g.is_normal(&s) {
                    return Err(Error::CorruptCache("stored norm is not normal".into()));
                }
                Ok((k, s))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_notations() {
        assert_eq!(parse_permutation(3, "(1 2 3)").unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_permutation(5, "[2,3,1,5,4]").unwrap(), vec![1, 2, 0, 4, 3]);
        assert_eq!(parse_permutation(2, "()").unwrap(), vec![0, 1]);
        assert!(matches!(parse_permutation(3, "[1,1,2]"), Err(Error::Validation(_))));
        assert!(parse_permutation(3, "(1 4)").is_err());
        assert!(parse_permutation(3, "(1 2)(2 3)").is_err());
    }

    #[test]
    fn catalog_orders() {
        let cat = builtin_catalog();
        let corpus = load_corpus(&cat).unwrap();
        let order = |n: &str| corpus.iter().find(|g| g.name == n).unwrap().group.order();
        for (n, o) in [
            ("C1", 1),
            ("C32", 32),
            ("C3^3", 27),
            ("D24", 24),
            ("Q16", 16),
            ("S5", 120),
            ("A5", 60),
            ("SL(2,3)", 24),
            ("GL(2,3)", 48),
            ("F20", 20),
            ("F21", 21),
            ("S3xC5", 30),
            ("C3:C4", 12),
            ("A4xC2", 24),
            ("S3xS3", 36),
        ] {
            assert_eq!(order(n), o, "{n}");
        }
        let q8 = corpus.iter().find(|g| g.name == "Q8").unwrap();
        assert!(q8.group.is_quaternion_q8());
        let c34 = corpus.iter().find(|g| g.name == "C3:C4").unwrap();
        assert!(!c34.group.is_abelian());
    }

    #[test]
    fn manifest_forms() {
        let m = parse_manifest(
            r#"{"schema_version":1,"groups":[{"name":"S3","construction":{"perms":{"degree":3,"gens":["(1 2)","(1 2 3)"]}}}]}"#,
        )
        .unwrap();
        assert_eq!(load_corpus(&m).unwrap()[0].group.order(), 6);
        assert!(parse_manifest("").unwrap().groups.is_empty());
        let lines = "{\"schema_version\":1}\n{\"name\":\"C4\",\"construction\":{\"named\":{\"family\":\"cyclic\",\"params\":[4]}}}\n";
        assert_eq!(parse_manifest(lines).unwrap().groups.len(), 1);
        match parse_manifest("{\"schema_version\":1,\n \"groups\": [}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"schema_version":1,"groups":[{"name":"X","construction":{"perms":{"degree":3,"gens":["[1,1,2]"]}}}]}"#;
        let m = parse_manifest(bad).unwrap();
        assert!(matches!(load_corpus(&m), Err(Error::Validation(_))));
    }

    #[test]
    fn manifest_round_trip() {
        let cat = builtin_catalog();
        assert_eq!(parse_manifest(&cat.to_json()).unwrap(), cat);
    }
}
