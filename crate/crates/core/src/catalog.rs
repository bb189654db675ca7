//! Bundled datasets: simple-group table, primitive groups of degree 5 to 12, and the
//! verification corpus. Loaders re-check everything that can be recomputed.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::groupfile::GroupFile;
use crate::perm::Permutation;

pub const DATA_ENV: &str = "RESIDUA_DATA";

pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_ENV) {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data")),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGroupRecord {
    pub name: String,
    pub order: u64,
    pub out_order: u64,
    pub aut_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<Vec<u64>>,
}

impl SimpleGroupRecord {
    pub fn new(name: &str, order: u64, out_order: u64, fingerprint: Option<Vec<u64>>) -> Self {
        SimpleGroupRecord {
            name: name.to_string(),
            order,
            out_order,
            aut_order: order * out_order,
            fingerprint,
        }
    }

    /// Kohl's bound |Out(S)| < log₂|S|, decided as 2^out < order.
    pub fn kohl_holds(&self) -> bool {
        self.out_order < 64 && (1u128 << self.out_order) < self.order as u128
    }
}

#[derive(Clone, Debug)]
pub struct SimpleTable {
    pub records: Vec<SimpleGroupRecord>,
    /// Every nonabelian simple group of order at most this value is listed.
    pub complete_through: u64,
}

impl SimpleTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut records = Vec::new();
        let mut complete_through = None;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(d) = line.strip_prefix("#@") {
                let (k, v) = d
                    .split_once('=')
                    .ok_or_else(|| Error::Data(format!("line {}: bad directive", no + 1)))?;
                if k.trim() == "complete_through" {
                    complete_through = Some(
                        v.trim()
                            .parse()
                            .map_err(|_| Error::Data(format!("line {}: bad bound", no + 1)))?,
                    );
                }
                continue;
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('|').map(str::trim).collect();
            if cols.len() != 4 {
                return Err(Error::Data(format!(
                    "line {}: expected name|order|out_order|fingerprint",
                    no + 1
                )));
            }
            let num = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| Error::Data(format!("line {}: bad number `{s}`", no + 1)))
            };
            let fingerprint = if cols[3].is_empty() {
                None
            } else {
                let mut f = cols[3]
                    .split(',')
                    .map(|s| num(s.trim()))
                    .collect::<Result<Vec<u64>>>()?;
                f.sort_unstable();
                Some(f)
            };
            records.push(SimpleGroupRecord::new(
                cols[0],
                num(cols[1])?,
                num(cols[2])?,
                fingerprint,
            ));
        }
        let table = SimpleTable {
            records,
            complete_through: complete_through
                .ok_or_else(|| Error::Data("missing complete_through".into()))?,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn load(dir: &Path) -> Result<Self> {
        Self::parse(&read(&dir.join("simple_groups.txt"))?)
    }

    fn validate(&self) -> Result<()> {
        let mut last = 0;
        for r in &self.records {
            if r.order < 60 || r.order < last {
                return Err(Error::Data(format!(
                    "{}: orders must be >= 60 and ascending",
                    r.name
                )));
            }
            last = r.order;
            if r.out_order == 0 || r.aut_order != r.order * r.out_order {
                return Err(Error::Data(format!("{}: bad automorphism data", r.name)));
            }
            if let Some(f) = &r.fingerprint {
                if f.first() != Some(&1) || f.iter().any(|&k| r.order % k != 0) {
                    return Err(Error::Data(format!(
                        "{}: element orders must include 1 and divide |S|",
                        r.name
                    )));
                }
            }
            if self.records.iter().filter(|s| s.name == r.name).count() > 1 {
                return Err(Error::Data(format!("{}: duplicate row", r.name)));
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&SimpleGroupRecord> {
        let canon = canonical_name(name);
        self.records.iter().find(|r| r.name == canon)
    }

    pub fn with_order(&self, order: u64) -> Vec<&SimpleGroupRecord> {
        self.records.iter().filter(|r| r.order == order).collect()
    }

    /// Name by order, using element orders to separate groups of equal order.
    pub fn identify(&self, order: u64, fingerprint: Option<&[u64]>) -> Result<&SimpleGroupRecord> {
        let cands = self.with_order(order);
        if cands.is_empty() {
            return Err(Error::Data(format!(
                "no simple group of order {order} in the table"
            )));
        }
        match fingerprint {
            Some(fp) => {
                let hits: Vec<_> = cands
                    .into_iter()
                    .filter(|r| r.fingerprint.as_deref() == Some(fp))
                    .collect();
                match hits.as_slice() {
                    [one] => Ok(one),
                    _ => Err(Error::Data(format!(
                        "element orders {fp:?} match no unique simple group of order {order}"
                    ))),
                }
            }
            None if cands.len() == 1 => Ok(cands[0]),
            None => Err(Error::Data(format!(
                "order {order} is ambiguous without element orders"
            ))),
        }
    }
}

const ALIASES: &[(&str, &[&str])] = &[
    ("A5", &["PSL(2,4)", "PSL(2,5)"]),
    ("PSL(2,7)", &["PSL(3,2)"]),
    ("A6", &["PSL(2,9)"]),
    ("A8", &["PSL(4,2)"]),
    ("PSU(4,2)", &["PSp(4,3)"]),
];

fn squash(name: &str) -> String {
    name.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Table name for a simple group, resolving the usual exceptional isomorphisms.
pub fn canonical_name(name: &str) -> String {
    let s = squash(name);
    for (canon, others) in ALIASES {
        if s.eq_ignore_ascii_case(canon) || others.iter().any(|o| s.eq_ignore_ascii_case(o)) {
            return canon.to_string();
        }
    }
    s
}

fn all_names(name: &str) -> Vec<String> {
    let canon = canonical_name(name);
    let mut out = vec![canon.clone()];
    for (c, others) in ALIASES {
        if *c == canon {
            out.extend(others.iter().map(|s| s.to_string()));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinimalSimpleFamily {
    /// PSL₂(2^p), p prime
    Psl2Even {
        p: u32,
    },
    /// PSL₂(3^p), p an odd prime
    Psl2Three {
        p: u32,
    },
    /// PSL₂(p), p > 3 prime with p ≡ 2, 3 mod 5
    Psl2Prime {
        p: u64,
    },
    /// Sz(2^p), p an odd prime
    Suzuki {
        p: u32,
    },
    Psl33,
}

impl fmt::Display for MinimalSimpleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalSimpleFamily::Psl2Even { p } => write!(f, "PSL(2,2^{p}), {p} prime"),
            MinimalSimpleFamily::Psl2Three { p } => write!(f, "PSL(2,3^{p}), {p} odd prime"),
            MinimalSimpleFamily::Psl2Prime { p } => {
                write!(f, "PSL(2,{p}), {p} prime, {p} mod 5 = {}", p % 5)
            }
            MinimalSimpleFamily::Suzuki { p } => write!(f, "Sz(2^{p}), {p} odd prime"),
            MinimalSimpleFamily::Psl33 => write!(f, "PSL(3,3)"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn parse_args<'a>(s: &'a str, prefix: &str) -> Option<Vec<&'a str>> {
    let inner = s
        .strip_prefix(prefix)?
        .strip_prefix('(')?
        .strip_suffix(')')?;
    Some(inner.split(',').collect())
}

fn family_of(name: &str) -> Option<MinimalSimpleFamily> {
    if name.eq_ignore_ascii_case("PSL(3,3)") {
        return Some(MinimalSimpleFamily::Psl33);
    }
    if let Some(args) = parse_args(name, "PSL") {
        if args.len() == 2 && args[0] == "2" {
            let (p, k) = prime_power(args[1].parse().ok()?)?;
            return match (p, k) {
                (2, k) if is_prime(k as u64) => Some(MinimalSimpleFamily::Psl2Even { p: k }),
                (3, k) if k != 2 && is_prime(k as u64) => {
                    Some(MinimalSimpleFamily::Psl2Three { p: k })
                }
                (p, 1) if p > 3 && matches!(p % 5, 2 | 3) => {
                    Some(MinimalSimpleFamily::Psl2Prime { p })
                }
                _ => None,
            };
        }
    }
    if let Some(args) = parse_args(name, "Sz") {
        if args.len() == 1 {
            let (p, k) = prime_power(args[0].parse().ok()?)?;
            if p == 2 && k != 2 && is_prime(k as u64) {
                return Some(MinimalSimpleFamily::Suzuki { p: k });
            }
        }
    }
    None
}

/// Family of the minimal simple group `name` on Thompson's list, if it is one.
pub fn minimal_simple_family(name: &str) -> Option<MinimalSimpleFamily> {
    all_names(name).iter().find_map(|n| family_of(n))
}

pub fn is_minimal_simple(name: &str) -> bool {
    minimal_simple_family(name).is_some()
}

#[derive(Clone, Debug)]
pub struct PrimitiveEntry {
    pub label: String,
    pub degree: usize,
    pub order: u64,
    pub group: GroupHandle,
    pub source: String,
}

#[derive(Deserialize)]
struct PrimitiveFile {
    degree: usize,
    expected_count: usize,
    #[serde(default)]
    group: Vec<PrimitiveRow>,
}

#[derive(Deserialize)]
struct PrimitiveRow {
    label: String,
    order: u64,
    generators: Vec<String>,
    source: String,
}

#[derive(Clone, Debug, Default)]
pub struct PrimitiveCatalog {
    pub degrees: BTreeMap<usize, Vec<PrimitiveEntry>>,
}

impl PrimitiveCatalog {
    pub fn parse_degree(text: &str) -> Result<(usize, Vec<PrimitiveEntry>)> {
        let file: PrimitiveFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let d = file.degree;
        if file.group.len() != file.expected_count {
            return Err(Error::Data(format!(
                "degree {d}: {} entries but {} primitive groups expected",
                file.group.len(),
                file.expected_count
            )));
        }
        let mut entries = Vec::new();
        for row in file.group {
            let gens = row
                .generators
                .iter()
                .map(|g| Permutation::parse_cycles(g, d, true))
                .collect::<Result<Vec<_>>>()?;
            let group = GroupHandle::new(d, gens)?;
            if group.order_u64() != Some(row.order) {
                return Err(Error::Data(format!(
                    "{} (degree {d}): generators give order {}",
                    row.label,
                    group.order()
                )));
            }
            if !group.is_transitive() {
                return Err(Error::Data(format!(
                    "{} (degree {d}) is not transitive",
                    row.label
                )));
            }
            if !group.is_primitive() {
                return Err(Error::Data(format!(
                    "{} (degree {d}) preserves a block system",
                    row.label
                )));
            }
            entries.push(PrimitiveEntry {
                label: row.label,
                degree: d,
                order: row.order,
                group,
                source: row.source,
            });
        }
        Ok((d, entries))
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let mut cat = PrimitiveCatalog::default();
        let pdir = dir.join("primitive");
        let listing = std::fs::read_dir(&pdir).map_err(|e| Error::Io {
            path: pdir.display().to_string(),
            source: e,
        })?;
        let mut paths: Vec<PathBuf> = listing.filter_map(|e| e.ok().map(|e| e.path())).collect();
        paths.retain(|p| p.extension().is_some_and(|x| x == "toml"));
        paths.sort();
        for p in paths {
            let (d, entries) = Self::parse_degree(&read(&p)?)
                .map_err(|e| Error::Data(format!("{}: {e}", p.display())))?;
            if cat.degrees.insert(d, entries).is_some() {
                return Err(Error::Data(format!("degree {d} listed twice")));
            }
        }
        Ok(cat)
    }

    pub fn degree(&self, n: usize) -> Result<&[PrimitiveEntry]> {
        self.degrees
            .get(&n)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Data(format!("primitive catalog has no data for degree {n}")))
    }
}

#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: String,
    pub group: GroupHandle,
}

/// Every `*.grp` file of the corpus directory, in file-name order.
pub fn load_corpus(dir: &Path, caps: &Caps) -> Result<Vec<CorpusGroup>> {
    let cdir = dir.join("corpus");
    let listing = std::fs::read_dir(&cdir).map_err(|e| Error::Io {
        path: cdir.display().to_string(),
        source: e,
    })?;
    let mut paths: Vec<PathBuf> = listing.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.retain(|p| p.extension().is_some_and(|x| x == "grp"));
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let gf = GroupFile::load(p)?;
            let group = gf.to_handle(caps)?;
            Ok(CorpusGroup {
                name: gf.name.unwrap_or_default(),
                group,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_simple_patterns() {
        assert!(is_minimal_simple("A5"));
        assert!(is_minimal_simple("PSL(2,5)"));
        assert!(!is_minimal_simple("A6"));
        assert!(is_minimal_simple("PSL(3,3)"));
        assert!(is_minimal_simple("PSL(2,7)"));
        assert!(is_minimal_simple("PSL(2,8)"));
        assert!(is_minimal_simple("PSL(2,27)"));
        assert!(!is_minimal_simple("PSL(2,11)"));
        assert!(!is_minimal_simple("PSL(2,16)"));
        assert!(is_minimal_simple("PSL(2,13)"));
        assert_eq!(
            minimal_simple_family("Sz(8)"),
            Some(MinimalSimpleFamily::Suzuki { p: 3 })
        );
        assert!(is_minimal_simple("Sz(32)"));
        assert!(!is_minimal_simple("Sz(2)"));
        assert!(!is_minimal_simple("M11"));
        assert!(!is_minimal_simple("A7"));
    }

    #[test]
    fn table_parsing_rejects_bad_rows() {
        let ok = "#@ complete_through = 100\nA5|60|2|1,2,3,5\n";
        assert_eq!(SimpleTable::parse(ok).unwrap().records.len(), 1);
        assert!(SimpleTable::parse("A5|60|2|1,2,3,5\n").is_err());
        assert!(SimpleTable::parse("#@ complete_through = 100\nA5|60|2\n").is_err());
        assert!(SimpleTable::parse("#@ complete_through = 100\nA5|60|0|1,2,3,5\n").is_err());
        assert!(SimpleTable::parse("#@ complete_through = 100\nA5|60|2|1,2,7\n").is_err());
    }

    #[test]
    fn kohl_single_rows() {
        assert!(SimpleGroupRecord::new("A6", 360, 4, None).kohl_holds());
        assert!(!SimpleGroupRecord::new("X", 360, 100, None).kohl_holds());
        assert!(!SimpleGroupRecord::new("X", 16, 4, None).kohl_holds());
    }

    #[test]
    fn canonical_names() {
        assert_eq!(canonical_name("PSL(2, 4)"), "A5");
        assert_eq!(canonical_name("psl(3,2)"), "PSL(2,7)");
        assert_eq!(canonical_name("M11"), "M11");
    }
}
