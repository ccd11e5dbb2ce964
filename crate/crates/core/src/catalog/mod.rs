//! Shipped groups, data and machines.
//!
//! Machine entries are golden files under `catalog/` at the workspace root,
//! embedded at compile time. [`generate`] recomputes each file from its
//! pipeline; the two must agree byte for byte. Set `TREEPERM_BLESS=1` when
//! running the catalog tests to rewrite the files.

pub mod ambients;
pub mod build;
pub mod oracle;
pub mod suites;

use thiserror::Error;

use crate::automata::text::{MachineFile, TextError};
use crate::gdata::{GData, GDataError};
use crate::tree_ops::{EncodingTree, TreeOpsError};

pub use ambients::{c2wrz_gdata, zwrz_gdata, zwrz_refined, LampElem, LampGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    Unknown(String),
    #[error("golden file {name}: {source}")]
    Golden { name: String, source: TextError },
    #[error(transparent)]
    GData(#[from] GDataError),
    #[error(transparent)]
    TreeOps(#[from] TreeOpsError),
}

/// What an entry holds.
pub enum EntryData {
    Machines(MachineFile),
    Tree(EncodingTree),
    GData(GData<LampGroup>),
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub degree: usize,
    /// Where the entry comes from and how its generators are named.
    pub provenance: &'static str,
    pub data: EntryData,
}

impl CatalogEntry {
    pub fn machines(&self) -> Option<&MachineFile> {
        match &self.data {
            EntryData::Machines(m) => Some(m),
            _ => None,
        }
    }
}

struct EntryDef {
    name: &'static str,
    provenance: &'static str,
    golden: Option<&'static str>,
}

const ENTRY_DEFS: &[EntryDef] = &[
    EntryDef {
        name: "odometer",
        provenance: "binary adding machine tau = (e, tau)(1 2)",
        golden: Some(include_str!("../../../../catalog/odometer")),
    },
    EntryDef {
        name: "zwrz-3",
        provenance: "Z wr Z over the data ((2, 1), (H, G), (f1, f2)); gamma = y, alpha = x",
        golden: Some(include_str!("../../../../catalog/zwrz-3")),
    },
    EntryDef {
        name: "zwrz-6",
        provenance: "Z wr Z over the refined data ((2, 2, 2), (H, H, H), (f1, x f1, f2|H)); gamma1 = y, alpha1 = x",
        golden: Some(include_str!("../../../../catalog/zwrz-6")),
    },
    EntryDef {
        name: "zwrz-gdata",
        provenance: "data ((2, 1), (H, G), (f1, f2)) over Z wr Z = <y> wr <x>, H = <y>^<x><x^2>",
        golden: None,
    },
    EntryDef {
        name: "c2wrz-gdata",
        provenance: "data over C2 wr Z = <a> wr <x>: f: [a,x] -> a, x -> x on H = G'<x>, and f_a = a f a",
        golden: None,
    },
    EntryDef {
        name: "c2-ext-16",
        provenance: "C2^(X) x| (C2 wr Z)^2 from c2wrz-gdata; gamma = basepoint lamp, beta_i = a in coordinate i, alpha_i = x in coordinate i",
        golden: Some(include_str!("../../../../catalog/c2-ext-16")),
    },
    EntryDef {
        name: "z-ext-8",
        provenance: "Z^(X) x| (C2 wr Z)^2 from c2wrz-gdata; y = basepoint lamp, a_i = a and x_i = x in coordinate i",
        golden: Some(include_str!("../../../../catalog/z-ext-8")),
    },
    EntryDef {
        name: "w3-10",
        provenance: "Z^((Z wr Z)^3) x| (Z wr Z)^3 over the refined Z wr Z data; a = basepoint lamp, y_i and x_i in coordinate i; Z wr (Z wr Z) = <a, y1y2y3, x1x2x3>",
        golden: Some(include_str!("../../../../catalog/w3-10")),
    },
    EntryDef {
        name: "w3-2",
        provenance: "binary deflation of w3-10 along w3-encoding-tree (the bold generators)",
        golden: Some(include_str!("../../../../catalog/w3-2")),
    },
    EntryDef {
        name: "w3-encoding-tree",
        provenance: "encoding tree used to deflate w3-10 to degree 2",
        golden: Some(include_str!("../../../../catalog/w3-encoding-tree")),
    },
];

/// Variants of entries as printed in the source literature, in the DSL.
const PRINTED: &[(&str, &str)] = &[
    (
        "zwrz-3",
        include_str!("../../../../catalog/printed/zwrz-3.tp"),
    ),
    (
        "zwrz-6",
        include_str!("../../../../catalog/printed/zwrz-6.tp"),
    ),
    (
        "c2-ext-16",
        include_str!("../../../../catalog/printed/c2-ext-16.tp"),
    ),
    (
        "z-ext-8",
        include_str!("../../../../catalog/printed/z-ext-8.tp"),
    ),
    (
        "w3-10",
        include_str!("../../../../catalog/printed/w3-10.tp"),
    ),
    ("w3-2", include_str!("../../../../catalog/printed/w3-2.tp")),
];

/// Names of all entries.
pub fn list() -> Vec<&'static str> {
    ENTRY_DEFS.iter().map(|s| s.name).collect()
}

fn entry_def(name: &str) -> Result<&'static EntryDef, CatalogError> {
    ENTRY_DEFS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| CatalogError::Unknown(name.to_string()))
}

pub fn provenance(name: &str) -> Result<&'static str, CatalogError> {
    Ok(entry_def(name)?.provenance)
}

/// The shipped golden text of a file-backed entry.
pub fn golden(name: &str) -> Result<Option<&'static str>, CatalogError> {
    Ok(entry_def(name)?.golden)
}

/// The printed variant of an entry, as DSL source.
pub fn printed(name: &str) -> Option<&'static str> {
    PRINTED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

fn golden_error(name: &str, source: TextError) -> CatalogError {
    CatalogError::Golden {
        name: name.to_string(),
        source,
    }
}

pub fn load(name: &str) -> Result<CatalogEntry, CatalogError> {
    let s = entry_def(name)?;
    let data = match (name, s.golden) {
        ("zwrz-gdata", _) => EntryData::GData(zwrz_gdata()),
        ("c2wrz-gdata", _) => EntryData::GData(c2wrz_gdata()),
        ("w3-encoding-tree", Some(text)) => EntryData::Tree(parse_tree_file(text)?),
        (_, Some(text)) => {
            EntryData::Machines(MachineFile::parse(text).map_err(|e| golden_error(name, e))?)
        }
        (_, None) => return Err(CatalogError::Unknown(name.to_string())),
    };
    let degree = match &data {
        EntryData::Machines(m) => m.degree().get(),
        EntryData::Tree(t) => t.leaf_count(),
        EntryData::GData(g) => g.degree(),
    };
    Ok(CatalogEntry {
        name: s.name,
        degree,
        provenance: s.provenance,
        data,
    })
}

/// Tree files hold `#` comments and one tree line.
fn parse_tree_file(text: &str) -> Result<EncodingTree, CatalogError> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| TreeOpsError::BadTree("no tree line".into()))?;
    Ok(line.parse()?)
}

/// Frozen closure sizes recorded in a golden file's `closure:` comment.
pub fn recorded_closures(file: &MachineFile) -> Vec<(String, usize)> {
    file.comments
        .iter()
        .filter_map(|c| c.strip_prefix("closure:"))
        .flat_map(|rest| {
            rest.split_whitespace().filter_map(|kv| {
                let (k, v) = kv.split_once('=')?;
                Some((k.to_string(), v.parse().ok()?))
            })
        })
        .collect()
}

fn finish(mut file: MachineFile, notes: &[&str], limit: usize) -> Result<String, CatalogError> {
    file.comments = notes.iter().map(|s| s.to_string()).collect();
    let sizes = file
        .generators()
        .into_iter()
        .map(|(n, g)| {
            let k = g
                .states(limit)
                .map_err(|e| GDataError::from(crate::automata::AutomataError::from(e)))?
                .len();
            Ok(format!("{n}={k}"))
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    file.comments.push(format!("closure: {}", sizes.join(" ")));
    Ok(file.to_text())
}

/// Recomputes the golden text of a file-backed entry from its pipeline.
pub fn generate(name: &str, limit: usize) -> Result<String, CatalogError> {
    let s = entry_def(name)?;
    let head = format!("{}: {}", s.name, s.provenance);
    match name {
        "odometer" => finish(build::odometer(), &[&head], limit),
        "zwrz-3" => finish(build::zwrz3(limit)?, &[&head], limit),
        "zwrz-6" => finish(
            build::zwrz6(limit)?,
            &[
                &head,
                "alpha1 moves the two cosets of every part, so its activity is (1 2)(3 4)(5 6);",
                "the printed variant lists (1 2)(3 4), see catalog/printed/zwrz-6.tp",
            ],
            limit,
        ),
        "c2-ext-16" => finish(
            build::c2_ext16(limit)?,
            &[
                &head,
                "coset labels are elements of (C2 wr Z)^2; slots are little-endian in the two transversals",
                "the printed alpha1 lists 15 sections, see catalog/printed/c2-ext-16.tp",
            ],
            limit,
        ),
        "z-ext-8" => finish(
            build::z_ext(limit)?,
            &[
                &head,
                "two parts of size 4 and one of size 1 give 9 letters; the printed y = (y,e,e,e,y,e,e,e,x1)",
                "also has 9 entries, see catalog/printed/z-ext-8.tp",
            ],
            limit,
        ),
        "w3-10" => finish(
            build::w3_10(limit)?,
            &[
                &head,
                "slots 1..8: transversal e, x2, x3, x2x3, x1x2x3, x1x3, x1x2, x1; slot 9: tau; slot 10: mu(a) = y1",
                "tau(g1, g2, g3) = (g2, g3, g1); differences from the printed list: catalog/printed/w3-10.tp",
            ],
            limit,
        ),
        "w3-2" => {
            let w10 = build::w3_10(limit)?;
            finish(build::w3_2(&w10, limit)?, &[&head], limit)
        }
        "w3-encoding-tree" => Ok(format!("# {head}\n{}\n", build::W3_TREE)),
        _ => Err(CatalogError::Unknown(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name() {
        assert_eq!(
            load("nope").err(),
            Some(CatalogError::Unknown("nope".into()))
        );
    }

    #[test]
    fn closure_comment_round_trip() {
        let text = "treeperm-machine v1\n# closure: t=2 u=1\ndegree 2\nstate t (1 2) -> e t\nstate e id -> e e\nroot t\n";
        let f = MachineFile::parse(text).unwrap();
        assert_eq!(
            recorded_closures(&f),
            vec![("t".into(), 2), ("u".into(), 1)]
        );
    }
}
