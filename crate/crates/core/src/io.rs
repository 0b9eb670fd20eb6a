//! System files, run configuration, report streams and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::cambrian::{CambrianError, CambrianPoset};
use crate::coxeter::{types, BondOrder, CoxeterError, CoxeterMatrix, CoxeterSystem};
use crate::shelling::{IntervalReport, ShellingError, Summary};
use crate::sortable::{congruence_fibers, CoxeterWord, SortableError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse system file: {0}")]
    Parse(String),
    #[error("matrix entry {0:?} is neither a positive integer nor \"inf\"")]
    BadEntry(String),
    #[error("give exactly one of a system file or a type name")]
    SystemSource,
    #[error("the group is infinite; a length cap is required")]
    CapRequired,
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Sortable(#[from] SortableError),
    #[error(transparent)]
    Cambrian(#[from] CambrianError),
    #[error(transparent)]
    Shelling(#[from] ShellingError),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Number(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    generators: Option<Vec<String>>,
    matrix: Vec<Vec<Entry>>,
}

fn bond(entry: &Entry) -> Result<BondOrder, IoError> {
    match entry {
        Entry::Number(0) => Ok(BondOrder::Infinite),
        Entry::Number(m) if *m > 0 => Ok(BondOrder::Finite(
            u32::try_from(*m).map_err(|_| IoError::BadEntry(m.to_string()))?,
        )),
        Entry::Number(m) => Err(IoError::BadEntry(m.to_string())),
        Entry::Text(t) => match t.trim() {
            "inf" | "infinity" | "∞" => Ok(BondOrder::Infinite),
            other => other
                .parse::<u32>()
                .map(BondOrder::Finite)
                .map_err(|_| IoError::BadEntry(t.clone())),
        },
    }
}

/// Parses a TOML system description:
///
/// ```toml
/// generators = ["s1", "s2", "s3"]   # optional, defaults to s1..sn
/// matrix = [[1, 3, 2], [3, 1, 4], [2, 4, 1]]   # 0 or "inf" for ∞
/// ```
pub fn parse_system(text: &str) -> Result<CoxeterSystem, IoError> {
    let file: SystemFile = toml::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    let rows = file
        .matrix
        .iter()
        .map(|row| row.iter().map(bond).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = CoxeterMatrix::new(rows)?;
    Ok(match file.generators {
        Some(names) => CoxeterSystem::with_names(matrix, names)?,
        None => CoxeterSystem::new(matrix),
    })
}

pub fn load_system(path: &Path) -> Result<CoxeterSystem, IoError> {
    parse_system(&std::fs::read_to_string(path)?)
}

/// Inverse of [`parse_system`]; infinite bonds are written as `"inf"`.
pub fn system_to_toml(sys: &CoxeterSystem) -> String {
    let names: Vec<String> = sys.names().iter().map(|n| format!("{n:?}")).collect();
    let rows: Vec<String> = sys
        .matrix()
        .rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .map(|b| match b {
                    BondOrder::Finite(m) => m.to_string(),
                    BondOrder::Infinite => "\"inf\"".to_string(),
                })
                .collect();
            format!("  [{}],", cells.join(", "))
        })
        .collect();
    format!(
        "generators = [{}]\nmatrix = [\n{}\n]\n",
        names.join(", "),
        rows.join("\n")
    )
}

/// Either a system file or a named type such as `B3` or `A~2`.
pub fn resolve_system(
    file: Option<&Path>,
    type_name: Option<&str>,
) -> Result<CoxeterSystem, IoError> {
    match (file, type_name) {
        (Some(path), None) => load_system(path),
        (None, Some(name)) => Ok(types::by_name(name)?),
        _ => Err(IoError::SystemSource),
    }
}

/// Validated inputs shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub system: CoxeterSystem,
    pub gamma: CoxeterWord,
    pub cap: usize,
}

impl RunConfig {
    /// `gamma` defaults to the generators in index order; `cap` defaults to
    /// `ℓ(w_o)` and is required for infinite groups.
    pub fn new(
        system: CoxeterSystem,
        gamma: Option<&str>,
        cap: Option<usize>,
    ) -> Result<Self, IoError> {
        let gamma = match gamma {
            Some(text) => CoxeterWord::parse(&system, text)?,
            None => CoxeterWord::standard(&system),
        };
        let cap = match cap {
            Some(c) => c,
            None => match system.longest_element() {
                Ok(w) => w.length(),
                Err(CoxeterError::GroupNotFinite) => return Err(IoError::CapRequired),
                Err(e) => return Err(e.into()),
            },
        };
        Ok(RunConfig { system, gamma, cap })
    }

    pub fn build(&self) -> CambrianPoset {
        CambrianPoset::build(&self.system, &self.gamma, self.cap)
    }
}

/// One JSON object per line, in the order given.
pub fn write_reports<W: Write>(mut out: W, reports: &[IntervalReport]) -> Result<(), IoError> {
    for r in reports {
        serde_json::to_writer(&mut out, r).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_reports(text: &str) -> Result<Vec<IntervalReport>, IoError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| IoError::Parse(e.to_string())))
        .collect()
}

pub fn summary_json(summary: &Summary) -> String {
    serde_json::to_string_pretty(summary).expect("summary serializes")
}

/// How nodes are named in an exported diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeNames {
    /// Canonical reduced words.
    Canonical,
    /// Sorting words with `|` block dividers.
    Sorting,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramNode {
    pub id: usize,
    pub label: String,
    pub rank: usize,
    /// Congruence class, when fibers are highlighted.
    pub class: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramArrow {
    pub from: usize,
    pub to: usize,
    pub label: Option<usize>,
}

/// A Hasse diagram ready for DOT output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramDocument {
    pub name: String,
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<DiagramArrow>,
    /// `(class id, member node ids)` for non-singleton classes.
    pub clusters: Vec<(usize, Vec<usize>)>,
}

impl DiagramDocument {
    /// Cambrian poset with `λ_γ` on every cover.
    pub fn cambrian(poset: &CambrianPoset, names: NodeNames) -> Self {
        let sys = poset.system();
        let nodes = (0..poset.len())
            .map(|i| DiagramNode {
                id: i,
                label: match names {
                    NodeNames::Canonical => node_word(&sys.format_element(poset.element(i))),
                    NodeNames::Sorting => node_word(&poset.label(i)),
                },
                rank: poset.element(i).length(),
                class: None,
            })
            .collect();
        let edges = poset
            .covers()
            .iter()
            .map(|&(a, b)| DiagramArrow {
                from: a,
                to: b,
                label: Some(poset.cover_label(a, b).expect("Hasse edge")),
            })
            .collect();
        DiagramDocument {
            name: "cambrian".into(),
            nodes,
            edges,
            clusters: Vec::new(),
        }
    }

    /// Weak order on a finite group with the fibers of `π↓` grouped.
    pub fn fibers(sys: &CoxeterSystem, gamma: &CoxeterWord) -> Result<Self, IoError> {
        let fibers = congruence_fibers(sys, gamma)?;
        let universe = sys.enumerate_finite()?;
        let elements = universe.elements();
        let index: BTreeMap<_, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let mut class = vec![0; elements.len()];
        let mut clusters = Vec::new();
        for (c, f) in fibers.iter().enumerate() {
            let ids: Vec<usize> = f.members.iter().map(|w| index[w]).collect();
            for &i in &ids {
                class[i] = c;
            }
            if ids.len() > 1 {
                clusters.push((c, ids));
            }
        }
        let nodes = elements
            .iter()
            .enumerate()
            .map(|(i, w)| DiagramNode {
                id: i,
                label: node_word(&sys.format_element(w)),
                rank: w.length(),
                class: Some(class[i]),
            })
            .collect();
        // covers of right weak order: w ⋖ ws
        let mut edges = Vec::new();
        for (i, w) in elements.iter().enumerate() {
            for s in 0..sys.rank() {
                let x = sys.right_multiply(w, s);
                if x.length() == w.length() + 1 {
                    edges.push(DiagramArrow {
                        from: i,
                        to: index[&x],
                        label: None,
                    });
                }
            }
        }
        edges.sort_by_key(|e| (e.from, e.to));
        Ok(DiagramDocument {
            name: "fibers".into(),
            nodes,
            edges,
            clusters,
        })
    }

    pub fn class_count(&self) -> usize {
        let classes: std::collections::BTreeSet<usize> =
            self.nodes.iter().filter_map(|n| n.class).collect();
        classes.len()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "digraph {} {{", self.name).unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        writeln!(s, "  node [shape=plaintext];").unwrap();
        for (c, ids) in &self.clusters {
            writeln!(s, "  subgraph cluster_{c} {{").unwrap();
            writeln!(s, "    style=filled; color=lightgrey;").unwrap();
            for id in ids {
                writeln!(s, "    n{id};").unwrap();
            }
            writeln!(s, "  }}").unwrap();
        }
        for n in &self.nodes {
            writeln!(s, "  n{} [label={:?}];", n.id, n.label).unwrap();
        }
        let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for n in &self.nodes {
            ranks.entry(n.rank).or_default().push(n.id);
        }
        for ids in ranks.values() {
            let names: Vec<String> = ids.iter().map(|i| format!("n{i}")).collect();
            writeln!(s, "  {{ rank=same; {}; }}", names.join("; ")).unwrap();
        }
        for e in &self.edges {
            match e.label {
                Some(l) => writeln!(s, "  n{} -> n{} [label=\"{l}\"];", e.from, e.to).unwrap(),
                None => writeln!(s, "  n{} -> n{};", e.from, e.to).unwrap(),
            }
        }
        writeln!(s, "}}").unwrap();
        s
    }
}

fn node_word(word: &str) -> String {
    if word.is_empty() {
        "ε".to_string()
    } else {
        word.to_string()
    }
}
