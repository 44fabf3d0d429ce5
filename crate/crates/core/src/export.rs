//! Versioned JSON dataset consumed by the browser explorer.
//!
//! One `graph-<from>-<to>.json` file per year range plus a `manifest.json`
//! index. Keys are emitted in a fixed order and coordinates with exactly six
//! decimals, so identical inputs produce byte-identical files. The JSON Schema
//! documents live in `schema/` and are exposed as [`GRAPH_SCHEMA`] and
//! [`MANIFEST_SCHEMA`].

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::ser::Error as _;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;
use thiserror::Error;

use crate::community::Partition;
use crate::corpus::{Corpus, EdgeRecord, Publication, YearRange};
use crate::graph::Graph;
use crate::layout::LayoutState;
use crate::report::StatsRow;

pub const FORMAT_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";
pub const GRAPH_SCHEMA: &str = include_str!("../schema/graph.schema.json");
pub const MANIFEST_SCHEMA: &str = include_str!("../schema/manifest.schema.json");

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("node set mismatch: {0}")]
    NodeSetMismatch(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

pub type Result<T, E = ExportError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportDocument {
    pub version: u32,
    pub year_range: YearRange,
    pub nodes: Vec<ExportNode>,
    pub edges: Vec<ExportEdge>,
    pub clusters: Vec<ExportCluster>,
    pub papers: Vec<Publication>,
    pub stats: StatsRow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportNode {
    pub id: String,
    pub label: String,
    #[serde(serialize_with = "fixed6")]
    pub x: f64,
    #[serde(serialize_with = "fixed6")]
    pub y: f64,
    pub cluster: usize,
    pub degree: usize,
    pub weighted_degree: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportEdge {
    pub source: String,
    pub target: String,
    pub weight: u32,
    pub paper_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportCluster {
    pub id: usize,
    pub size: usize,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub ranges: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub from: i32,
    pub to: i32,
    pub file: String,
}

impl Manifest {
    pub fn read(dir: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(dir.join(MANIFEST_FILE))?;
        serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }
}

fn fixed6<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(format!("{v:.6}")).map_err(S::Error::custom)?;
    raw.serialize(s)
}

/// Rounds to the value that the six-decimal rendering parses back to.
fn quantize(v: f64) -> f64 {
    let q: f64 = format!("{v:.6}").parse().expect("formatted float parses");
    if q == 0.0 {
        0.0
    } else {
        q
    }
}

pub fn dataset_file_name(range: YearRange) -> String {
    format!("graph-{}-{}.json", range.from, range.to)
}

/// Evenly spaced hues at 65% saturation and 50% lightness, as `#rrggbb`.
pub fn assign_colors(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| hsl_to_hex(i as f64 * 360.0 / count as f64, 0.65, 0.5))
        .collect()
}

fn hsl_to_hex(hue: f64, sat: f64, light: f64) -> String {
    let c = (1.0 - (2.0 * light - 1.0).abs()) * sat;
    let h = (hue % 360.0) / 60.0;
    let x = c * (1.0 - (h % 2.0 - 1.0).abs());
    let (r, g, b) = match h as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = light - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
}

/// Assembles the dataset for one range. `graph`, `partition` and `layout`
/// must all describe the nodes of the corpus edges for `range`.
pub fn to_document(
    graph: &Graph,
    partition: &Partition,
    layout: &LayoutState,
    corpus: &Corpus,
    range: YearRange,
    stats: &StatsRow,
) -> Result<ExportDocument> {
    let n = graph.node_count();
    if partition.len() != n {
        return Err(ExportError::NodeSetMismatch(format!(
            "partition covers {} nodes, graph has {n}",
            partition.len()
        )));
    }
    if layout.len() != n {
        return Err(ExportError::NodeSetMismatch(format!(
            "layout has {} positions, graph has {n}",
            layout.len()
        )));
    }
    let records = corpus.edges(range);
    check_edges(graph, &records)?;

    let nodes = (0..n)
        .map(|i| {
            let p = layout.positions[i];
            ExportNode {
                id: graph.id(i).to_string(),
                label: corpus.members.label(graph.id(i)),
                x: quantize(p.x),
                y: quantize(p.y),
                cluster: partition.community_of(i),
                degree: graph.degree(i),
                weighted_degree: graph.weighted_degree(i),
            }
        })
        .collect();

    let colors = assign_colors(partition.community_count());
    let clusters = partition
        .sizes()
        .into_iter()
        .zip(colors)
        .enumerate()
        .map(|(id, (size, color))| ExportCluster { id, size, color })
        .collect();

    let mut papers: Vec<Publication> = corpus
        .publications
        .publications
        .iter()
        .filter(|p| range.contains(p.year) && p.author_ids.len() >= 2)
        .cloned()
        .collect();
    papers.sort_by(|a, b| (a.year, &a.paper_id).cmp(&(b.year, &b.paper_id)));

    let edges = records
        .into_iter()
        .map(|e| ExportEdge {
            source: e.a,
            target: e.b,
            weight: e.weight,
            paper_ids: e.paper_ids,
        })
        .collect();

    Ok(ExportDocument {
        version: FORMAT_VERSION,
        year_range: range,
        nodes,
        edges,
        clusters,
        papers,
        stats: stats.clone(),
    })
}

fn check_edges(graph: &Graph, records: &[EdgeRecord]) -> Result<()> {
    if records.len() != graph.edge_count() {
        return Err(ExportError::NodeSetMismatch(format!(
            "corpus has {} edges in range, graph has {}",
            records.len(),
            graph.edge_count()
        )));
    }
    for e in records {
        let (Some(a), Some(b)) = (graph.index_of(&e.a), graph.index_of(&e.b)) else {
            return Err(ExportError::NodeSetMismatch(format!(
                "edge {}-{} has an endpoint outside the graph",
                e.a, e.b
            )));
        };
        if graph.weight(a, b) != f64::from(e.weight) {
            return Err(ExportError::NodeSetMismatch(format!(
                "edge {}-{} weight differs from the graph",
                e.a, e.b
            )));
        }
    }
    Ok(())
}

impl ExportDocument {
    /// Stable serialization, LF-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        let doc: Self = serde_json::from_str(text)?;
        if doc.version != FORMAT_VERSION {
            return Err(<serde_json::Error as serde::de::Error>::custom(format!(
                "unsupported dataset version {} (expected {FORMAT_VERSION})",
                doc.version
            )));
        }
        Ok(doc)
    }
}

fn write_file(path: PathBuf, contents: &str) -> Result<()> {
    fs::write(&path, contents).map_err(|source| ExportError::Io { path, source })
}

/// Writes one file per document and a manifest listing the ranges in
/// chronological order.
pub fn write_outputs(documents: &[ExportDocument], dir: &Path) -> Result<Manifest> {
    fs::create_dir_all(dir).map_err(|source| ExportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;

    let mut ordered: Vec<&ExportDocument> = documents.iter().collect();
    ordered.sort_by_key(|d| d.year_range);

    let mut entries = Vec::with_capacity(ordered.len());
    for doc in ordered {
        let file = dataset_file_name(doc.year_range);
        write_file(dir.join(&file), &doc.to_json())?;
        entries.push(ManifestEntry {
            from: doc.year_range.from,
            to: doc.year_range.to,
            file,
        });
    }

    let manifest = Manifest {
        version: FORMAT_VERSION,
        ranges: entries,
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    write_file(dir.join(MANIFEST_FILE), &text)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_examples() {
        assert!(assign_colors(0).is_empty());
        // hue 0 at s=65%, l=50%
        assert_eq!(assign_colors(1), ["#d22d2d"]);
        // hue 180
        assert_eq!(assign_colors(2), ["#d22d2d", "#2dd2d2"]);
    }

    #[test]
    fn colors_distinct_up_to_24() {
        for c in 1..=24 {
            let colors = assign_colors(c);
            let mut unique = colors.clone();
            unique.sort();
            unique.dedup();
            assert_eq!(unique.len(), c);
            assert!(colors
                .iter()
                .all(|s| s.len() == 7 && s.starts_with('#') && s[1..].chars().all(|ch| ch.is_ascii_hexdigit())));
        }
    }

    #[test]
    fn quantize_is_stable() {
        for v in [0.1234565, -2.5, 1e-9, -1e-9, 3.0, 123.4567891] {
            let q = quantize(v);
            assert_eq!(quantize(q), q);
            assert_eq!(format!("{q:.6}"), format!("{:.6}", quantize(v)));
        }
        assert_eq!(format!("{:.6}", quantize(-1e-9)), "0.000000");
    }

    #[test]
    fn file_names() {
        assert_eq!(
            dataset_file_name(YearRange::new(2011, 2013).unwrap()),
            "graph-2011-2013.json"
        );
    }
}
