//! Collaboration statistics over cumulative year ranges.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::community::{self, Partition};
use crate::corpus::{Corpus, EdgeRecord, YearRange};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReportError {
    #[error("first year {first} is after last year {last}")]
    InvertedBounds { first: i32, last: i32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Community(#[from] community::CommunityError),
}

pub type Result<T, E = ReportError> = std::result::Result<T, E>;

/// One row of the statistics table. Absent statistics serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub range: YearRange,
    pub nodes: usize,
    pub components: usize,
    pub clusters: usize,
    pub mean_distance: Option<f64>,
    pub modularity: Option<f64>,
}

/// `[first..first, first..first+1, ..., first..last]`.
pub fn cumulative_ranges(first: i32, last: i32) -> Result<Vec<YearRange>> {
    if first > last {
        return Err(ReportError::InvertedBounds { first, last });
    }
    Ok((first..=last).map(|to| YearRange { from: first, to }).collect())
}

/// Everything computed for one year range.
#[derive(Debug, Clone)]
pub struct RangeAnalysis {
    pub range: YearRange,
    pub edges: Vec<EdgeRecord>,
    pub graph: Graph,
    /// Louvain partition; covers zero nodes when the graph is empty.
    pub partition: Partition,
    pub row: StatsRow,
}

pub fn analyze_range(corpus: &Corpus, range: YearRange) -> Result<RangeAnalysis> {
    let edges = corpus.edges(range);
    let graph = Graph::from_edges(&edges)?;

    let (partition, modularity) = if graph.total_weight() > 0.0 {
        let (p, q) = community::louvain(&graph)?;
        (p, Some(q))
    } else {
        (Partition::singletons(0), None)
    };
    let mean_distance = match graph.mean_distance() {
        Ok(d) => Some(d),
        Err(GraphError::NoConnectedPair) => None,
        Err(e) => return Err(e.into()),
    };

    let row = StatsRow {
        range,
        nodes: graph.node_count(),
        components: graph.connected_components().len(),
        clusters: partition.community_count(),
        mean_distance,
        modularity,
    };
    Ok(RangeAnalysis {
        range,
        edges,
        graph,
        partition,
        row,
    })
}

pub fn stats_row(corpus: &Corpus, range: YearRange) -> Result<StatsRow> {
    analyze_range(corpus, range).map(|a| a.row)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    pub rows: Vec<StatsRow>,
}

pub fn build_report(corpus: &Corpus, first: i32, last: i32) -> Result<Report> {
    let rows = analyze_ranges(corpus, first, last)?
        .into_iter()
        .map(|a| a.row)
        .collect();
    Ok(Report { rows })
}

/// Analyzes every cumulative range in parallel; output is in range order.
pub fn analyze_ranges(corpus: &Corpus, first: i32, last: i32) -> Result<Vec<RangeAnalysis>> {
    cumulative_ranges(first, last)?
        .into_par_iter()
        .map(|range| analyze_range(corpus, range))
        .collect()
}

const HEADERS: [&str; 6] = [
    "Years included",
    "Co-authors (nodes)",
    "Connected components",
    "Clusters",
    "Mean distance",
    "Modularity",
];

const ABSENT: &str = "—";

impl Report {
    /// Aligned plain-text table, one line per row.
    pub fn render_text(&self) -> String {
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.range.to_string(),
                    r.nodes.to_string(),
                    r.components.to_string(),
                    r.clusters.to_string(),
                    r.mean_distance.map_or(ABSENT.to_string(), |d| format!("{d:.2}")),
                    r.modularity.map_or(ABSENT.to_string(), |q| format!("{q:.3}")),
                ]
            })
            .collect();

        let mut widths = HEADERS.map(|h| h.chars().count());
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }

        let line = |items: &[String]| -> String {
            let padded: Vec<String> = items
                .iter()
                .zip(widths)
                .enumerate()
                .map(|(i, (s, w))| {
                    let pad = " ".repeat(w - s.chars().count());
                    if i == 0 {
                        format!("{s}{pad}")
                    } else {
                        format!("{pad}{s}")
                    }
                })
                .collect();
            padded.join("  ").trim_end().to_string()
        };

        let mut out = String::new();
        out.push_str(&line(&HEADERS.map(String::from)));
        out.push('\n');
        let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
        out.push_str(&"-".repeat(total));
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.rows).expect("rows serialize");
        s.push('\n');
        s
    }
}
