//! End-to-end analysis: corpus → per-range graphs, communities, layouts,
//! statistics and the exported dataset.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::corpus::Corpus;
use crate::export::{self, ExportDocument, ExportError, Manifest};
use crate::layout::{self, LayoutError, LayoutParams, LayoutRun};
use crate::report::{self, RangeAnalysis, Report, ReportError};

pub const REPORT_JSON: &str = "report.json";
pub const REPORT_TEXT: &str = "report.txt";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("layout failed for {range}: {source}")]
    Layout {
        range: String,
        #[source]
        source: LayoutError,
    },
    #[error(transparent)]
    Export(#[from] ExportError),
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub first: i32,
    pub last: i32,
    pub layout: LayoutParams,
}

#[derive(Debug, Clone)]
pub struct RangeOutput {
    pub analysis: RangeAnalysis,
    pub layout: LayoutRun,
    pub document: ExportDocument,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub ranges: Vec<RangeOutput>,
    pub report: Report,
}

pub fn run(corpus: &Corpus, options: &AnalyzeOptions) -> Result<PipelineOutput, PipelineError> {
    let analyses = report::analyze_ranges(corpus, options.first, options.last)?;
    let mut ranges = Vec::with_capacity(analyses.len());
    for analysis in analyses {
        let layout =
            layout::run_layout(&analysis.graph, &options.layout).map_err(|source| PipelineError::Layout {
                range: analysis.range.to_string(),
                source,
            })?;
        let document = export::to_document(
            &analysis.graph,
            &analysis.partition,
            &layout.state,
            corpus,
            analysis.range,
            &analysis.row,
        )?;
        ranges.push(RangeOutput {
            analysis,
            layout,
            document,
        });
    }
    let report = Report {
        rows: ranges.iter().map(|r| r.analysis.row.clone()).collect(),
    };
    Ok(PipelineOutput { ranges, report })
}

impl PipelineOutput {
    pub fn documents(&self) -> Vec<ExportDocument> {
        self.ranges.iter().map(|r| r.document.clone()).collect()
    }

    /// Writes the datasets, the manifest, `report.json` and `report.txt`.
    pub fn write(&self, dir: &Path) -> Result<Manifest, PipelineError> {
        let manifest = export::write_outputs(&self.documents(), dir)?;
        for (name, contents) in [
            (REPORT_JSON, self.report.to_json()),
            (REPORT_TEXT, self.report.render_text()),
        ] {
            let path = dir.join(name);
            fs::write(&path, contents).map_err(|source| ExportError::Io { path, source })?;
        }
        Ok(manifest)
    }
}
