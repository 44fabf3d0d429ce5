//! Run the full pipeline on the bundled corpus and write the explorer
//! datasets plus manifest to a directory.
//!
//! ```text
//! cargo run --example export_dataset [out-dir]
//! ```

use std::path::PathBuf;

use coauthnet::layout::LayoutParams;
use coauthnet::pipeline::{self, AnalyzeOptions};
use coauthnet::Corpus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let out = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("coauthnet-example"));

    let corpus = Corpus::load(&fixtures.join("members.csv"), &fixtures.join("papers.csv"))?;
    let (first, last) = corpus.publications.year_span().ok_or("corpus has no papers")?;
    let options = AnalyzeOptions {
        first,
        last,
        layout: LayoutParams::default(),
    };
    let output = pipeline::run(&corpus, &options)?;
    let manifest = output.write(&out)?;

    for r in &output.ranges {
        let doc = &r.document;
        println!(
            "{:<18} {} nodes, {} edges, {} clusters",
            dataset_name(&manifest, doc.year_range),
            doc.nodes.len(),
            doc.edges.len(),
            doc.clusters.len()
        );
        for c in &doc.clusters {
            println!("    cluster {} size {} {}", c.id, c.size, c.color);
        }
    }
    println!("wrote {}", out.display());
    Ok(())
}

fn dataset_name(manifest: &coauthnet::export::Manifest, range: coauthnet::YearRange) -> &str {
    manifest
        .ranges
        .iter()
        .find(|e| e.from == range.from && e.to == range.to)
        .map(|e| e.file.as_str())
        .unwrap_or("?")
}
