//! Load the bundled member and publication tables and list the derived
//! co-authorship edges.
//!
//! ```text
//! cargo run --example parse_corpus [members.csv papers.csv]
//! ```

use std::path::PathBuf;

use coauthnet::{Corpus, YearRange};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut args = std::env::args_os().skip(1).map(PathBuf::from);
    let members = args.next().unwrap_or_else(|| fixtures.join("members.csv"));
    let papers = args.next().unwrap_or_else(|| fixtures.join("papers.csv"));

    let corpus = Corpus::load(&members, &papers)?;
    println!("{} members, {} papers", corpus.members.len(), corpus.publications.len());
    for w in &corpus.publications.warnings {
        println!("warning: {w}");
    }

    let Some((first, last)) = corpus.publications.year_span() else {
        return Ok(());
    };
    let range = YearRange::new(first, last).expect("span is ordered");
    println!("\nedges for {range}:");
    for e in corpus.edges(range) {
        println!(
            "  {} -- {}  weight {}  [{}]",
            corpus.members.label(&e.a),
            corpus.members.label(&e.b),
            e.weight,
            e.paper_ids.join(", ")
        );
    }
    Ok(())
}
