//! Print the cumulative year-range statistics table for the bundled corpus,
//! then the same rows as JSON.

use std::path::PathBuf;

use coauthnet::report::build_report;
use coauthnet::Corpus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let corpus = Corpus::load(&fixtures.join("members.csv"), &fixtures.join("papers.csv"))?;
    let (first, last) = corpus.publications.year_span().ok_or("corpus has no papers")?;

    let report = build_report(&corpus, first, last)?;
    print!("{}", report.render_text());
    println!();
    println!("{}", report.to_json());
    Ok(())
}
