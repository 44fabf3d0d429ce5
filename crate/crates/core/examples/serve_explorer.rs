//! Export the bundled corpus into a temporary directory and serve it over
//! HTTP until interrupted.
//!
//! ```text
//! cargo run --example serve_explorer [port]
//! ```

use std::path::PathBuf;

use coauthnet::layout::LayoutParams;
use coauthnet::pipeline::{self, AnalyzeOptions};
use coauthnet::serve::Server;
use coauthnet::Corpus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let port: u16 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(8080);
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let root = std::env::temp_dir().join("coauthnet-serve");

    let corpus = Corpus::load(&fixtures.join("members.csv"), &fixtures.join("papers.csv"))?;
    let (first, last) = corpus.publications.year_span().ok_or("corpus has no papers")?;
    let options = AnalyzeOptions {
        first,
        last,
        layout: LayoutParams::default(),
    };
    pipeline::run(&corpus, &options)?.write(&root)?;

    let server = Server::bind(&root, ("127.0.0.1", port))?;
    if let Some(addr) = server.local_addr() {
        println!("serving {} at http://{addr}/", root.display());
        println!("  http://{addr}/manifest.json");
    }
    server.run(4);
    Ok(())
}
