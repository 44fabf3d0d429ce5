//! Run Louvain on a small weighted graph and print the modularity trace.
//!
//! The graph is two dense groups joined by one light edge.

use coauthnet::community::{louvain_with, modularity, LouvainConfig, Partition};
use coauthnet::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let edges = [
        (0, 1, 3.0),
        (0, 2, 2.0),
        (1, 2, 2.0),
        (2, 3, 1.0),
        (3, 4, 2.0),
        (3, 5, 3.0),
        (4, 5, 2.0),
    ];
    let g = Graph::from_indexed(6, &edges)?;

    let config = LouvainConfig {
        record_trace: true,
        ..Default::default()
    };
    let out = louvain_with(&g, &config)?;
    println!("passes: {}", out.passes);
    println!("trace:");
    for (i, q) in out.trace.iter().enumerate() {
        println!("  {i:>2}  {q:.6}");
    }
    println!("communities: {:?}", out.partition.communities());
    println!("Q = {:.6}", out.modularity);

    let single = Partition::new(vec![0; 6])?;
    println!("Q with everything merged = {:.6}", modularity(&g, &single)?);

    let shuffled = louvain_with(
        &g,
        &LouvainConfig {
            shuffle_seed: Some(7),
            record_trace: false,
        },
    )?;
    println!("shuffled sweep order: {:?}", shuffled.partition.assignment());
    Ok(())
}
