//! Lay out a ring of cliques and print the final coordinates.
//!
//! ```text
//! cargo run --release --example force_layout [seed] [iterations]
//! ```

use coauthnet::layout::{init_positions, run_layout, LayoutParams};
use coauthnet::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(42);
    let iterations = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1000);

    // Five 4-cliques, consecutive cliques joined by one edge.
    let mut edges = Vec::new();
    for c in 0..5 {
        let b = 4 * c;
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((b + i, b + j, 1.0));
            }
        }
        edges.push((b + 3, (b + 4) % 20, 1.0));
    }
    let g = Graph::from_indexed(20, &edges)?;

    let params = LayoutParams {
        seed,
        iterations,
        ..Default::default()
    };
    let start = init_positions(&g, seed);
    let run = run_layout(&g, &params)?;

    println!("node      start                 final");
    for (i, (a, b)) in start.positions.iter().zip(&run.state.positions).enumerate() {
        println!("{i:>4}  ({:>8.4}, {:>8.4})  ({:>8.4}, {:>8.4})", a.x, a.y, b.x, b.y);
    }
    let c = run.state.centroid();
    println!("centroid ({:.2e}, {:.2e})", c.x, c.y);
    println!("mean residual force {:.4}", run.mean_force);
    Ok(())
}
