//! Co-authorship network analysis.
//!
//! Turns a members table and a publications table into weighted co-authorship
//! graphs over cumulative year ranges, finds research communities with the
//! Louvain method, lays the graphs out with a force-directed model and exports
//! a versioned JSON dataset plus a statistics report for a browser explorer.
//!
//! | module        | role                                                    |
//! |---------------|---------------------------------------------------------|
//! | [`corpus`]    | CSV parsing and per-range weighted edge derivation      |
//! | [`graph`]     | weighted undirected graph, degrees, components, BFS     |
//! | [`community`] | modularity, gain, local moving, aggregation, Louvain    |
//! | [`layout`]    | attraction/repulsion forces and the synchronous stepper |
//! | [`report`]    | statistics table over cumulative ranges                 |
//! | [`export`]    | JSON dataset, colors and manifest                       |
//! | [`pipeline`]  | all of the above for a whole corpus                     |
//! | [`serve`]     | static HTTP server for an output directory              |
//! | [`cli`]       | `validate`, `analyze` and `serve` commands              |
//!
//! The `examples/` directory has one runnable program per capability.

pub mod cli;
pub mod community;
pub mod corpus;
pub mod export;
pub mod graph;
pub mod layout;
pub mod pipeline;
pub mod report;
pub mod serve;

pub use community::{louvain, modularity, Partition};
pub use corpus::{Corpus, EdgeRecord, YearRange};
pub use graph::Graph;
pub use layout::{run_layout, LayoutParams};
