//! Min max correlation clustering on complete signed graphs.
//!
//! The input graph lists the positive pairs; every other pair is negative.
//! A partition's cost is the largest number of disagreeing pairs at any
//! single node. This crate provides
//!
//! - a combinatorial lower bound ([`clb`]),
//! - a combinatorial 4-approximation ([`approx`]),
//! - greedy joining local search and its 24 tie-breaking variants ([`greedy`]),
//! - an exhaustive solver for small graphs ([`exact`]),
//! - a planted-partition instance generator ([`synth`]) and a benchmark
//!   harness ([`harness`]).
//!
//! ```
//! use mmcc::{fixtures, IntersectionTable, compute_clb, run_a};
//!
//! let g = fixtures::hub_and_triangle();
//! let table = IntersectionTable::build(&g).unwrap();
//! let bound = compute_clb(&g, &table).bound;
//! let found = run_a(&g).phi;
//! assert!(bound <= found);
//! ```

pub mod approx;
pub mod clb;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod graph;
pub mod greedy;
pub mod harness;
pub mod partition;
pub mod synth;

pub use approx::{
    approx_4, approx_4_sparse, majority_cluster, majority_cluster_sparse, Approx4Stats,
};
pub use clb::{
    check_feasibility, components_pi_d, compute_clb, compute_clb_with, ClbCertificate, ClbResult,
    ClbSearch,
};
pub use error::{Error, Result};
pub use exact::{
    brute_force_opt, brute_force_opt_with, verify_forcing_bounds, ExactOptions, ExactResult,
};
pub use graph::{
    parse_edge_list, parse_edge_list_str, write_edge_list, ClosedNeighborhood, Graph,
    IntersectionTable, ParsedGraph,
};
pub use greedy::{
    greedy_join, greedy_join_guarded, run_a, run_a_star, run_a_star_with, run_a_with,
    run_all_variants, run_all_variants_with, DesignChoices, GreedyOutcome, JoinGuard,
};
pub use harness::{run_bench, sweep_synthetic, BenchConfig, BenchRecord, Instance};
pub use partition::{disagreements, max_disagreement, node_disagreement, Partition};
pub use synth::{planted_partition_graph, SynthSpec};
