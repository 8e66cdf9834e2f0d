//! Maximal hypergraph matching with the local-max rule.
//!
//! An edge joins the matching once it is the heaviest edge at every one of
//! its vertices; its neighbors are then retired and the round repeats with
//! fresh weights until no edge is left. The crate provides a sequential
//! implementation, three data-parallel variants built on rayon (concurrent
//! write, exclusive write, and a work-optimal one that compacts the
//! hypergraph after every round), an exact oracle for small instances, and
//! readers/writers for hMetis and METIS files.
//!
//! ```
//! use hypermatch::{io, local_max_parallel, ParallelConfig, ParallelVariant, WeightStream};
//!
//! let h = io::parse_hgr("4 6 1\n1 1 4\n1 2 5\n1 3 6\n1.1 1 2 3\n", Default::default()).unwrap();
//! let config = ParallelConfig::new(ParallelVariant::Crcw, 2);
//! let (m, _) = local_max_parallel(&h, &WeightStream::zero_noise(1), &config).unwrap();
//! assert_eq!(m.matched_edges, vec![3]);
//! ```

pub mod compact;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod line_graph;
pub mod luby;
pub mod matching;
pub mod oracle;
pub mod par;
pub mod rng;
pub mod scan;
pub mod seq;

pub use compact::{compact, Compaction, IdMap};
pub use error::{Error, Result};
pub use hypergraph::{
    build_hypergraph, compute_stats, EdgeId, Hypergraph, HypergraphStats, IsolatedVertices,
    ValidationReport, VertexId, Violation,
};
pub use line_graph::{build_line_graph, LineGraph};
pub use luby::luby_line_graph;
pub use matching::{Matching, RoundStats, RunReport, Variant, WorkCounters};
pub use oracle::{approximation_ratio, exact_matching, verify_matching, ExactResult, VerifyReport};
pub use par::{
    local_max_crcw, local_max_crew, local_max_parallel, local_max_work_optimal, ParallelConfig,
    ParallelVariant,
};
pub use rng::{tie_break, GeneratorKind, WeightMode, WeightStream};
pub use seq::{default_max_rounds, greedy_sorted, local_max_sequential, run_round, RoundState};

/// Runs any variant; `workers` is ignored by the sequential and greedy ones.
pub fn run_variant(
    h: &Hypergraph,
    variant: Variant,
    stream: &WeightStream,
    config: &ParallelConfig,
) -> Result<(Matching, RunReport)> {
    match variant {
        Variant::Sequential => local_max_sequential(
            h,
            stream,
            config
                .max_rounds
                .unwrap_or_else(|| default_max_rounds(h.num_edges())),
        ),
        Variant::Greedy => {
            let start = std::time::Instant::now();
            let m = greedy_sorted(h);
            let report = RunReport {
                variant,
                workers: 1,
                rounds: m.rounds_used,
                per_round: m
                    .per_round_matched
                    .iter()
                    .map(|&matched| RoundStats {
                        matched,
                        deactivated: h.num_edges() - matched,
                    })
                    .collect(),
                matched_by_round: if m.is_empty() {
                    vec![]
                } else {
                    vec![m.matched_edges.clone()]
                },
                counters: WorkCounters {
                    rounds: m.rounds_used,
                    total_edge_visits: h.num_edges(),
                    total_pin_visits: h.num_pins(),
                    ..Default::default()
                },
                wall_time: start.elapsed(),
            };
            Ok((m, report))
        }
        Variant::Crcw | Variant::Crew | Variant::WorkOptimal => {
            let variant = match variant {
                Variant::Crcw => ParallelVariant::Crcw,
                Variant::Crew => ParallelVariant::Crew,
                _ => ParallelVariant::WorkOptimal,
            };
            local_max_parallel(h, stream, &ParallelConfig { variant, ..*config })
        }
    }
}
