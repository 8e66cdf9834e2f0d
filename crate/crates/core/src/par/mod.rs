//! Data-parallel local-max variants.
//!
//! All variants run rounds made of phases separated by barriers (each phase
//! is one rayon parallel loop). For a given hypergraph and weight stream they
//! match exactly the same edges in the same rounds as
//! [`local_max_sequential`](crate::seq::local_max_sequential), independent of
//! the worker count.

mod audit;
mod crcw;
mod crew;

use std::time::Instant;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph};
use crate::matching::{Matching, RoundStats, RunReport, Variant, WorkCounters};
use crate::rng::WeightStream;
use crate::seq::default_max_rounds;

pub use audit::WriteAudit;
pub use crcw::local_max_crcw;
pub use crew::{local_max_crew, local_max_work_optimal};

pub(crate) const NO_EDGE: EdgeId = EdgeId::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParallelVariant {
    Crcw,
    Crew,
    WorkOptimal,
}

impl From<ParallelVariant> for Variant {
    fn from(v: ParallelVariant) -> Variant {
        match v {
            ParallelVariant::Crcw => Variant::Crcw,
            ParallelVariant::Crew => Variant::Crew,
            ParallelVariant::WorkOptimal => Variant::WorkOptimal,
        }
    }
}

/// Execution parameters. None of them affect which edges get matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParallelConfig {
    pub workers: usize,
    pub variant: ParallelVariant,
    /// Minimum number of items per parallel task.
    pub grain: usize,
    /// `None` selects [`default_max_rounds`].
    pub max_rounds: Option<usize>,
    /// Count writes per cell in every CREW phase and fail on a conflict.
    pub assert_exclusive: bool,
}

impl ParallelConfig {
    pub fn new(variant: ParallelVariant, workers: usize) -> Self {
        ParallelConfig {
            workers: workers.max(1),
            variant,
            grain: 1024,
            max_rounds: None,
            assert_exclusive: false,
        }
    }

    pub fn with_grain(mut self, grain: usize) -> Self {
        self.grain = grain.max(1);
        self
    }

    pub fn with_max_rounds(mut self, max_rounds: usize) -> Self {
        self.max_rounds = Some(max_rounds);
        self
    }

    pub fn with_assertions(mut self, on: bool) -> Self {
        self.assert_exclusive = on;
        self
    }

    fn max_rounds_for(&self, m: usize) -> usize {
        self.max_rounds.unwrap_or_else(|| default_max_rounds(m))
    }
}

/// Runs the variant selected in `config`.
pub fn local_max_parallel(
    h: &Hypergraph,
    stream: &WeightStream,
    config: &ParallelConfig,
) -> Result<(Matching, RunReport)> {
    match config.variant {
        ParallelVariant::Crcw => local_max_crcw(h, stream, config),
        ParallelVariant::Crew => local_max_crew(h, stream, config),
        ParallelVariant::WorkOptimal => local_max_work_optimal(h, stream, config),
    }
}

pub(crate) fn with_pool<R, F>(workers: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to build worker pool")
        .install(f)
}

/// Round bookkeeping shared by the parallel drivers.
pub(crate) struct Ledger {
    start: Instant,
    pub counters: WorkCounters,
    pub per_round: Vec<RoundStats>,
    pub matched_by_round: Vec<Vec<EdgeId>>,
}

impl Ledger {
    pub fn start() -> Self {
        Ledger {
            start: Instant::now(),
            counters: WorkCounters::default(),
            per_round: Vec::new(),
            matched_by_round: Vec::new(),
        }
    }

    pub fn push_round(&mut self, matched: Vec<EdgeId>, deactivated: usize) {
        self.per_round.push(RoundStats {
            matched: matched.len(),
            deactivated,
        });
        self.matched_by_round.push(matched);
        self.counters.rounds += 1;
    }

    pub fn cap_error(&self, h: &Hypergraph, max_rounds: usize, active_edges: usize) -> Error {
        Error::RoundCapExceeded {
            max_rounds,
            active_edges,
            partial: Box::new(Matching::from_rounds(h, &self.matched_by_round)),
        }
    }

    pub fn finish(self, h: &Hypergraph, variant: Variant, workers: usize) -> (Matching, RunReport) {
        let wall_time = self.start.elapsed();
        let matching = Matching::from_rounds(h, &self.matched_by_round);
        let report = RunReport {
            variant,
            workers,
            rounds: self.per_round.len(),
            per_round: self.per_round,
            matched_by_round: self.matched_by_round,
            counters: self.counters,
            wall_time,
        };
        (matching, report)
    }
}
