use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::hypergraph::{EdgeId, Hypergraph};

/// A set of pairwise vertex-disjoint hyperedges.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Matching {
    /// Ascending edge ids.
    pub matched_edges: Vec<EdgeId>,
    /// Sum of the base weights of the matched edges.
    pub total_weight: f64,
    pub rounds_used: usize,
    pub per_round_matched: Vec<usize>,
}

impl Matching {
    pub(crate) fn from_rounds(h: &Hypergraph, rounds: &[Vec<EdgeId>]) -> Self {
        let mut matched_edges: Vec<EdgeId> = rounds.iter().flatten().copied().collect();
        matched_edges.sort_unstable();
        let total_weight = matched_edges.iter().map(|&e| h.weight(e)).sum();
        Matching {
            matched_edges,
            total_weight,
            rounds_used: rounds.len(),
            per_round_matched: rounds.iter().map(Vec::len).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.matched_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matched_edges.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Sequential,
    Crcw,
    Crew,
    WorkOptimal,
    Greedy,
}

impl Variant {
    pub const LOCAL_MAX: [Variant; 4] = [
        Variant::Sequential,
        Variant::Crcw,
        Variant::Crew,
        Variant::WorkOptimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Sequential => "seq",
            Variant::Crcw => "crcw",
            Variant::Crew => "crew",
            Variant::WorkOptimal => "opt",
            Variant::Greedy => "greedy",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "seq" | "sequential" => Ok(Variant::Sequential),
            "crcw" => Ok(Variant::Crcw),
            "crew" => Ok(Variant::Crew),
            "opt" | "work-optimal" | "work_optimal" => Ok(Variant::WorkOptimal),
            "greedy" => Ok(Variant::Greedy),
            other => Err(format!("unknown variant '{other}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RoundStats {
    pub matched: usize,
    pub deactivated: usize,
}

/// Traversal counters accumulated over a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WorkCounters {
    pub rounds: usize,
    /// Edge-indexed slots touched by edge-parallel sweeps.
    pub total_edge_visits: usize,
    /// Reads and writes of incidence/member array entries.
    pub total_pin_visits: usize,
    pub prefix_sum_invocations: usize,
    pub compactions: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub variant: Variant,
    pub workers: usize,
    pub rounds: usize,
    pub per_round: Vec<RoundStats>,
    /// Original edge ids matched in each round, ascending.
    pub matched_by_round: Vec<Vec<EdgeId>>,
    pub counters: WorkCounters,
    /// Time spent in the rounds, including per-round weight generation.
    pub wall_time: Duration,
}
